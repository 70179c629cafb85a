//! Modular and median graph recognition and the closed forms that hold on
//! modular graphs and hypercubes.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::arith::{binomial, pow2, BigCount, ExactRatio};
use crate::distance::{all_pairs_distances, wiener_from_distances, DistanceMatrix};
use crate::error::{Result, SteinerError};
use crate::graph::Graph;
use crate::steiner::{check_k, steiner_wiener_k};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularityWitness {
    pub is_modular: bool,
    pub is_median: bool,
    /// First triple (in lexicographic order) with no median; set iff not modular.
    pub violating_triple: Option<(usize, usize, usize)>,
    /// First triple with two or more medians, for modular graphs that are not median.
    pub ambiguous_triple: Option<(usize, usize, usize)>,
}

fn medians(d: &DistanceMatrix, x: usize, y: usize, z: usize, stop_after: usize) -> usize {
    let mut found = 0;
    for w in 0..d.n() {
        if d.on_geodesic(x, w, y) && d.on_geodesic(y, w, z) && d.on_geodesic(x, w, z) {
            found += 1;
            if found == stop_after {
                break;
            }
        }
    }
    found
}

/// Brute force over all triples of distinct vertices.
pub fn classify_modularity(g: &Graph) -> ModularityWitness {
    classify_with(&all_pairs_distances(g))
}

fn classify_with(d: &DistanceMatrix) -> ModularityWitness {
    let n = d.n();
    let mut ambiguous = None;
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                match medians(d, x, y, z, 2) {
                    0 => {
                        return ModularityWitness {
                            is_modular: false,
                            is_median: false,
                            violating_triple: Some((x, y, z)),
                            ambiguous_triple: None,
                        }
                    }
                    1 => {}
                    _ => {
                        ambiguous.get_or_insert((x, y, z));
                    }
                }
            }
        }
    }
    ModularityWitness {
        is_modular: true,
        is_median: ambiguous.is_none(),
        violating_triple: None,
        ambiguous_triple: ambiguous,
    }
}

/// Proper 2-coloring by BFS.
pub fn is_bipartite(g: &Graph) -> bool {
    let mut color = vec![u8::MAX; g.n()];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                queue.push_back(v);
            } else if color[v] == color[u] {
                return false;
            }
        }
    }
    true
}

fn require_modular(d: &DistanceMatrix) -> Result<()> {
    match classify_with(d).violating_triple {
        Some(triple) => Err(SteinerError::NotModular { triple }),
        None => Ok(()),
    }
}

fn half_n_minus_2_times_wiener(n: usize, d: &DistanceMatrix) -> ExactRatio {
    let w = ExactRatio::from_count(&wiener_from_distances(d));
    &(&ExactRatio::from_int(n as i64 - 2) * &w) / &ExactRatio::from_int(2)
}

/// `SW_3` from the Wiener index, `(n - 2) W / 2`. Refuses non-modular graphs.
pub fn sw3_via_wiener(g: &Graph) -> Result<BigCount> {
    check_k(3, g.n())?;
    let d = all_pairs_distances(g);
    require_modular(&d)?;
    let w = wiener_from_distances(&d);
    let product = BigCount::from(g.n() - 2) * w;
    if !(&product % 2u8).is_zero() {
        // modular graphs always give an even product
        return Err(SteinerError::IdentityViolation {
            name: "(n - 2) W(G) is even on modular graphs",
            lhs: product.to_string(),
            rhs: "an even number".into(),
        });
    }
    Ok(product / 2u8)
}

/// Both sides of `SW_3 = (n - 2) W / 2` whether or not the graph is modular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sw3Comparison {
    pub witness: ModularityWitness,
    pub sw3: BigCount,
    pub via_wiener: ExactRatio,
}

impl Sw3Comparison {
    pub fn agrees(&self) -> bool {
        ExactRatio::from_count(&self.sw3) == self.via_wiener
    }
}

pub fn compare_sw3_with_wiener(g: &Graph, limits: &Limits) -> Result<Sw3Comparison> {
    let sw3 = steiner_wiener_k(g, 3, limits)?.value;
    let d = all_pairs_distances(g);
    Ok(Sw3Comparison {
        witness: classify_with(&d),
        sw3,
        via_wiener: half_n_minus_2_times_wiener(g.n(), &d),
    })
}

/// Average 3-Steiner betweenness of a modular graph,
/// `(1/n)((n - 2) W / 2 - 2 C(n, 3))`.
pub fn average_b3_modular(g: &Graph) -> Result<ExactRatio> {
    let sw3 = ExactRatio::from_count(&sw3_via_wiener(g)?);
    let n = g.n();
    let offset = ExactRatio::from_count(&(BigCount::from(2u8) * binomial(n as u64, 3)));
    Ok(&(&sw3 - &offset) / &ExactRatio::from_int(n))
}

/// `(2^(d-1) - 1)(d 2^(d-2) - (2^(d+1) - 2)/3)`, the 3-Steiner betweenness of
/// every vertex of the d-dimensional hypercube.
pub fn hypercube_b3(d: u32) -> Result<ExactRatio> {
    if d == 0 {
        return Err(SteinerError::KOutOfRange { k: 0, n: 0, min: 1 });
    }
    let d64 = d as u64;
    let one = ExactRatio::from_int(1);
    let first = &ExactRatio::from_count(&pow2(d64 - 1)) - &one;
    // d 2^(d-2) = d 2^d / 4 keeps d = 1 exact
    let second_a = &ExactRatio::from_count(&(BigCount::from(d) * pow2(d64))) / &ExactRatio::from_int(4);
    let second_b = &(&ExactRatio::from_count(&pow2(d64 + 1)) - &ExactRatio::from_int(2)) / &ExactRatio::from_int(3);
    Ok(&first * &(&second_a - &second_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family};

    fn fam(f: Family, p: &[usize]) -> Graph {
        generate_family(f, p, None).unwrap()
    }

    #[test]
    fn classification_examples() {
        for seed in 0..10 {
            let t = generate_family(Family::RandomTree, &[10], Some(seed)).unwrap();
            let w = classify_modularity(&t);
            assert!(w.is_modular && w.is_median);
        }
        let c5 = classify_modularity(&fam(Family::Cycle, &[5]));
        assert!(!c5.is_modular && !c5.is_median);
        assert_eq!(c5.violating_triple, Some((0, 1, 3)));

        let k33 = classify_modularity(&fam(Family::CompleteBipartite, &[3, 3]));
        assert!(k33.is_modular && !k33.is_median);
        assert_eq!(k33.ambiguous_triple, Some((0, 1, 2)));

        let q3 = classify_modularity(&fam(Family::Hypercube, &[3]));
        assert!(q3.is_median);
        let c4 = classify_modularity(&fam(Family::Cycle, &[4]));
        assert!(c4.is_median);
        let c6 = classify_modularity(&fam(Family::Cycle, &[6]));
        assert!(!c6.is_modular);
    }

    #[test]
    fn bipartite() {
        assert!(is_bipartite(&fam(Family::Grid, &[3, 4])));
        assert!(!is_bipartite(&fam(Family::Cycle, &[5])));
        assert!(is_bipartite(&fam(Family::Cycle, &[6])));
    }

    #[test]
    fn sw3_examples() {
        assert_eq!(sw3_via_wiener(&fam(Family::Path, &[4])).unwrap(), BigCount::from(10u8));
        assert_eq!(sw3_via_wiener(&fam(Family::Hypercube, &[3])).unwrap(), BigCount::from(144u8));
        assert_eq!(sw3_via_wiener(&fam(Family::Cycle, &[4])).unwrap(), BigCount::from(8u8));
        assert!(matches!(
            sw3_via_wiener(&fam(Family::Cycle, &[5])),
            Err(SteinerError::NotModular { triple: (0, 1, 3) })
        ));
        assert!(sw3_via_wiener(&fam(Family::Path, &[2])).is_err());
    }

    #[test]
    fn c5_comparison() {
        let cmp = compare_sw3_with_wiener(&fam(Family::Cycle, &[5]), &Limits::default()).unwrap();
        assert!(!cmp.witness.is_modular);
        assert_eq!(cmp.sw3, BigCount::from(25u8));
        assert_eq!(cmp.via_wiener, ExactRatio::new(45, 2));
        assert!(!cmp.agrees());
    }

    #[test]
    fn average_b3_examples() {
        assert!(average_b3_modular(&fam(Family::Cycle, &[4])).unwrap().is_zero());
        assert_eq!(average_b3_modular(&fam(Family::Hypercube, &[3])).unwrap(), ExactRatio::from_int(4));
        assert_eq!(average_b3_modular(&fam(Family::Path, &[4])).unwrap(), ExactRatio::new(1, 2));
        assert!(average_b3_modular(&fam(Family::Cycle, &[7])).is_err());
    }

    #[test]
    fn hypercube_closed_form() {
        assert!(hypercube_b3(1).unwrap().is_zero());
        assert!(hypercube_b3(2).unwrap().is_zero());
        assert_eq!(hypercube_b3(3).unwrap(), ExactRatio::from_int(4));
        assert!(hypercube_b3(0).is_err());
        // agrees with the modular-graph average for larger cubes
        for d in 1..=6u32 {
            let q = fam(Family::Hypercube, &[d as usize]);
            if q.n() >= 3 {
                assert_eq!(average_b3_modular(&q).unwrap(), hypercube_b3(d).unwrap(), "d={d}");
            }
        }
    }
}
