//! Counting minimum Steiner trees and the k-Steiner betweenness built on them.
//!
//! "Steiner tree" always means a *minimum* one: a tree on `δ(A) + 1`
//! vertices containing `A`. Such a tree is exactly a spanning tree of the
//! subgraph induced by its own vertex set, so
//!
//! ```text
//! σ_A    = Σ_{A ⊆ W, |W| = δ(A)+1} τ(G[W])
//! σ_A(v) = the same sum restricted to W ∋ v
//! ```
//!
//! where `τ` is the spanning-tree count (zero for disconnected `G[W]`),
//! evaluated with a fraction-free determinant of a Laplacian minor.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, binomial_u128, pow2, BigCount, ExactRatio};
use crate::error::{Result, SteinerError};
use crate::graph::Graph;
use crate::limits::{check_mask_width, Limits};
use crate::steiner::{
    check_k, induces_connected, steiner_distance_bruteforce, total_steiner_wiener, IndexOrder,
    SteinerDistance,
};
use crate::subsets::{mask_members, par_fold_k_subsets, KSubsets, TerminalSet};

/// Largest graph accepted by the exhaustive tree enumerator.
pub const ENUMERATION_MAX_N: usize = 9;

/// Terminal-set cache entries kept per counter.
const CACHE_CAPACITY: usize = 1 << 20;

/// Determinant of a square integer matrix by Bareiss elimination. Every
/// intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let r = m.len();
    if r == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..r - 1 {
        if m[k][k].is_zero() {
            match (k + 1..r).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..r {
            for j in k + 1..r {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[r - 1][r - 1]
}

/// Spanning trees of the subgraph induced by `w`, via the Laplacian minor
/// that drops the lowest vertex of `w`.
fn spanning_trees_induced(nbr: &[u64], w: u64) -> BigCount {
    let verts: Vec<usize> = mask_members(w).collect();
    if verts.len() <= 1 {
        return BigCount::one();
    }
    if !induces_connected(nbr, w) {
        return BigCount::zero();
    }
    let minor: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|&u| {
            verts[1..]
                .iter()
                .map(|&v| {
                    if u == v {
                        BigInt::from((nbr[u] & w).count_ones())
                    } else if nbr[u] >> v & 1 == 1 {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let det = bareiss_determinant(minor);
    debug_assert!(!det.is_negative());
    det.to_biguint().unwrap_or_default()
}

/// Number of spanning trees of `g` (Kirchhoff).
pub fn spanning_tree_count(g: &Graph) -> BigCount {
    let n = g.n();
    if n <= 1 {
        return BigCount::one();
    }
    let minor: Vec<Vec<BigInt>> = (1..n)
        .map(|u| {
            (1..n)
                .map(|v| {
                    if u == v {
                        BigInt::from(g.degree(u))
                    } else if g.has_edge(u, v) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    bareiss_determinant(minor).to_biguint().unwrap_or_default()
}

/// Minimum Steiner tree counts for one terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerTreeCount {
    pub terminal_set: TerminalSet,
    /// `δ(A)`.
    pub steiner_distance: usize,
    /// `σ_A`, always at least one.
    pub sigma: BigCount,
    /// `σ_A(v)` indexed by vertex; zero for terminals.
    pub through: Vec<BigCount>,
}

impl SteinerTreeCount {
    /// `σ_A(v) / σ_A`.
    pub fn fraction(&self, v: usize) -> ExactRatio {
        ExactRatio::from_count(&self.through[v]) / ExactRatio::from_count(&self.sigma)
    }
}

/// Counts Steiner trees for many terminal sets of one graph, caching results
/// by terminal bitmask.
pub struct SteinerCounter<'g> {
    sd: SteinerDistance<'g>,
    nbr: Vec<u64>,
    limits: Limits,
    cache: Mutex<HashMap<u64, Arc<SteinerTreeCount>>>,
}

impl<'g> SteinerCounter<'g> {
    pub fn new(g: &'g Graph, limits: Limits) -> Result<Self> {
        check_mask_width(g.n())?;
        Ok(SteinerCounter {
            sd: SteinerDistance::new(g),
            nbr: g.neighbor_masks(),
            limits,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn graph(&self) -> &'g Graph {
        self.sd.graph()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn count(&self, a: &TerminalSet) -> Result<Arc<SteinerTreeCount>> {
        let key = a.mask();
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let counted = Arc::new(self.count_uncached(a)?);
        let mut cache = self.cache.lock().expect("cache poisoned");
        if cache.len() < CACHE_CAPACITY {
            cache.entry(key).or_insert_with(|| Arc::clone(&counted));
        }
        Ok(counted)
    }

    fn count_uncached(&self, a: &TerminalSet) -> Result<SteinerTreeCount> {
        let n = self.graph().n();
        let k = a.k();
        let delta = self.sd.delta(a);
        let extra = delta + 1 - k;
        let free: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
        Limits::check(
            "vertex supersets for Steiner tree counting",
            binomial_u128(free.len() as u64, extra as u64),
            self.limits.max_supersets,
        )?;

        let base = a.mask();
        let mut sigma = BigCount::zero();
        let mut through = vec![BigCount::zero(); n];
        for pick in KSubsets::new(free.len(), extra) {
            let w = mask_members(pick).fold(base, |w, i| w | (1u64 << free[i]));
            let trees = spanning_trees_induced(&self.nbr, w);
            if trees.is_zero() {
                continue;
            }
            for i in mask_members(pick) {
                through[free[i]] += &trees;
            }
            sigma += trees;
        }
        debug_assert!(!sigma.is_zero());
        Ok(SteinerTreeCount {
            terminal_set: a.clone(),
            steiner_distance: delta,
            sigma,
            through,
        })
    }
}

/// `σ_A` and every `σ_A(v)` for one terminal set.
pub fn count_steiner_trees(g: &Graph, a: &TerminalSet, limits: &Limits) -> Result<SteinerTreeCount> {
    SteinerCounter::new(g, *limits)?.count_uncached(a)
}

/// Oracle: every minimum Steiner tree on `a`, each as a sorted edge list.
///
/// `δ(A)` comes from the superset brute force; then for every vertex set
/// `W ⊇ A` of size `δ(A) + 1`, all `δ(A)`-edge subsets of `G[W]` are tested
/// for acyclicity with a union-find.
pub fn enumerate_min_steiner_trees(g: &Graph, a: &TerminalSet) -> Result<Vec<Vec<(usize, usize)>>> {
    Limits::check("tree enumeration vertices", g.n() as u128, ENUMERATION_MAX_N as u128)?;
    let delta = steiner_distance_bruteforce(g, a)?;
    let base = a.mask();
    let free = ((1u64 << g.n()) - 1) & !base;
    let mut trees = Vec::new();
    let mut extra = free;
    loop {
        let w = base | extra;
        if w.count_ones() as usize == delta + 1 {
            let inside: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| w >> u & 1 == 1 && w >> v & 1 == 1)
                .collect();
            if inside.len() >= delta {
                for pick in KSubsets::new(inside.len(), delta) {
                    let chosen: Vec<(usize, usize)> = mask_members(pick).map(|i| inside[i]).collect();
                    if is_forest(g.n(), &chosen) {
                        trees.push(chosen);
                    }
                }
            }
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & free;
    }
    trees.sort();
    Ok(trees)
}

fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// Per-vertex centrality with its aggregates and the residual of the
/// decomposition identity it satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralityReport {
    pub order: IndexOrder,
    pub per_vertex: Vec<ExactRatio>,
    pub sum: ExactRatio,
    pub average: ExactRatio,
    /// For fixed k: `Σ_v B_k(v) - (SW_k - (k-1) C(n,k))`.
    /// For the total: `Σ_v B_S(v) - (SW - 2^(n-1) (n-2) - 1)`.
    pub identity_residual: ExactRatio,
    /// `SW_k` or `SW` used on the right-hand side.
    pub steiner_wiener: BigCount,
}

impl CentralityReport {
    fn new(order: IndexOrder, per_vertex: Vec<ExactRatio>, steiner_wiener: BigCount, offset: ExactRatio) -> Self {
        let sum: ExactRatio = per_vertex.iter().sum();
        let average = &sum / &ExactRatio::from_int(per_vertex.len());
        let identity_residual = &sum - &(&ExactRatio::from_count(&steiner_wiener) - &offset);
        CentralityReport {
            order,
            per_vertex,
            sum,
            average,
            identity_residual,
            steiner_wiener,
        }
    }
}

struct KSweep {
    per_vertex: Vec<ExactRatio>,
    delta_sum: u128,
}

impl<'g> SteinerCounter<'g> {
    fn sweep_k(&self, k: usize) -> Result<KSweep> {
        let n = self.graph().n();
        Limits::check(
            "k-subsets for k-Steiner betweenness",
            binomial_u128(n as u64, k as u64),
            self.limits.max_subsets,
        )?;
        let zero = || KSweep {
            per_vertex: Vec::new(),
            delta_sum: 0,
        };
        let mut sweep = par_fold_k_subsets(
            n,
            k,
            zero,
            |acc, mask| {
                let a = TerminalSet::from_mask(mask, n)?;
                let c = self.count(&a)?;
                acc.delta_sum += c.steiner_distance as u128;
                if acc.per_vertex.is_empty() {
                    acc.per_vertex = vec![ExactRatio::zero(); n];
                }
                for v in 0..n {
                    if !c.through[v].is_zero() {
                        acc.per_vertex[v] += &c.fraction(v);
                    }
                }
                Ok(())
            },
            |mut a, b| {
                if a.per_vertex.is_empty() {
                    a.per_vertex = b.per_vertex;
                } else if !b.per_vertex.is_empty() {
                    for (x, y) in a.per_vertex.iter_mut().zip(&b.per_vertex) {
                        *x += y;
                    }
                }
                a.delta_sum += b.delta_sum;
                a
            },
        )?;
        if sweep.per_vertex.is_empty() {
            sweep.per_vertex = vec![ExactRatio::zero(); n];
        }
        Ok(sweep)
    }

    /// `B_k(v)` for every vertex.
    pub fn k_steiner_betweenness(&self, k: usize) -> Result<CentralityReport> {
        let n = self.graph().n();
        check_k(k, n)?;
        let sweep = self.sweep_k(k)?;
        let offset = ExactRatio::from_count(&(BigCount::from(k - 1) * binomial(n as u64, k as u64)));
        Ok(CentralityReport::new(
            IndexOrder::K(k),
            sweep.per_vertex,
            BigCount::from(sweep.delta_sum),
            offset,
        ))
    }

    /// `B_S(v) = Σ_{k=2}^{n-1} B_k(v)`; `SW` on the right-hand side comes
    /// from the all-subset table, independently of the counting sweep.
    pub fn total_steiner_betweenness(&self) -> Result<CentralityReport> {
        let n = self.graph().n();
        Limits::check(
            "vertices for total Steiner betweenness",
            n as u128,
            self.limits.total_betweenness_max_n as u128,
        )?;
        let mut per_vertex = vec![ExactRatio::zero(); n];
        for k in 2..n {
            let sweep = self.sweep_k(k)?;
            for (acc, b) in per_vertex.iter_mut().zip(&sweep.per_vertex) {
                *acc += b;
            }
        }
        let sw = total_steiner_wiener(self.graph(), &self.limits)?.value;
        Ok(CentralityReport::new(IndexOrder::Total, per_vertex, sw, total_offset(n)))
    }
}

/// `2^(n-1) (n-2) + 1`, signed so that `n = 1` is well defined.
pub fn total_offset(n: usize) -> ExactRatio {
    if n == 0 {
        return ExactRatio::zero();
    }
    let p = ExactRatio::from_count(&pow2(n as u64 - 1));
    &(&p * &ExactRatio::from_int(n as i64 - 2)) + &ExactRatio::from_int(1)
}

pub fn k_steiner_betweenness(g: &Graph, k: usize, limits: &Limits) -> Result<CentralityReport> {
    check_k(k, g.n())?;
    SteinerCounter::new(g, *limits)?.k_steiner_betweenness(k)
}

pub fn total_steiner_betweenness(g: &Graph, limits: &Limits) -> Result<CentralityReport> {
    SteinerCounter::new(g, *limits)?.total_steiner_betweenness()
}

/// Both sides of the average-betweenness identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AverageCheck {
    /// Mean of the per-vertex values.
    pub direct: ExactRatio,
    /// The closed form in terms of the average Steiner diversity.
    pub formula: ExactRatio,
}

impl AverageCheck {
    fn into_checked(self, name: &'static str) -> Result<ExactRatio> {
        if self.direct == self.formula {
            Ok(self.direct)
        } else {
            Err(SteinerError::IdentityViolation {
                name,
                lhs: self.direct.to_string(),
                rhs: self.formula.to_string(),
            })
        }
    }
}

/// `C(n,k)/n · (avg SW_k - k + 1)` next to the mean of `B_k`.
pub fn average_k_check(report: &CentralityReport, n: usize, k: usize) -> AverageCheck {
    let subsets = ExactRatio::from_count(&binomial(n as u64, k as u64));
    let avg_sw = &ExactRatio::from_count(&report.steiner_wiener) / &subsets;
    let formula = &(&subsets / &ExactRatio::from_int(n)) * &(&avg_sw - &ExactRatio::from_int(k as i64 - 1));
    AverageCheck {
        direct: report.average.clone(),
        formula,
    }
}

/// `(1/n)((2^n - n - 1) avg SW - 2^(n-1)(n-2) - 1)` next to the mean of `B_S`.
pub fn average_total_check(report: &CentralityReport, n: usize) -> AverageCheck {
    let subsets = ExactRatio::from_count(&pow2(n as u64)) - ExactRatio::from_int(n as i64 + 1);
    let sw = ExactRatio::from_count(&report.steiner_wiener);
    let avg_sw = if subsets.is_zero() { ExactRatio::zero() } else { &sw / &subsets };
    let formula = &(&(&subsets * &avg_sw) - &total_offset(n)) / &ExactRatio::from_int(n);
    AverageCheck {
        direct: report.average.clone(),
        formula,
    }
}

/// Average `B_k`, returned only when it matches its closed form.
pub fn average_k_steiner_betweenness(g: &Graph, k: usize, limits: &Limits) -> Result<ExactRatio> {
    let report = k_steiner_betweenness(g, k, limits)?;
    average_k_check(&report, g.n(), k).into_checked("average k-Steiner betweenness")
}

/// Average `B_S`, returned only when it matches its closed form.
pub fn average_total_steiner_betweenness(g: &Graph, limits: &Limits) -> Result<ExactRatio> {
    let report = total_steiner_betweenness(g, limits)?;
    average_total_check(&report, g.n()).into_checked("average total Steiner betweenness")
}
