//! Connected graphs on a few vertices, one per isomorphism class.
//!
//! Every connected graph has a vertex whose removal leaves it connected, so
//! the classes on `n` vertices are exactly the one-vertex extensions (with a
//! nonempty neighborhood) of the classes on `n - 1`. Candidates are
//! deduplicated by a canonical form: the smallest edge bitmask over all
//! vertex permutations. Practical up to `n = 7`.

use std::collections::BTreeSet;

use crate::graph::Graph;

pub const CATALOG_MAX_N: usize = 7;

fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u32 {
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |m, &(u, v)| m | (1 << pair_index(p[u], p[v]))))
        .min()
        .unwrap_or(0)
}

fn edges_of_mask(n: usize, mask: u32) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|b| (0..b).map(move |a| (a, b)))
        .filter(|&(a, b)| mask >> pair_index(a, b) & 1 == 1)
        .collect()
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, ordered by canonical edge mask. Counts: 1, 1, 2, 6, 21, 112, 853.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=CATALOG_MAX_N).contains(&n), "catalog supports 1..={CATALOG_MAX_N} vertices");
    let mut classes: BTreeSet<u32> = BTreeSet::from([0]);
    for size in 2..=n {
        let perms = permutations(size);
        let mut next = BTreeSet::new();
        for &mask in &classes {
            let base = edges_of_mask(size - 1, mask);
            for nbhd in 1u32..(1 << (size - 1)) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|&u| nbhd >> u & 1 == 1).map(|u| (u, size - 1)));
                next.insert(canonical(&edges, &perms));
            }
        }
        classes = next;
    }
    classes
        .into_iter()
        .map(|mask| {
            Graph::from_edges(n, &edges_of_mask(n, mask)).expect("catalog graphs are connected")
        })
        .collect()
}
