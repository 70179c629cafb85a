//! Geodesic distances, the Wiener index and exact geodesic betweenness.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{BigCount, ExactRatio};
use crate::graph::Graph;

/// Symmetric `n x n` table of BFS distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest entry.
    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Whether `w` lies on some shortest `u`-`v` path.
    #[inline]
    pub fn on_geodesic(&self, u: usize, w: usize, v: usize) -> bool {
        self.get(u, w) + self.get(w, v) == self.get(u, v)
    }
}

fn bfs(g: &Graph, source: usize, dist: &mut [u32]) {
    dist.fill(u32::MAX);
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.n();
    let mut dist = vec![0u32; n * n];
    for (s, row) in dist.chunks_mut(n).enumerate() {
        bfs(g, s, row);
    }
    DistanceMatrix { n, dist }
}

/// Sum of `d(u, v)` over unordered pairs.
pub fn wiener_index(g: &Graph) -> BigCount {
    wiener_from_distances(&all_pairs_distances(g))
}

pub fn wiener_from_distances(d: &DistanceMatrix) -> BigCount {
    let total: u128 = (0..d.n())
        .flat_map(|u| (u + 1..d.n()).map(move |v| (u, v)))
        .map(|(u, v)| d.get(u, v) as u128)
        .sum();
    BigCount::from(total)
}

/// Betweenness `B(v)` over unordered pairs `{x, y}` not containing `v`,
/// computed exactly with Brandes' dependency accumulation.
///
/// Each source contributes the dependencies of the ordered pairs it starts,
/// so the accumulated total is halved at the end.
pub fn geodesic_betweenness(g: &Graph) -> Vec<ExactRatio> {
    let n = g.n();
    let mut centrality = vec![ExactRatio::zero(); n];
    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![BigUint::zero(); n];
    let mut delta = vec![ExactRatio::zero(); n];
    let mut order = Vec::with_capacity(n);
    let one = ExactRatio::from_int(1);

    for s in 0..n {
        dist.fill(u32::MAX);
        sigma.iter_mut().for_each(|x| x.set_zero());
        order.clear();
        dist[s] = 0;
        sigma[s] = BigUint::one();
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in g.neighbors(u) {
                if dist[v] == u32::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if dist[v] == dist[u] + 1 {
                    let add = sigma[u].clone();
                    sigma[v] += add;
                }
            }
        }

        delta.iter_mut().for_each(|x| *x = ExactRatio::zero());
        for &w in order.iter().rev() {
            let coeff = (&delta[w] + &one) / ExactRatio::from_count(&sigma[w]);
            for &u in g.neighbors(w) {
                if dist[u] + 1 == dist[w] {
                    let contrib = &ExactRatio::from_count(&sigma[u]) * &coeff;
                    delta[u] += &contrib;
                }
            }
            if w != s {
                centrality[w] += &delta[w];
            }
        }
    }
    let two = ExactRatio::from_int(2);
    centrality.into_iter().map(|c| c / two.clone()).collect()
}
