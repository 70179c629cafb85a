//! Steiner diversity `δ(S)` (edge count of a minimum connected subgraph
//! spanning `S`) and the Steiner Wiener indices built from it.

use std::fmt;

use num_traits::Zero;

use crate::arith::{binomial, binomial_u128, pow2, BigCount, ExactRatio};
use crate::distance::{all_pairs_distances, DistanceMatrix};
use crate::error::{Result, SteinerError};
use crate::graph::Graph;
use crate::limits::{check_mask_width, Limits};
use crate::subsets::{mask_members, par_fold_k_subsets, TerminalSet};

/// Largest graph accepted by the exhaustive superset oracle.
pub const BRUTEFORCE_MAX_N: usize = 12;

/// Dreyfus–Wagner over unit edge weights.
///
/// `terminals[..k-1]` index the subset masks and the last terminal is the
/// root, so the table has `2^(k-1)` rows of `n` entries. Entry `(mask, v)` is
/// the size of a smallest tree spanning the masked terminals plus `v`.
fn dreyfus_wagner(dist: &DistanceMatrix, terminals: &[usize]) -> u32 {
    let n = dist.n();
    let k = terminals.len();
    if k == 2 {
        return dist.get(terminals[0], terminals[1]);
    }
    let t = k - 1;
    let full = (1usize << t) - 1;
    let mut dp = vec![u32::MAX; (full + 1) * n];
    for (i, &term) in terminals[..t].iter().enumerate() {
        dp[(1 << i) * n..(1 << i) * n + n].copy_from_slice(dist.row(term));
    }
    let mut merged = vec![u32::MAX; n];
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        merged.fill(u32::MAX);
        let low = mask & mask.wrapping_neg();
        // splits (sub, mask ^ sub) with the lowest bit pinned to `sub`
        let rest = mask ^ low;
        let mut other = rest;
        loop {
            let sub = low | (rest & !other);
            if sub != mask {
                let comp = mask ^ sub;
                let (a, b) = (&dp[sub * n..sub * n + n], &dp[comp * n..comp * n + n]);
                for v in 0..n {
                    merged[v] = merged[v].min(a[v] + b[v]);
                }
            }
            if other == 0 {
                break;
            }
            other = (other - 1) & rest;
        }
        let row = &mut dp[mask * n..mask * n + n];
        for (v, cell) in row.iter_mut().enumerate() {
            *cell = (0..n).map(|u| merged[u] + dist.get(u, v)).min().unwrap_or(u32::MAX);
        }
    }
    dp[full * n + terminals[t]]
}

/// Precomputed distances for repeated `δ` queries on one graph.
#[derive(Debug, Clone)]
pub struct SteinerDistance<'g> {
    graph: &'g Graph,
    dist: DistanceMatrix,
}

impl<'g> SteinerDistance<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        SteinerDistance {
            graph,
            dist: all_pairs_distances(graph),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn delta(&self, s: &TerminalSet) -> usize {
        dreyfus_wagner(&self.dist, s.members()) as usize
    }

    pub(crate) fn delta_of_mask(&self, mask: u64) -> usize {
        let terminals: Vec<usize> = mask_members(mask).collect();
        dreyfus_wagner(&self.dist, &terminals) as usize
    }
}

/// Exact `δ(S)` for `|S| >= 2`.
pub fn steiner_distance(g: &Graph, s: &TerminalSet) -> usize {
    SteinerDistance::new(g).delta(s)
}

/// Oracle: smallest `|W| - 1` over vertex sets `W ⊇ S` inducing a connected
/// subgraph. Only for `n <= BRUTEFORCE_MAX_N`.
pub fn steiner_distance_bruteforce(g: &Graph, s: &TerminalSet) -> Result<usize> {
    Limits::check("brute-force Steiner oracle vertices", g.n() as u128, BRUTEFORCE_MAX_N as u128)?;
    let nbr = g.neighbor_masks();
    let base = s.mask();
    let free = ((1u64 << g.n()) - 1) & !base;
    let mut best = usize::MAX;
    let mut extra = free;
    loop {
        let w = base | extra;
        let size = w.count_ones() as usize;
        if size - 1 < best && induces_connected(&nbr, w) {
            best = size - 1;
        }
        if extra == 0 {
            break;
        }
        extra = (extra - 1) & free;
    }
    Ok(best)
}

/// Whether the vertex set `w` induces a connected subgraph.
pub(crate) fn induces_connected(nbr: &[u64], w: u64) -> bool {
    if w == 0 {
        return false;
    }
    let mut reached = w & w.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let mut next = 0;
        for v in mask_members(frontier) {
            next |= nbr[v];
        }
        next &= w & !reached;
        reached |= next;
        frontier = next;
    }
    reached == w
}

/// Which Steiner Wiener index a summary describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexOrder {
    /// Sum over all k-subsets.
    K(usize),
    /// Sum over all subsets of size at least two.
    Total,
}

impl fmt::Display for IndexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexOrder::K(k) => write!(f, "{k}"),
            IndexOrder::Total => f.write_str("total"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerIndexSummary {
    pub order: IndexOrder,
    pub value: BigCount,
    /// `value / C(n, k)`, or `value / (2^n - n - 1)` for the total index.
    pub average: ExactRatio,
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 2 || k > n {
        Err(SteinerError::KOutOfRange { k, n, min: 2 })
    } else {
        Ok(())
    }
}

/// `SW_k(G)`: sum of `δ(S)` over all k-subsets, with its average.
pub fn steiner_wiener_k(g: &Graph, k: usize, limits: &Limits) -> Result<SteinerIndexSummary> {
    check_k(k, g.n())?;
    check_mask_width(g.n())?;
    let subsets = binomial_u128(g.n() as u64, k as u64);
    Limits::check("k-subsets for SW_k", subsets, limits.max_subsets)?;
    let sd = SteinerDistance::new(g);
    let value = par_fold_k_subsets(
        g.n(),
        k,
        || 0u128,
        |acc, mask| {
            *acc += sd.delta_of_mask(mask) as u128;
            Ok(())
        },
        |a, b| a + b,
    )?;
    let value = BigCount::from(value);
    let average = ExactRatio::from_count(&value) / ExactRatio::from_count(&binomial(g.n() as u64, k as u64));
    Ok(SteinerIndexSummary {
        order: IndexOrder::K(k),
        value,
        average,
    })
}

/// `δ` for every vertex subset at once, from one Dreyfus–Wagner table that
/// treats every vertex as a terminal. Used for the total index.
#[derive(Debug, Clone)]
pub struct SubsetSteinerTable {
    n: usize,
    // table[mask * n + v]: smallest tree size spanning mask ∪ {v}
    table: Vec<u8>,
}

impl SubsetSteinerTable {
    pub fn new(g: &Graph, limits: &Limits) -> Result<Self> {
        let n = g.n();
        Limits::check("vertices for all-subset Steiner table", n as u128, limits.total_wiener_max_n as u128)?;
        let dist = all_pairs_distances(g);
        let size = 1usize << n;
        let mut table = vec![u8::MAX; size * n];
        for v in 0..n {
            for u in 0..n {
                table[(1 << v) * n + u] = dist.get(v, u) as u8;
            }
        }
        table[..n].fill(0);
        let mut merged = vec![u8::MAX; n];
        for mask in 1..size {
            if mask.count_ones() < 2 {
                continue;
            }
            merged.fill(u8::MAX);
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            let mut other = rest;
            loop {
                let sub = low | (rest & !other);
                if sub != mask {
                    let comp = mask ^ sub;
                    for v in 0..n {
                        let c = table[sub * n + v].saturating_add(table[comp * n + v]);
                        if c < merged[v] {
                            merged[v] = c;
                        }
                    }
                }
                if other == 0 {
                    break;
                }
                other = (other - 1) & rest;
            }
            for v in 0..n {
                let best = (0..n)
                    .map(|u| merged[u].saturating_add(dist.get(u, v) as u8))
                    .min()
                    .unwrap_or(u8::MAX);
                table[mask * n + v] = best;
            }
        }
        Ok(SubsetSteinerTable { n, table })
    }

    /// `δ` of the vertex set `mask` (0 for sets of size below two).
    pub fn delta(&self, mask: u64) -> usize {
        if mask.count_ones() < 2 {
            return 0;
        }
        let top = 63 - mask.leading_zeros() as usize;
        let rest = (mask & !(1u64 << top)) as usize;
        self.table[rest * self.n + top] as usize
    }

    /// `SW_k` for every `k` in `0..=n` (entries 0 and 1 are zero).
    pub fn sw_by_k(&self) -> Vec<BigCount> {
        let mut sums = vec![0u128; self.n + 1];
        for mask in 0..(1u64 << self.n) {
            sums[mask.count_ones() as usize] += self.delta(mask) as u128;
        }
        sums.into_iter().map(BigCount::from).collect()
    }
}

/// `SW(G)`: sum of `δ(S)` over all subsets with `|S| >= 2`, with its average.
pub fn total_steiner_wiener(g: &Graph, limits: &Limits) -> Result<SteinerIndexSummary> {
    let table = SubsetSteinerTable::new(g, limits)?;
    Ok(total_summary(g.n(), table.sw_by_k().iter().sum()))
}

pub(crate) fn total_summary(n: usize, value: BigCount) -> SteinerIndexSummary {
    let subsets = pow2(n as u64) - BigCount::from(n) - BigCount::from(1u8);
    let average = if subsets.is_zero() {
        ExactRatio::zero()
    } else {
        ExactRatio::from_count(&value) / ExactRatio::from_count(&subsets)
    };
    SteinerIndexSummary {
        order: IndexOrder::Total,
        value,
        average,
    }
}
