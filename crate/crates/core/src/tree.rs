//! The forest functional `N_k` and the edge and vertex decompositions of
//! `SW_k` for trees.

use num_traits::Zero;

use crate::arith::{binomial, BigCount};
use crate::error::{Result, SteinerError};
use crate::graph::Graph;
use crate::steiner::check_k;

/// Component sizes `n(T_1), …, n(T_p)` of a forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestPartition {
    sizes: Vec<usize>,
}

impl ForestPartition {
    /// Rejects an empty list and zero-sized components.
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(SteinerError::InvalidTerminals(
                "a forest partition needs at least one component, all nonempty".into(),
            ));
        }
        Ok(ForestPartition { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn components(&self) -> usize {
        self.sizes.len()
    }

    pub fn vertices(&self) -> usize {
        self.sizes.iter().sum()
    }
}

fn check_n_k(k: usize) -> Result<()> {
    if k < 2 {
        Err(SteinerError::KOutOfRange { k, n: usize::MAX, min: 2 })
    } else {
        Ok(())
    }
}

/// `N_k` by its definition: over all `(l_1, …, l_p)` with `Σ l_i = k` and
/// every `l_i < k`, the sum of `Π C(n(T_i), l_i)`.
pub fn n_k_partition_sum(fp: &ForestPartition, k: usize) -> Result<BigCount> {
    check_n_k(k)?;
    // ways[j]: weighted count of part choices over the processed components
    // summing to j, each part below k
    let mut ways = vec![BigCount::zero(); k + 1];
    ways[0] = BigCount::from(1u8);
    for &size in fp.sizes() {
        let mut next = vec![BigCount::zero(); k + 1];
        for (j, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for l in 0..(k - j + 1).min(k) {
                let c = binomial(size as u64, l as u64);
                if !c.is_zero() {
                    next[j + l] += w * c;
                }
            }
        }
        ways = next;
    }
    Ok(ways.swap_remove(k))
}

/// `N_k` via inclusion–exclusion: `C(N, k) - Σ_i C(n(T_i), k)`.
pub fn n_k(fp: &ForestPartition, k: usize) -> Result<BigCount> {
    check_n_k(k)?;
    if fp.components() == 1 {
        return Ok(BigCount::zero());
    }
    let whole = binomial(fp.vertices() as u64, k as u64);
    let inside: BigCount = fp.sizes().iter().map(|&s| binomial(s as u64, k as u64)).sum();
    Ok(whole - inside)
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(SteinerError::NotATree { n: t.n(), m: t.m() })
    }
}

/// `Σ_e N_k(T - e)`.
pub fn sw_k_edge_decomposition(t: &Graph, k: usize) -> Result<BigCount> {
    require_tree(t)?;
    check_k(k, t.n())?;
    let mut total = BigCount::zero();
    for &e in t.edges() {
        let fp = ForestPartition::new(t.component_sizes_without(None, Some(e)))?;
        total += n_k(&fp, k)?;
    }
    Ok(total)
}

/// `N_k(T - v)` for every vertex; pendant vertices give 0 without a search.
pub fn vertex_terms(t: &Graph, k: usize) -> Result<Vec<BigCount>> {
    require_tree(t)?;
    check_k(k, t.n())?;
    (0..t.n())
        .map(|v| {
            if t.degree(v) <= 1 {
                return Ok(BigCount::zero());
            }
            let fp = ForestPartition::new(t.component_sizes_without(Some(v), None))?;
            n_k(&fp, k)
        })
        .collect()
}

/// `Σ_v N_k(T - v) + (k - 1) C(n, k)`.
pub fn sw_k_vertex_decomposition(t: &Graph, k: usize) -> Result<BigCount> {
    let terms: BigCount = vertex_terms(t, k)?.into_iter().sum();
    Ok(terms + BigCount::from(k - 1) * binomial(t.n() as u64, k as u64))
}
