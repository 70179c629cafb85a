//! Vertex subsets as `u64` bitmasks, k-subset sweeps in colexicographic
//! order, and the validated `TerminalSet`.
//!
//! Colex order on k-subsets coincides with increasing bitmask value. A sweep
//! is split into fixed-size rank ranges; each range is unranked and then
//! advanced with Gosper's successor, so chunk boundaries depend only on
//! `(n, k)` and never on the worker count.

use rayon::prelude::*;

use crate::error::{Result, SteinerError};
use crate::limits::check_mask_width;

/// A sorted, duplicate-free set of at least two terminal vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TerminalSet {
    members: Vec<usize>,
}

impl TerminalSet {
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(SteinerError::InvalidTerminals("duplicate vertex".into()));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= n) {
            return Err(SteinerError::InvalidTerminals(format!(
                "vertex {v} out of range for n = {n}"
            )));
        }
        if members.len() < 2 {
            return Err(SteinerError::KOutOfRange {
                k: members.len(),
                n,
                min: 2,
            });
        }
        Ok(TerminalSet { members })
    }

    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        Self::new(mask_members(mask).collect(), n)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Bitmask form; requires every member below 64.
    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &v| m | (1u64 << v))
    }
}

pub fn mask_members(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Colex successor of a nonzero mask with the same popcount.
#[inline]
pub fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// The k-subset of `0..n` with the given colex rank.
pub fn colex_unrank(mut rank: u64, n: usize, k: usize) -> u64 {
    let mut mask = 0u64;
    let mut top = n as u64;
    for i in (1..=k as u64).rev() {
        // largest c < top with C(c, i) <= rank
        let mut c = i - 1;
        while c + 1 < top && binomial_u64(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial_u64(c, i);
        mask |= 1u64 << c;
        top = c;
    }
    mask
}

/// Sequential iterator over k-subsets of `0..n` in colex order.
pub struct KSubsets {
    next: u64,
    remaining: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64);
        let remaining = if k > n { 0 } else { binomial_u64(n as u64, k as u64) };
        let next = if k == 0 || k > n { 0 } else { u64::MAX >> (64 - k) };
        KSubsets { next, remaining }
    }
}

impl Iterator for KSubsets {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let cur = self.next;
        if self.remaining > 0 {
            self.next = next_same_popcount(cur);
        }
        Some(cur)
    }
}

const CHUNK: u64 = 2048;

/// Maps every k-subset mask in parallel and folds the results. `combine` must
/// be associative and commutative on the values produced; all callers use
/// exact arithmetic so the result matches a sequential sweep.
pub(crate) fn par_fold_k_subsets<T, F, C>(n: usize, k: usize, identity: fn() -> T, map: F, combine: C) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, u64) -> Result<()> + Sync,
    C: Fn(T, T) -> T + Sync + Send,
{
    check_mask_width(n)?;
    let total = if k > n { 0 } else { binomial_u64(n as u64, k as u64) };
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let len = CHUNK.min(total - start);
            let mut acc = identity();
            let mut mask = colex_unrank(start, n, k);
            for i in 0..len {
                map(&mut acc, mask)?;
                if i + 1 < len {
                    mask = next_same_popcount(mask);
                }
            }
            Ok(acc)
        })
        .try_reduce(identity, |a, b| Ok(combine(a, b)))
}
