//! Capacity guards. Exceeding any of them yields `SteinerError::Capacity`;
//! no routine ever falls back to an approximation.

use crate::error::{Result, SteinerError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of terminal sets a single k-subset sweep may visit.
    pub max_subsets: u128,
    /// Maximum number of vertex supersets examined when counting Steiner trees
    /// for one terminal set.
    pub max_supersets: u128,
    /// Largest n accepted by the total Steiner Wiener index (2^n subsets).
    pub total_wiener_max_n: usize,
    /// Largest n accepted by the total Steiner betweenness.
    pub total_betweenness_max_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subsets: 10_000_000,
            max_supersets: 1_000_000,
            total_wiener_max_n: 14,
            total_betweenness_max_n: 12,
        }
    }
}

impl Limits {
    pub fn with_max_subsets(mut self, max_subsets: u128) -> Self {
        self.max_subsets = max_subsets;
        self
    }

    pub(crate) fn check(what: &'static str, required: u128, limit: u128) -> Result<()> {
        if required > limit {
            Err(SteinerError::Capacity {
                what,
                required,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Subset sweeps encode vertex sets as `u64` bitmasks.
pub(crate) const MAX_MASK_VERTICES: usize = 64;

pub(crate) fn check_mask_width(n: usize) -> Result<()> {
    Limits::check("vertices in a bitmask sweep", n as u128, MAX_MASK_VERTICES as u128)
}
