use serde::Serialize;

use crate::error::{budget, Result};

/// Caps that keep every exhaustive computation tractable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Largest ring any constructor may produce.
    pub max_ring: usize,
    /// Largest ring whose full ideal lattice may be enumerated.
    pub max_lattice: usize,
    /// Largest number of ideals a lattice enumeration may hold.
    pub max_ideals: usize,
    /// Search-node cap for `find_isomorphism`.
    pub max_iso_nodes: u64,
    /// Largest (p, g) pair count a confirming Gauss-polynomial sweep may visit.
    pub gauss_pairs: u64,
    /// Pair cap for a refutation sweep, which stops at the first failure.
    pub gauss_refutation_pairs: u64,
    /// Largest ring on which the subgroup-filter ideal oracle runs.
    pub subgroup_oracle_max: usize,
}

impl Budget {
    pub const DEFAULT: Budget = Budget {
        max_ring: 4096,
        max_lattice: 512,
        max_ideals: 20_000,
        max_iso_nodes: 1 << 22,
        gauss_pairs: 1 << 26,
        gauss_refutation_pairs: 1 << 31,
        subgroup_oracle_max: 64,
    };

    pub(crate) fn check_ring(&self, what: &str, size: u128) -> Result<()> {
        if size > self.max_ring as u128 {
            return Err(budget(what, size, self.max_ring as u128));
        }
        Ok(())
    }

    pub(crate) fn check_lattice(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_lattice {
            return Err(budget(what, size as u128, self.max_lattice as u128));
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
