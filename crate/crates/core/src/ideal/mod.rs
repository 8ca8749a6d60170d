//! The ideals `I_n` and exact membership in them.
//!
//! `I_2` is generated by the Plucker quadrics; `I_n` (n > 2) adds the
//! monomials of all cycles of length `3..=n`. Every generator is
//! multihomogeneous, so `f` lies in `I_n` iff each multihomogeneous
//! component of `f` lies in the matching graded piece `(I_n)_d`. That piece
//! is spanned by the products `m * g` with `g` a generator of degree
//! `e <= d` and `m` a monomial of degree `d - e`; only generators supported
//! inside `support(d)` can contribute. Deciding membership is then a rank
//! question over F2.
//!
//! Two independent routes decide whether the standard `(n+1)`-cycle lies in
//! `I_n`: the rank oracle in [`MembershipEngine`] and the cycle-sum
//! functional in [`replay`], which never row-reduces anything.

mod basis;
mod disk;
mod generators;
mod membership;
pub mod replay;

pub use basis::{graded_spanning_rows, BasisStats, GradedBasis, SpanningRows};
pub use disk::{BasisDump, DiskCache, FORMAT_VERSION};
pub use generators::{generators, generators_within, Generator, GeneratorKind};
pub use membership::{
    BasisCache, Certificate, CertificateEntry, ComponentVerdict, MembershipEngine, MembershipVerdict,
};
pub use replay::{cycle_sum_functional, proof_replay_dkk, ReplayReport, ReplayViolation};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::LinalgError;
use crate::ring::{RingError, Universe, MAX_VERTICES};

/// Default guard: at most this many bit cells in an echelon matrix.
pub const DEFAULT_BUDGET_CELLS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("invalid ideal parameters: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(
        "budget exceeded for degree {degree}: {columns} columns x {rows} estimated rows \
         needs ~{cells} bit cells, budget is {budget} (use --force to override)"
    )]
    BudgetExceeded {
        degree: String,
        columns: u64,
        rows: u64,
        cells: u64,
        budget: u64,
    },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("expected a polynomial over the edge alphabet, got {0}")]
    NotEdgeAlphabet(Universe),
}

/// The truncated ideal `I_n` inside `R` on vertices `1..=vertices`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdealSpec {
    pub n: usize,
    #[serde(rename = "N")]
    pub vertices: usize,
}

impl IdealSpec {
    pub fn new(n: usize, vertices: usize) -> Result<Self, IdealError> {
        if n < 2 {
            return Err(IdealError::InvalidSpec(format!("cycle bound n = {n} must be >= 2")));
        }
        if vertices < n.max(4) {
            return Err(IdealError::InvalidSpec(format!(
                "vertex bound N = {vertices} must be >= max(4, n) = {}",
                n.max(4)
            )));
        }
        if vertices > MAX_VERTICES {
            return Err(IdealError::InvalidSpec(format!(
                "vertex bound N = {vertices} exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        Ok(Self { n, vertices })
    }

    pub fn universe(self) -> Universe {
        Universe::Edge {
            vertices: self.vertices,
        }
    }

    /// Bitmask of the vertices `1..=N` (bit `v-1` for vertex `v`).
    pub fn vertex_mask(self) -> u32 {
        (1u32 << self.vertices) - 1
    }
}

/// Size guard for graded computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_cells: u64,
    pub force: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_BUDGET_CELLS,
            force: false,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_cells: u64::MAX,
            force: true,
        }
    }

    /// The echelon matrix never holds more than `min(rows, columns)` rows,
    /// so that bounds its footprint.
    pub fn check(&self, degree: &str, columns: u64, rows: u64) -> Result<(), IdealError> {
        let cells = columns.saturating_mul(rows.min(columns));
        if !self.force && cells > self.max_cells {
            return Err(IdealError::BudgetExceeded {
                degree: degree.to_string(),
                columns,
                rows,
                cells,
                budget: self.max_cells,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_bounds() {
        assert!(IdealSpec::new(2, 4).is_ok());
        assert!(IdealSpec::new(1, 4).is_err());
        assert!(IdealSpec::new(5, 4).is_err());
        assert!(IdealSpec::new(3, 3).is_err());
        assert!(IdealSpec::new(3, 17).is_err());
        assert_eq!(IdealSpec::new(3, 5).unwrap().vertex_mask(), 0b11111);
    }

    #[test]
    fn budget_counts_the_echelon_footprint() {
        let b = Budget { max_cells: 100, force: false };
        assert!(b.check("d", 10, 1_000_000).is_ok());
        assert!(b.check("d", 11, 11).is_err());
        assert!(Budget { max_cells: 100, force: true }.check("d", 11, 11).is_ok());
    }
}
