//! The squarefree characteristic-2 algebras.
//!
//! `R` is the exterior algebra on the edge variables `x_{i,j}`; in
//! characteristic two it is commutative with `x_{i,j}^2 = 0`, so a monomial
//! is exactly a simple graph and the product of two monomials is the edge
//! union when the edge sets are disjoint and zero otherwise. The paired
//! algebra on `x_1.., y_1..` (the target of the map `phi`) reuses the same
//! arithmetic with a different variable alphabet.
//!
//! Coefficients are fixed to F2. Membership of an F2-polynomial in an ideal
//! with F2 generators has the same answer over every extension field, since
//! rank does not change under field extension.

mod enumerate;
mod exchange;
mod monomial;
mod polynomial;

pub use enumerate::{
    count_monomials, cycle_structure, enumerate_monomials, girth, ComponentKind, CycleStructure,
};
pub use exchange::PolynomialJson;
pub use monomial::{Edge, Monomial, Multidegree, VertexPermutation};
pub use polynomial::{cycle_monomial, plucker, Polynomial};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex index representable in the edge alphabet.
pub const MAX_VERTICES: usize = 16;
/// Largest index `i` of the paired generators `x_i`, `y_i`.
pub const MAX_PAIRED: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("loop at vertex {0}: x_{{i,i}} is not a variable")]
    Loop(usize),
    #[error("repeated index {0} in {1}")]
    RepeatedIndex(usize, &'static str),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("alphabet mismatch: {left} vs {right}")]
    UniverseMismatch { left: Universe, right: Universe },
    #[error("variable {0} repeated inside one term")]
    RepeatedVariable(String),
    #[error("duplicate term {0}")]
    DuplicateTerm(String),
    #[error("{0}")]
    Parse(String),
}

/// The variable alphabet a polynomial lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Universe {
    /// `x_{i,j}` with `1 <= i < j <= vertices`.
    Edge { vertices: usize },
    /// `x_1..x_n, y_1..y_n` with `n = vertices`.
    Paired { vertices: usize },
}

impl Universe {
    pub fn edge(vertices: usize) -> Result<Self, RingError> {
        if vertices > MAX_VERTICES {
            return Err(RingError::VertexOutOfRange {
                vertex: vertices,
                max: MAX_VERTICES,
            });
        }
        Ok(Universe::Edge { vertices })
    }

    pub fn paired(vertices: usize) -> Result<Self, RingError> {
        if vertices > MAX_PAIRED {
            return Err(RingError::VertexOutOfRange {
                vertex: vertices,
                max: MAX_PAIRED,
            });
        }
        Ok(Universe::Paired { vertices })
    }

    pub fn vertices(self) -> usize {
        match self {
            Universe::Edge { vertices } | Universe::Paired { vertices } => vertices,
        }
    }

    /// Bitmask of the variables that exist in this alphabet.
    pub(crate) fn var_mask(self) -> u128 {
        match self {
            Universe::Edge { vertices } => {
                let mut m = 0u128;
                for u in 1..=vertices {
                    for v in u + 1..=vertices {
                        m |= 1u128 << Edge::new(u, v).expect("in range").bit();
                    }
                }
                m
            }
            Universe::Paired { vertices } => {
                let low = if vertices == 64 {
                    u64::MAX as u128
                } else {
                    (1u128 << vertices) - 1
                };
                low | low << 64
            }
        }
    }

    pub(crate) fn var_name(self, bit: u32) -> String {
        match self {
            Universe::Edge { .. } => {
                let e = Edge::from_bit(bit);
                format!("x{},{}", e.u(), e.v())
            }
            Universe::Paired { .. } => {
                if bit < 64 {
                    format!("x{}", bit + 1)
                } else {
                    format!("y{}", bit - 63)
                }
            }
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::Edge { vertices } => write!(f, "edge({vertices})"),
            Universe::Paired { vertices } => write!(f, "paired({vertices})"),
        }
    }
}

/// Bit of the paired generator `x_i`.
pub fn paired_x(i: usize) -> u32 {
    debug_assert!((1..=MAX_PAIRED).contains(&i));
    (i - 1) as u32
}

/// Bit of the paired generator `y_i`.
pub fn paired_y(i: usize) -> u32 {
    debug_assert!((1..=MAX_PAIRED).contains(&i));
    (i + 63) as u32
}
