//! Finite-dimensional Z2-graded algebras with exact structure constants.
//!
//! An [`AlgebraDef`] is validated into an [`Algebra`] once; every later
//! operation assumes `A_0 A_0 ⊆ A_0`, `A_0 A_1 + A_1 A_0 ⊆ A_1`,
//! `A_1 A_1 = 0` and an even two-sided identity.

mod algebra;
mod element;
pub mod json;

pub use algebra::{validate_z2, Algebra, AlgebraDef, Parity};
pub(crate) use element::same_algebra;
pub use element::{even_part, invert, mul, odd_part, Element};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Z2Error {
    #[error("algebra must have dimension at least 1")]
    EmptyAlgebra,
    #[error("{what} has length {found}, expected {expected}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("e{i}·e{j} has a component along e{k} of the wrong parity")]
    ParityViolation { i: usize, j: usize, k: usize },
    #[error("product of odd basis vectors e{i}·e{j} is nonzero")]
    OddOddNonzero { i: usize, j: usize },
    #[error("unit vector is not a two-sided identity")]
    NoUnit,
    #[error("unit vector has a nonzero odd component")]
    NonEvenUnit,
    #[error("elements belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("malformed algebra file: {0}")]
    Format(String),
}

#[cfg(test)]
mod tests;
