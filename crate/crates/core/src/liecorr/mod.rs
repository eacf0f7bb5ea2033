//! Block upper-triangular matrices as a concrete Banach Z2-algebra.
//!
//! The even part is block-diagonal and the odd part is the upper-right
//! block, so odd·odd products vanish by shape. On top of matrix `exp` and
//! `log` this module checks the extended series numerically and recovers
//! the tangent space of groups generated by `exp L`.

mod bch;
mod block;
mod expm;
mod group;

#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::freebch::FreeBchError;
use crate::z2core::Z2Error;

pub use bch::{
    bch_residual, bch_residual_with, convergence_fit, evaluate_series, formal_numeric_consistency,
    random_direction, random_quadruple, xi_product, ConvergenceFit, Quadruple, NORM_LADDER,
};
pub use block::{BlockMatElement, BlockShape};
pub use expm::{mat_exp, mat_log, mat_log_with, SERIES_TOL};
pub use group::{
    block_algebra, correspondence_roundtrip, correspondence_suite, generate_sample, orthonormal_span,
    principal_angles, shadow_to_block, suite_generators, tangent_basis, xi_closure_check, xi_conjugate,
    RoundtripConfig, Suite, XiGroupSample, ANGLE_TOL, DEFAULT_TOL,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LieCorrError {
    #[error("block sizes must be positive, got {p},{q}")]
    EmptyBlock { p: usize, q: usize },
    #[error("expected size {expected}, got {rows}x{cols}")]
    ShapeMismatch { expected: usize, rows: usize, cols: usize },
    #[error("block shapes differ: {left} vs {right}")]
    BlockShapeMismatch { left: BlockShape, right: BlockShape },
    #[error("lower-left block entry ({row}, {col}) is nonzero")]
    LowerLeftNonzero { row: usize, col: usize },
    #[error("log needs ||g - I|| < 1, got {norm}")]
    LogOutOfDomain { norm: f64 },
    #[error("even part is singular")]
    SingularEvenPart,
    #[error(transparent)]
    Series(#[from] FreeBchError),
    #[error(transparent)]
    Z2(#[from] Z2Error),
}
