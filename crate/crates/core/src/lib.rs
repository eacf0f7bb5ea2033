//! Z2-graded algebras, their two-bracket Leibniz structure, and the
//! extended Campbell-Baker-Hausdorff series.
//!
//! - [`z2core`]: exact structure-constant arithmetic, grading validation,
//!   inversion and associativity/alternativity classification.
//! - [`catalog`]: the ten named division and composition Z2-algebras.
//! - [`huliu`]: angle and square brackets and the identity verifier.
//! - [`freebch`]: truncated free graded algebra, formal `exp`/`log` and the
//!   extended series `C(x, y, u, w)`.
//! - [`liecorr`]: block upper-triangular matrix model, matrix `exp`/`log`,
//!   ξ-closure and tangent-space recovery.
//!
//! Element and series types are generic over [`Scalar`]; the aliases below
//! fix the two scalar kinds used in practice.

pub mod catalog;
pub mod freebch;
pub mod huliu;
pub mod liecorr;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod z2core;

pub use num_rational::BigRational;
pub use scalar::Scalar;

/// Arbitrary-precision rational, the scalar of every exact check.
pub type Rational = BigRational;
pub type ExactElement = z2core::Element<BigRational>;
pub type FloatElement = z2core::Element<f64>;
pub type RationalSeries = freebch::Series<BigRational>;
pub type BlockMat = liecorr::BlockMatElement<f64>;
