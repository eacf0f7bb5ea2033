//! Truncated free graded algebra on `x, y, u, w` and the extended
//! Campbell-Baker-Hausdorff series
//!
//! `(exp u)_0 (exp x) (exp u)_0^{-1} · (exp w)_0 (exp y) (exp w)_0^{-1} = exp C(x, y, u, w)`.
//!
//! Each generator splits as `g = g_0 + g_1`; words with two odd letters are
//! zero. Series are stored in word coordinates with exact coefficients;
//! bracket forms are derived by an exact linear fit.

mod bracket;
mod compare;
mod series;
mod word;


use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::Scalar;

pub use bracket::{
    bracket_expand, fit_component, fit_series, format_bracket_sum, spanning_monomials, BracketTerm,
    FittedTerm,
};
pub use compare::{
    compare_printed_series, printed_series, DegreeComparison, DiscrepancyReport, DuplicateTerm, SpotCheck,
    WordDiscrepancy,
};
pub use series::Series;
pub use word::{Generator, GradedWord, Letter};

/// Largest supported truncation degree.
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FreeBchError {
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("constant term must be {expected}")]
    BadConstantTerm { expected: &'static str },
    #[error("degree {degree} outside 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("degree-{degree} component is not in the span of the bracket monomials")]
    InconsistentSystem { degree: usize },
}

fn check_degree(n: usize, max: usize) -> Result<(), FreeBchError> {
    if n == 0 || n > max {
        return Err(FreeBchError::DegreeOutOfRange { degree: n, max });
    }
    Ok(())
}

/// `(exp v)_0` for `v = v_0 + v_1`.
pub fn even_exp<T: Scalar>(n: usize, g: Generator) -> Result<Series<T>, FreeBchError> {
    Ok(Series::generator(n, g).exp()?.even_part())
}

/// The extended series through degree `n`, over any scalar.
pub fn extended_bch_in<T: Scalar>(n: usize) -> Result<Series<T>, FreeBchError> {
    check_degree(n, MAX_DEGREE)?;
    let eu = even_exp::<T>(n, Generator::U)?;
    let ew = even_exp::<T>(n, Generator::W)?;
    let ex = Series::generator(n, Generator::X).exp()?;
    let ey = Series::generator(n, Generator::Y).exp()?;
    let lhs = eu
        .mul(&ex)?
        .mul(&eu.inverse()?)?
        .mul(&ew)?
        .mul(&ey)?
        .mul(&ew.inverse()?)?;
    lhs.log()
}

/// The extended series `C(x, y, u, w)` through degree `n`, exactly.
pub fn extended_bch(n: usize) -> Result<Series<BigRational>, FreeBchError> {
    extended_bch_in(n)
}

/// `log(exp x · exp y)` through degree `n`.
pub fn classical_bch(n: usize) -> Result<Series<BigRational>, FreeBchError> {
    check_degree(n, MAX_DEGREE)?;
    let ex = Series::generator(n, Generator::X).exp()?;
    let ey = Series::generator(n, Generator::Y).exp()?;
    ex.mul(&ey)?.log()
}

/// Bracket-form witness of `extended_bch(n)`.
pub fn bracket_basis_fit(n: usize) -> Result<Vec<FittedTerm>, FreeBchError> {
    fit_series(&extended_bch(n)?, n)
}

/// `C(x, y, u, w) = x + y + 1/2 [x, y] - ...` through degree `n`.
pub fn pretty_print(terms: &[FittedTerm]) -> String {
    format!(
        "C(x, y, u, w) = {}",
        format_bracket_sum(terms.iter().map(|t| (&t.term, &t.value)))
    )
}
