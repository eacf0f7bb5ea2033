//! The named division and composition Z2-algebras.
//!
//! `O^(2λ)` is built from its three printed multiplication tables; the
//! twisted complex, quaternionic and dual-real algebras are closed
//! sub-tables of it. `R`, `C` and `H` use the standard tables.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::report::{Check, VerificationReport};
use crate::sampling::RationalSampler;
use crate::scalar::Scalar;
use crate::z2core::{Algebra, AlgebraDef, Element, Parity, Z2Error};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog algebra {0:?}")]
    IllegalName(String),
    #[error("basis index {index} is out of range or has the wrong parity")]
    BadIndex { index: usize },
    #[error("restriction is not closed: e{i}·e{j} has a component along e{k}")]
    NotClosed { i: usize, j: usize, k: usize },
    #[error(transparent)]
    Invalid(#[from] Z2Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    R,
    C,
    H,
    O,
}

/// The `λ` of the twisted algebras, or no twist for the ungraded ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    None,
    Plus,
    Minus,
}

impl Twist {
    pub fn lambda(self) -> i64 {
        match self {
            Twist::Minus => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CatalogName {
    base: Base,
    twist: Twist,
}

impl CatalogName {
    pub const R: Self = Self::raw(Base::R, Twist::None);
    pub const C: Self = Self::raw(Base::C, Twist::None);
    pub const H: Self = Self::raw(Base::H, Twist::None);
    /// Dual real numbers; the twist plays no role at this dimension.
    pub const R2: Self = Self::raw(Base::R, Twist::Plus);
    pub const C2: Self = Self::raw(Base::C, Twist::Plus);
    pub const C_2: Self = Self::raw(Base::C, Twist::Minus);
    pub const H2: Self = Self::raw(Base::H, Twist::Plus);
    pub const H_2: Self = Self::raw(Base::H, Twist::Minus);
    pub const O2: Self = Self::raw(Base::O, Twist::Plus);
    pub const O_2: Self = Self::raw(Base::O, Twist::Minus);

    /// All ten algebras, associative ones first.
    pub const ALL: [Self; 10] = [
        Self::R,
        Self::C,
        Self::H,
        Self::R2,
        Self::C2,
        Self::C_2,
        Self::H2,
        Self::H_2,
        Self::O2,
        Self::O_2,
    ];

    pub const ASSOCIATIVE: [Self; 8] = [
        Self::R,
        Self::C,
        Self::H,
        Self::R2,
        Self::C2,
        Self::C_2,
        Self::H2,
        Self::H_2,
    ];

    const fn raw(base: Base, twist: Twist) -> Self {
        Self { base, twist }
    }

    pub fn new(base: Base, twist: Twist) -> Result<Self, CatalogError> {
        let name = Self { base, twist };
        let legal = !matches!((base, twist), (Base::O, Twist::None) | (Base::R, Twist::Minus));
        if legal {
            Ok(name)
        } else {
            Err(CatalogError::IllegalName(format!("{base:?}/{twist:?}")))
        }
    }

    pub fn base(self) -> Base {
        self.base
    }

    pub fn twist(self) -> Twist {
        self.twist
    }

    pub fn as_str(self) -> &'static str {
        match (self.base, self.twist) {
            (Base::R, Twist::None) => "R",
            (Base::C, Twist::None) => "C",
            (Base::H, Twist::None) => "H",
            (Base::R, _) => "R2",
            (Base::C, Twist::Plus) => "C2",
            (Base::C, Twist::Minus) => "C-2",
            (Base::H, Twist::Plus) => "H2",
            (Base::H, Twist::Minus) => "H-2",
            (Base::O, Twist::Minus) => "O-2",
            (Base::O, _) => "O2",
        }
    }

    /// Claimed structure: every catalog algebra except `O^(±2)` is associative.
    pub fn is_claimed_associative(self) -> bool {
        self.base != Base::O
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| CatalogError::IllegalName(s.to_owned()))
    }
}

// Rows are left factors, columns right factors; entries are signed 1-based
// indices into the same table family.
const EVEN_EVEN: &str = "
    01  02  03  04  05  06  07  08
    02 -01  04 -03  06 -05 -08  07
    03 -04 -01  02  07  08 -05 -06
    04  03 -02 -01  08 -07  06 -05
    05 -06 -07 -08 -01  02  03  04
    06  05 -08  07 -02 -01 -04  03
    07  08  05 -06 -03  04 -01 -02
    08 -07  06  05 -04 -03  02 -01
";

// e_{0i} · e_{1j}
const EVEN_ODD: &str = "
    11  12  13  14  15  16  17  18
    12 -11  14 -13  16 -15 -18  17
    13 -14 -11  12  17  18 -15 -16
    14  13 -12 -11  18 -17  16 -15
    15 -16 -17 -18 -11  12  13  14
    16  15 -18  17 -12 -11 -14  13
    17  18  15 -16 -13  14 -11 -12
    18 -17  16  15 -14 -13  12 -11
";

// e_{1i} · e_{0j}; `L` marks a factor of λ.
const ODD_EVEN: &str = "
    11  12  13  14  L15  L16  L17  L18
    12 -11  14 -13  L16 -L15 -L18  L17
    13 -14 -11  12  L17  L18 -L15 -L16
    14  13 -12 -11  L18 -L17  L16 -L15
    15 -16 -17 -18 -L11  L12  L13  L14
    16  15 -18  17 -L12 -L11 -L14  L13
    17  18  15 -16 -L13  L14 -L11 -L12
    18 -17  16  15 -L14 -L13  L12 -L11
";

/// Parses one printed table into `(sign, λ-power, basis index)` entries,
/// where the basis index is 0..16 with `e_{0j} ↦ j-1`, `e_{1j} ↦ 7+j`.
fn parse_table(text: &str) -> Vec<Vec<(i64, bool, usize)>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|line| {
            line.split_whitespace()
                .map(|tok| {
                    let (sign, rest) = match tok.strip_prefix('-') {
                        Some(r) => (-1, r),
                        None => (1, tok),
                    };
                    let (lambda, digits) = match rest.strip_prefix('L') {
                        Some(r) => (true, r),
                        None => (false, rest),
                    };
                    let grade = (digits.as_bytes()[0] - b'0') as usize;
                    let j = (digits.as_bytes()[1] - b'0') as usize;
                    (sign, lambda, grade * 8 + j - 1)
                })
                .collect()
        })
        .collect()
}

fn octonion_labels() -> Vec<String> {
    (0..2)
        .flat_map(|g| (1..=8).map(move |j| format!("e{g}{j}")))
        .collect()
}

/// The 16-dimensional `O^(2λ)`.
pub fn octonion_z2(lambda: i64) -> AlgebraDef {
    let mut parity = vec![Parity::Even; 8];
    parity.extend([Parity::Odd; 8]);
    let name = if lambda < 0 { "O-2" } else { "O2" };
    let mut def = AlgebraDef::new(name, parity).with_labels(octonion_labels());
    let blocks = [(0, 0, EVEN_EVEN), (0, 8, EVEN_ODD), (8, 0, ODD_EVEN)];
    for (row_off, col_off, text) in blocks {
        for (r, row) in parse_table(text).into_iter().enumerate() {
            for (c, (sign, has_lambda, k)) in row.into_iter().enumerate() {
                let s = if has_lambda { sign * lambda } else { sign };
                def.set_product(row_off + r, col_off + c, k, s);
            }
        }
    }
    // e_{1s} e_{1t} = 0 is the zero default.
    def.set_unit_basis(0);
    def
}

fn real() -> AlgebraDef {
    let mut def = AlgebraDef::new("R", vec![Parity::Even]).with_labels(vec!["1".into()]);
    def.set_product(0, 0, 0, 1);
    def.set_unit_basis(0);
    def
}

fn complex() -> AlgebraDef {
    let mut def = AlgebraDef::new("C", vec![Parity::Even; 2]).with_labels(vec!["1".into(), "i".into()]);
    def.set_product(0, 0, 0, 1);
    def.set_product(0, 1, 1, 1);
    def.set_product(1, 0, 1, 1);
    def.set_product(1, 1, 0, -1);
    def.set_unit_basis(0);
    def
}

fn quaternion() -> AlgebraDef {
    // (sign, index) of e_a e_b for 1, i, j, k
    const TABLE: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let labels = ["1", "i", "j", "k"].map(String::from).to_vec();
    let mut def = AlgebraDef::new("H", vec![Parity::Even; 4]).with_labels(labels);
    for (a, row) in TABLE.iter().enumerate() {
        for (b, &(s, k)) in row.iter().enumerate() {
            def.set_product(a, b, k, s);
        }
    }
    def.set_unit_basis(0);
    def
}

/// Index sets in `O^(2λ)` (0-based: `e_{0j} ↦ j-1`, `e_{1j} ↦ 7+j`)
/// spanning the dual-real, twisted complex and twisted quaternion pieces.
pub const R2_EVEN: [usize; 1] = [0];
pub const R2_ODD: [usize; 1] = [8];
pub const C2_EVEN: [usize; 2] = [0, 4];
pub const C2_ODD: [usize; 2] = [8, 12];
pub const H2_EVEN: [usize; 4] = [0, 1, 4, 5];
pub const H2_ODD: [usize; 4] = [8, 9, 12, 13];

/// Restricts `def` to the span of the given basis vectors, listed even
/// first. Every product of retained vectors must stay in the span, and the
/// unit must be supported on it.
pub fn subalgebra_restrict(
    def: &AlgebraDef,
    even_idx: &[usize],
    odd_idx: &[usize],
) -> Result<AlgebraDef, CatalogError> {
    for (&index, want) in even_idx
        .iter()
        .map(|i| (i, Parity::Even))
        .chain(odd_idx.iter().map(|i| (i, Parity::Odd)))
    {
        if index >= def.dim || def.parity[index] != want {
            return Err(CatalogError::BadIndex { index });
        }
    }
    let kept: Vec<usize> = even_idx.iter().chain(odd_idx).copied().collect();
    let position = |k: usize| kept.iter().position(|&x| x == k);

    let parity = kept.iter().map(|&i| def.parity[i]).collect();
    let mut out = AlgebraDef::new(def.name.clone(), parity);
    if !def.labels.is_empty() {
        out.labels = kept.iter().map(|&i| def.labels[i].clone()).collect();
    }
    for (a, &i) in kept.iter().enumerate() {
        for (b, &j) in kept.iter().enumerate() {
            for k in 0..def.dim {
                let c = def.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let Some(pos) = position(k) else {
                    return Err(CatalogError::NotClosed { i, j, k });
                };
                out.set(a, b, pos, c.clone());
            }
        }
    }
    for (k, u) in def.unit.iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        match position(k) {
            Some(pos) => out.unit[pos] = u.clone(),
            None => return Err(CatalogError::NotClosed { i: k, j: k, k }),
        }
    }
    Ok(out)
}

/// Definition of a named catalog algebra.
pub fn catalog_def(name: CatalogName) -> AlgebraDef {
    let lambda = name.twist().lambda();
    let restricted = |even: &[usize], odd: &[usize]| {
        let mut def = subalgebra_restrict(&octonion_z2(lambda), even, odd)
            .expect("catalog sub-tables are closed");
        def.name = name.as_str().to_owned();
        def
    };
    match (name.base(), name.twist()) {
        (Base::R, Twist::None) => real(),
        (Base::C, Twist::None) => complex(),
        (Base::H, Twist::None) => quaternion(),
        (Base::R, _) => restricted(&R2_EVEN, &R2_ODD),
        (Base::C, _) => restricted(&C2_EVEN, &C2_ODD),
        (Base::H, _) => restricted(&H2_EVEN, &H2_ODD),
        (Base::O, _) => octonion_z2(lambda),
    }
}

/// Validated catalog algebra.
pub fn catalog_algebra(name: CatalogName) -> Arc<Algebra> {
    catalog_def(name)
        .validate()
        .expect("catalog algebras satisfy the Z2 invariants")
}

/// An element together with its composition norm.
#[derive(Clone, Debug)]
pub struct NormedElement<T> {
    pub element: Element<T>,
    pub norm_value: f64,
}

impl<T: Scalar> NormedElement<T> {
    pub fn new(element: Element<T>) -> Self {
        let norm_value = norm(&element);
        Self { element, norm_value }
    }
}

/// `‖a_0‖ + ‖a_1‖` with Euclidean part norms in the canonical basis.
pub fn norm<T: Scalar>(a: &Element<T>) -> f64 {
    a.even_part().norm_sqr().to_f64().sqrt() + a.odd_part().norm_sqr().to_f64().sqrt()
}

/// Inverse built from the even-part conjugate:
/// `(x_0 + x_1)^{-1} = x_0^{-1} - x_0^{-1}(x_1 x_0^{-1})`, with
/// `x_0^{-1} = conj(x_0) / ‖x_0‖²`. Valid for every catalog algebra, whose
/// even parts are `R`, `C`, `H` or the octonions with unit at index 0.
pub fn closed_form_inverse(a: &Element<BigRational>) -> Option<Element<BigRational>> {
    let even = a.even_part();
    let n2 = even.norm_sqr();
    if n2.is_zero() {
        return None;
    }
    let alg = a.algebra();
    let unit_idx = alg.unit().iter().position(|u| u.is_one())?;
    let conj: Vec<BigRational> = even
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if i == unit_idx { c.clone() } else { -c.clone() })
        .collect();
    let even_inv = Element::new(alg, conj).ok()?.scale(&(BigRational::one() / n2));
    let odd = a.odd_part();
    Some(&even_inv - &(&even_inv * &(&odd * &even_inv)))
}

fn show(e: &Element<BigRational>) -> String {
    e.to_string()
}

/// Squared-norm composition identities, exact, plus submultiplicativity of
/// the norm within `1e-12`.
pub fn composition_check(alg: &Arc<Algebra>, trials: usize, seed: u64) -> VerificationReport {
    let mut sampler = RationalSampler::new(seed);
    let mut report = VerificationReport::new("composition", alg.name());
    let mut even_even = Check::new("|x0 y0|^2 = |x0|^2 |y0|^2", true);
    let mut even_odd = Check::new("|x0 y1|^2 = |x0|^2 |y1|^2", true);
    let mut odd_even = Check::new("|y1 x0|^2 = |x0|^2 |y1|^2", true);
    let mut submult = Check::new("|xy| <= |x| |y|", true);

    let zero = Element::<BigRational>::zero(alg);
    for t in 0..trials {
        let (x, y) = match t {
            0 => (zero.clone(), sampler.element(alg, None)),
            1 => (sampler.element(alg, None), zero.clone()),
            _ => (sampler.element(alg, None), sampler.element(alg, None)),
        };
        let (x0, y0, y1) = (x.even_part(), y.even_part(), y.odd_part());
        let inputs = || [("x", show(&x)), ("y", show(&y))];

        let lhs = (&x0 * &y0).norm_sqr();
        let rhs = x0.norm_sqr() * y0.norm_sqr();
        even_even.record(lhs == rhs, inputs, || (lhs.clone() - rhs.clone()).to_string());

        let target = x0.norm_sqr() * y1.norm_sqr();
        let lhs = (&x0 * &y1).norm_sqr();
        even_odd.record(lhs == target, inputs, || (lhs.clone() - target.clone()).to_string());
        let lhs = (&y1 * &x0).norm_sqr();
        odd_even.record(lhs == target, inputs, || (lhs.clone() - target.clone()).to_string());

        let lhs = norm(&(&x * &y));
        let rhs = norm(&x) * norm(&y);
        submult.observe((lhs - rhs).max(0.0));
        submult.record(lhs <= rhs + 1e-12, inputs, || format!("{:e}", lhs - rhs));
    }
    for c in [even_even, even_odd, odd_even, submult] {
        report.push(c);
    }
    report
}

/// Division property: elements with nonzero even part invert exactly on
/// both sides; nonzero odd elements are non-invertible two-sided zero
/// divisors.
pub fn division_check(alg: &Arc<Algebra>, trials: usize, seed: u64) -> VerificationReport {
    let mut sampler = RationalSampler::new(seed);
    let mut report = VerificationReport::new("division", alg.name());
    let unit = Element::<BigRational>::unit(alg);
    // division is only asserted for the associative catalog members
    let claimed = alg.is_associative();

    let mut invertible = Check::new("nonzero even part => invertible", claimed);
    let mut closed_form = Check::new("inverse matches closed form", claimed);
    let mut unipotent = Check::new("(1 + odd)^-1 = 1 - odd", claimed);
    for _ in 0..trials {
        let x = sampler.element_with_even(alg);
        let inputs = || [("x", show(&x))];
        match x.invert() {
            Ok(y) => {
                let left = &x * &y;
                let right = &y * &x;
                invertible.record(left == unit && right == unit, inputs, || {
                    format!("x·y = {left}, y·x = {right}")
                });
                let cf = closed_form_inverse(&x);
                closed_form.record(cf.as_ref() == Some(&y), inputs, || {
                    format!("solver {y}, closed form {cf:?}")
                });
            }
            Err(e) => {
                invertible.fail(inputs(), e.to_string());
                closed_form.fail(inputs(), "no inverse to compare");
            }
        }
    }

    let odd_basis = alg.indices_of(Parity::Odd);
    let mut zero_divisor =
        Check::new("nonzero odd => non-invertible two-sided zero divisor", claimed);
    if odd_basis.is_empty() {
        zero_divisor = zero_divisor.with_note("algebra has no odd part");
    } else {
        let witness = Element::<BigRational>::basis(alg, odd_basis[0]);
        let mut odd_samples: Vec<Element<BigRational>> = odd_basis
            .iter()
            .map(|&i| Element::basis(alg, i))
            .collect();
        for _ in 0..trials {
            odd_samples.push(sampler.nonzero_element(alg, Some(Parity::Odd)));
        }
        for v in &odd_samples {
            let not_invertible = v.invert().is_err();
            let kills = (v * &witness).is_zero() && (&witness * v).is_zero();
            zero_divisor.record(
                not_invertible && kills,
                || [("v", show(v)), ("witness", show(&witness))],
                || format!("invertible: {}, annihilated: {kills}", !not_invertible),
            );
            let one_plus = &unit + v;
            let ok = one_plus.invert().ok() == Some(&unit - v);
            unipotent.record(ok, || [("odd", show(v))], || "inverse differs from 1 - odd".into());
        }
    }
    if odd_basis.is_empty() {
        unipotent = unipotent.with_note("algebra has no odd part");
    }
    for c in [invertible, closed_form, zero_divisor, unipotent] {
        report.push(c);
    }
    report
}

/// Basis pairs `(i, j)` whose products differ between two definitions of
/// the same dimension.
pub fn table_diff(a: &AlgebraDef, b: &AlgebraDef) -> Vec<(usize, usize)> {
    assert_eq!(a.dim, b.dim, "table_diff needs equal dimensions");
    let n = a.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (0..n).any(|k| a.get(i, j, k) != b.get(i, j, k)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Rational helper for tests and callers building elements by hand.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests;
