use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use crate::linalg::solve_dense;
use crate::scalar::{format_rational, Scalar};

use super::{Algebra, Parity, Z2Error};

/// Coefficient vector over the basis of a validated [`Algebra`].
///
/// The arithmetic operators panic when the operands live in different
/// algebras; [`Element::try_mul`] is the fallible form of the product.
#[derive(Clone, Debug)]
pub struct Element<T> {
    algebra: Arc<Algebra>,
    coeffs: Vec<T>,
}

impl<T: PartialEq> PartialEq for Element<T> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<T: Scalar> Element<T> {
    pub fn new(algebra: &Arc<Algebra>, coeffs: Vec<T>) -> Result<Self, Z2Error> {
        if coeffs.len() != algebra.dim() {
            return Err(Z2Error::ShapeMismatch {
                what: "element coefficients",
                expected: algebra.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            algebra: Arc::clone(algebra),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: vec![T::zero(); algebra.dim()],
        }
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[i] = T::one();
        e
    }

    pub fn unit(algebra: &Arc<Algebra>) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: algebra.unit().iter().map(T::from_rational).collect(),
        }
    }

    pub fn from_rationals(algebra: &Arc<Algebra>, coeffs: &[BigRational]) -> Result<Self, Z2Error> {
        Self::new(algebra, coeffs.iter().map(T::from_rational).collect())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_negligible)
    }

    fn project(&self, parity: Parity) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.algebra.parity(i) == parity {
                    c.clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs,
        }
    }

    /// Component in `A_0`.
    pub fn even_part(&self) -> Self {
        self.project(Parity::Even)
    }

    /// Component in `A_1`.
    pub fn odd_part(&self) -> Self {
        self.project(Parity::Odd)
    }

    pub fn is_even(&self) -> bool {
        self.odd_part().is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.even_part().is_zero()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    /// Squared Euclidean norm in the canonical basis.
    pub fn norm_sqr(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Element<U> {
        Element {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Element<f64> {
        self.map(Scalar::to_f64)
    }

    fn check_same(&self, other: &Self) -> Result<(), Z2Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Z2Error::AlgebraMismatch {
                left: self.algebra.name().to_owned(),
                right: other.algebra.name().to_owned(),
            })
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn try_mul(&self, other: &Self) -> Result<Self, Z2Error> {
        self.check_same(other)?;
        let mut out = vec![T::zero(); self.algebra.dim()];
        for (i, j, k, c) in self.algebra.terms() {
            let (a, b) = (&self.coeffs[*i], &other.coeffs[*j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let term = a.clone() * b.clone() * T::from_rational(c);
            out[*k] = out[*k].clone() + term;
        }
        Ok(Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: out,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, Z2Error> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, Z2Error> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    /// Two-sided inverse.
    ///
    /// Solves `a · y = 1` through the left-multiplication operator of `a`,
    /// then confirms `y · a = 1` as well, since the algebra need not be
    /// associative.
    pub fn invert(&self) -> Result<Self, Z2Error> {
        let n = self.algebra.dim();
        let mut left_op = vec![vec![T::zero(); n]; n];
        for (i, j, k, c) in self.algebra.terms() {
            let a = &self.coeffs[*i];
            if a.is_zero() {
                continue;
            }
            left_op[*k][*j] = left_op[*k][*j].clone() + a.clone() * T::from_rational(c);
        }
        let unit = Self::unit(&self.algebra);
        let y = solve_dense(&left_op, &unit.coeffs).ok_or(Z2Error::NotInvertible)?;
        let y = Self {
            algebra: Arc::clone(&self.algebra),
            coeffs: y,
        };
        let right = y.try_mul(self)?.try_sub(&unit)?;
        if !right.is_zero() {
            return Err(Z2Error::NotInvertible);
        }
        Ok(y)
    }

    /// Bracketed coefficient list, as used in reports.
    pub fn format_coeffs(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl Element<BigRational> {
    /// Coefficients as `"p/q"` strings.
    pub fn to_rational_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

/// Bilinear product; see [`Element::try_mul`].
pub fn mul<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Result<Element<T>, Z2Error> {
    a.try_mul(b)
}

pub fn even_part<T: Scalar>(a: &Element<T>) -> Element<T> {
    a.even_part()
}

pub fn odd_part<T: Scalar>(a: &Element<T>) -> Element<T> {
    a.odd_part()
}

pub fn invert<T: Scalar>(a: &Element<T>) -> Result<Element<T>, Z2Error> {
    a.invert()
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let def = self.algebra.def();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", def.label(i))?;
            } else {
                write!(f, "({c}){}", def.label(i))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl<T: Scalar> $trait<&Element<T>> for &Element<T> {
            type Output = Element<T>;

            fn $method(self, rhs: &Element<T>) -> Element<T> {
                Element::$op(self, rhs).expect("operands belong to different algebras")
            }
        }

        impl<T: Scalar> $trait<Element<T>> for Element<T> {
            type Output = Element<T>;

            fn $method(self, rhs: Element<T>) -> Element<T> {
                Element::$op(&self, &rhs).expect("operands belong to different algebras")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Scalar> Neg for &Element<T> {
    type Output = Element<T>;

    fn neg(self) -> Element<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar> Neg for Element<T> {
    type Output = Element<T>;

    fn neg(self) -> Element<T> {
        -&self
    }
}
