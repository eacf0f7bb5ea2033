use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalar::Scalar;
use crate::z2core::Parity;

use super::word::{Generator, GradedWord, Letter};
use super::FreeBchError;

/// Truncated element of the free associative algebra on the eight graded
/// letters, modulo words with two or more odd letters.
///
/// Only nonzero coefficients of words of degree `1..=truncation` are stored;
/// the constant term is kept apart.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    truncation: usize,
    constant: T,
    terms: BTreeMap<GradedWord, T>,
}

impl<T: Scalar> Series<T> {
    pub fn zero(truncation: usize) -> Self {
        Self {
            truncation,
            constant: T::zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(truncation: usize, c: T) -> Self {
        Self {
            constant: c,
            ..Self::zero(truncation)
        }
    }

    pub fn one(truncation: usize) -> Self {
        Self::scalar(truncation, T::one())
    }

    pub fn letter(truncation: usize, l: Letter) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(GradedWord::letter(l), T::one());
        s
    }

    /// `g_0 + g_1`.
    pub fn generator(truncation: usize, g: Generator) -> Self {
        Self::letter(truncation, g.even()).add(&Self::letter(truncation, g.odd()))
    }

    pub fn from_terms(truncation: usize, terms: impl IntoIterator<Item = (GradedWord, T)>) -> Self {
        let mut s = Self::zero(truncation);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn constant(&self) -> &T {
        &self.constant
    }

    pub fn terms(&self) -> &BTreeMap<GradedWord, T> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.constant.is_negligible()
    }

    pub fn coefficient(&self, w: &GradedWord) -> T {
        if w.degree() == 0 {
            return self.constant.clone();
        }
        self.terms.get(w).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `c · w`, ignoring words that vanish or exceed the truncation.
    pub fn add_term(&mut self, w: GradedWord, c: T) {
        if w.degree() == 0 {
            self.constant = self.constant.clone() + c;
            return;
        }
        if w.degree() > self.truncation || w.vanishes() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(cur) => {
                *cur = cur.clone() + c;
                if cur.is_negligible() {
                    self.terms.remove(&w);
                }
            }
            None => {
                if !c.is_negligible() {
                    self.terms.insert(w, c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.truncation = self.truncation.min(other.truncation);
        out.terms.retain(|w, _| w.degree() <= out.truncation);
        out.constant = out.constant.clone() + other.constant.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_negligible() {
            return Self::zero(self.truncation);
        }
        Self {
            truncation: self.truncation,
            constant: self.constant.clone() * s.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    /// Concatenation product, dropping vanishing and over-degree words.
    pub fn mul(&self, other: &Self) -> Result<Self, FreeBchError> {
        if self.truncation != other.truncation {
            return Err(FreeBchError::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        let n = self.truncation;
        let mut by_degree: Vec<Vec<(&GradedWord, &T)>> = vec![Vec::new(); n + 1];
        for (w, c) in &other.terms {
            by_degree[w.degree()].push((w, c));
        }
        let mut acc: HashMap<GradedWord, T> = HashMap::new();
        let mut push = |w: GradedWord, c: T| {
            acc.entry(w)
                .and_modify(|cur| *cur = cur.clone() + c.clone())
                .or_insert(c);
        };
        if !self.constant.is_zero() {
            for (w, c) in &other.terms {
                push(w.clone(), self.constant.clone() * c.clone());
            }
        }
        if !other.constant.is_zero() {
            for (w, c) in &self.terms {
                push(w.clone(), c.clone() * other.constant.clone());
            }
        }
        for (w1, c1) in &self.terms {
            for group in by_degree.iter().take(n - w1.degree() + 1).skip(1) {
                for (w2, c2) in group {
                    if let Some(w) = w1.concat(w2, n) {
                        push(w, c1.clone() * (*c2).clone());
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_negligible())
            .collect();
        Ok(Self {
            truncation: n,
            constant: self.constant.clone() * other.constant.clone(),
            terms,
        })
    }

    fn without_constant(&self) -> Self {
        Self {
            constant: T::zero(),
            ..self.clone()
        }
    }

    /// `Σ sⁿ/n!`; requires a zero constant term.
    pub fn exp(&self) -> Result<Self, FreeBchError> {
        if !self.constant.is_negligible() {
            return Err(FreeBchError::BadConstantTerm { expected: "0" });
        }
        let mut out = Self::one(self.truncation);
        let mut power = Self::one(self.truncation);
        for k in 1..=self.truncation {
            power = power.mul(self)?.scale(&(T::one() / T::from_i64(k as i64)));
            if power.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `Σ (-1)^{n+1} (s - 1)ⁿ / n`; requires constant term one.
    pub fn log(&self) -> Result<Self, FreeBchError> {
        if !(self.constant.clone() - T::one()).is_negligible() {
            return Err(FreeBchError::BadConstantTerm { expected: "1" });
        }
        let t = self.without_constant();
        let mut out = Self::zero(self.truncation);
        let mut power = Self::one(self.truncation);
        for k in 1..=self.truncation {
            power = power.mul(&t)?;
            if power.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            out = out.add(&power.scale(&(sign / T::from_i64(k as i64))));
        }
        Ok(out)
    }

    /// Two-sided inverse of a series with invertible constant term, by the
    /// geometric series in `1 - s/c`.
    pub fn inverse(&self) -> Result<Self, FreeBchError> {
        if self.constant.is_negligible() {
            return Err(FreeBchError::BadConstantTerm { expected: "nonzero" });
        }
        let c_inv = T::one() / self.constant.clone();
        // s = c (1 + t)  with  t = s/c - 1
        let t = self.without_constant().scale(&c_inv);
        let neg_t = t.neg();
        let mut out = Self::one(self.truncation);
        let mut power = Self::one(self.truncation);
        for _ in 1..=self.truncation {
            power = power.mul(&neg_t)?;
            if power.is_empty() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.scale(&c_inv))
    }

    fn filter(&self, keep_constant: bool, pred: impl Fn(&GradedWord) -> bool) -> Self {
        Self {
            truncation: self.truncation,
            constant: if keep_constant {
                self.constant.clone()
            } else {
                T::zero()
            },
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| pred(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Words with no odd letter, plus the constant.
    pub fn even_part(&self) -> Self {
        self.filter(true, |w| w.parity() == Parity::Even)
    }

    /// Words with exactly one odd letter.
    pub fn odd_part(&self) -> Self {
        self.filter(false, |w| w.parity() == Parity::Odd)
    }

    /// Degree-`d` component (the constant for `d = 0`).
    pub fn homogeneous(&self, d: usize) -> Self {
        self.filter(d == 0, |w| w.degree() == d)
    }

    /// Sets every letter of the given generators to zero.
    pub fn specialize_zero(&self, generators: &[Generator]) -> Self {
        self.filter(true, |w| !generators.iter().any(|&g| w.contains_generator(g)))
    }

    /// Drops every word containing one of `letters`.
    pub fn drop_letters(&self, letters: &[Letter]) -> Self {
        self.filter(true, |w| !w.letters().iter().any(|l| letters.contains(l)))
    }

    /// Re-truncates at a lower degree.
    pub fn truncate(&self, truncation: usize) -> Self {
        let mut out = self.filter(true, |w| w.degree() <= truncation);
        out.truncation = truncation.min(self.truncation);
        out
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.terms.keys().any(|w| w.contains_generator(g))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(GradedWord::degree).max().unwrap_or(0)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        let mut out = Series::scalar(self.truncation, f(&self.constant));
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Substitutes a value for every letter and sums the word products.
    /// `axpy(out, c, m)` must perform `out += c·m`.
    pub fn evaluate<M: Clone>(
        &self,
        zero: &M,
        one: &M,
        letter_value: impl Fn(Letter) -> M,
        mul: impl Fn(&M, &M) -> M,
        axpy: impl Fn(&mut M, &T, &M),
    ) -> M {
        let values: Vec<M> = Letter::all().map(&letter_value).collect();
        let mut out = zero.clone();
        axpy(&mut out, &self.constant, one);
        for (w, c) in &self.terms {
            let mut acc = values[w.letters()[0].index()].clone();
            for l in &w.letters()[1..] {
                acc = mul(&acc, &values[l.index()]);
            }
            axpy(&mut out, c, &acc);
        }
        out
    }
}

impl<T: Scalar> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut emit = |f: &mut fmt::Formatter<'_>, c: &T, w: &str| -> fmt::Result {
            let neg = c.to_f64() < 0.0;
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if w.is_empty() {
                write!(f, "{mag}")
            } else if mag.is_one() {
                f.write_str(w)
            } else {
                write!(f, "{mag} {w}")
            }
        };
        if !self.constant.is_negligible() {
            emit(f, &self.constant, "")?;
        }
        for (w, c) in &self.terms {
            emit(f, c, &w.to_string())?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
