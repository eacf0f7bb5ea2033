use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{format_rational, Scalar};

use super::series::Series;
use super::word::{Generator, GradedWord};
use super::FreeBchError;

/// Expression tree over the ungraded generators with both bracket kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketTerm {
    Gen(Generator),
    /// `⟨S, T⟩ = S T_0 - T_0 S`
    Angle(Box<BracketTerm>, Box<BracketTerm>),
    /// `[S, T] = S T - T S`
    Square(Box<BracketTerm>, Box<BracketTerm>),
}

impl BracketTerm {
    pub fn gen(g: Generator) -> Self {
        BracketTerm::Gen(g)
    }

    pub fn angle(a: BracketTerm, b: BracketTerm) -> Self {
        BracketTerm::Angle(Box::new(a), Box::new(b))
    }

    pub fn square(a: BracketTerm, b: BracketTerm) -> Self {
        BracketTerm::Square(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketTerm::Gen(_) => 1,
            BracketTerm::Angle(a, b) | BracketTerm::Square(a, b) => a.degree() + b.degree(),
        }
    }

    /// Number of occurrences of `g`.
    pub fn count(&self, g: Generator) -> usize {
        match self {
            BracketTerm::Gen(h) => usize::from(*h == g),
            BracketTerm::Angle(a, b) | BracketTerm::Square(a, b) => a.count(g) + b.count(g),
        }
    }

    pub fn involves(&self, g: Generator) -> bool {
        self.count(g) > 0
    }

    /// Word-level expansion, truncated at `truncation`.
    pub fn expand<T: Scalar>(&self, truncation: usize) -> Series<T> {
        match self {
            BracketTerm::Gen(g) => Series::generator(truncation, *g),
            BracketTerm::Angle(a, b) => {
                let s = a.expand::<T>(truncation);
                let t0 = b.expand::<T>(truncation).even_part();
                commutator(&s, &t0)
            }
            BracketTerm::Square(a, b) => {
                commutator(&a.expand::<T>(truncation), &b.expand::<T>(truncation))
            }
        }
    }
}

fn commutator<T: Scalar>(s: &Series<T>, t: &Series<T>) -> Series<T> {
    let st = s.mul(t).expect("operands share a truncation");
    let ts = t.mul(s).expect("operands share a truncation");
    st.sub(&ts)
}

impl fmt::Display for BracketTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTerm::Gen(g) => f.write_str(g.name()),
            BracketTerm::Angle(a, b) => write!(f, "<{a}, {b}>"),
            BracketTerm::Square(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Expands a weighted sum of bracket terms.
pub fn bracket_expand(terms: &[(BracketTerm, BigRational)], truncation: usize) -> Series<BigRational> {
    let mut out = Series::zero(truncation);
    for (t, c) in terms {
        out = out.add(&t.expand::<BigRational>(truncation).scale(c));
    }
    out
}

/// One entry of a bracket-form rendering of a series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FittedTerm {
    pub degree: usize,
    pub bracket_form: String,
    pub coefficient: String,
    #[serde(skip)]
    pub term: BracketTerm,
    #[serde(skip)]
    pub value: BigRational,
}

impl FittedTerm {
    pub fn new(term: BracketTerm, value: BigRational) -> Self {
        Self {
            degree: term.degree(),
            bracket_form: term.to_string(),
            coefficient: format_rational(&value),
            term,
            value,
        }
    }
}

/// Renders `c₁ t₁ + c₂ t₂ + ...` with the usual sign and unit conventions.
pub fn format_bracket_sum<'a>(terms: impl IntoIterator<Item = (&'a BracketTerm, &'a BigRational)>) -> String {
    let mut out = String::new();
    for (t, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push(' ');
        }
        out.push_str(&t.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The building blocks `A_u^k(x) = ⟨…⟨x, u⟩…, u⟩` and `A_w^k(y)`, in order
/// of degree with the `x` family first.
fn atoms(max_degree: usize) -> Vec<BracketTerm> {
    let mut out = Vec::new();
    let mut a = BracketTerm::gen(Generator::X);
    let mut b = BracketTerm::gen(Generator::Y);
    for _ in 0..max_degree {
        out.push(a.clone());
        out.push(b.clone());
        a = BracketTerm::angle(a, BracketTerm::gen(Generator::U));
        b = BracketTerm::angle(b, BracketTerm::gen(Generator::W));
    }
    out
}

/// Right-normed square brackets `[t₁, [t₂, … [t_{m-1}, t_m]]]` of atoms with
/// total degree `d`, ordered by bracket length and then lexicographically in
/// the atom order.
pub fn spanning_monomials(d: usize) -> Vec<BracketTerm> {
    let atoms = atoms(d);
    let mut sequences: Vec<Vec<usize>> = Vec::new();
    fn rec(atoms: &[BracketTerm], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.degree() <= left {
                cur.push(i);
                rec(atoms, left - a.degree(), cur, out);
                cur.pop();
            }
        }
    }
    rec(&atoms, d, &mut Vec::new(), &mut sequences);
    sequences.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sequences
        .into_iter()
        // innermost [t, t] vanishes
        .filter(|s| !(s.len() >= 2 && s[s.len() - 2] == s[s.len() - 1]))
        .map(|s| {
            let mut it = s.iter().rev();
            let mut t = atoms[*it.next().expect("nonempty sequence")].clone();
            for &i in it {
                t = BracketTerm::square(atoms[i].clone(), t);
            }
            t
        })
        .collect()
}

/// Expresses the homogeneous degree-`d` component of `target` as a
/// combination of [`spanning_monomials`]. The witness is deterministic but
/// not unique.
pub fn fit_component(
    target: &Series<BigRational>,
    d: usize,
) -> Result<Vec<(BracketTerm, BigRational)>, FreeBchError> {
    let component = target.homogeneous(d);
    if component.terms().is_empty() {
        return Ok(Vec::new());
    }
    let monomials = spanning_monomials(d);
    let columns: Vec<Series<BigRational>> = monomials
        .iter()
        .map(|m| m.expand::<BigRational>(d).homogeneous(d))
        .collect();
    let mut words: BTreeSet<&GradedWord> = component.terms().keys().collect();
    for c in &columns {
        words.extend(c.terms().keys());
    }
    let index: BTreeMap<&GradedWord, usize> = words.into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let to_vec = |s: &Series<BigRational>| -> SparseVec<BigRational> {
        s.terms().iter().map(|(w, c)| (index[w], c.clone())).collect()
    };
    let mut ech = Echelon::new();
    for c in &columns {
        ech.insert(&to_vec(c));
    }
    let solution = ech
        .solve(&to_vec(&component))
        .ok_or(FreeBchError::InconsistentSystem { degree: d })?;
    Ok(solution
        .into_iter()
        .map(|(id, c)| (monomials[id].clone(), c))
        .collect())
}

/// Bracket-form witness for every degree `1..=max_degree` of `series`.
pub fn fit_series(series: &Series<BigRational>, max_degree: usize) -> Result<Vec<FittedTerm>, FreeBchError> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for (t, c) in fit_component(series, d)? {
            out.push(FittedTerm::new(t, c));
        }
    }
    Ok(out)
}
