use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::scalar::format_rational;

use super::bracket::{fit_component, format_bracket_sum, BracketTerm};
use super::series::Series;
use super::word::Generator;
use super::{check_degree, extended_bch, FreeBchError};

/// Words listed per degree before the rest are only counted.
const MAX_LISTED_WORDS: usize = 24;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn x() -> BracketTerm {
    BracketTerm::gen(Generator::X)
}
fn y() -> BracketTerm {
    BracketTerm::gen(Generator::Y)
}
fn u() -> BracketTerm {
    BracketTerm::gen(Generator::U)
}
fn w() -> BracketTerm {
    BracketTerm::gen(Generator::W)
}
fn sq(a: BracketTerm, b: BracketTerm) -> BracketTerm {
    BracketTerm::square(a, b)
}
fn ang(a: BracketTerm, b: BracketTerm) -> BracketTerm {
    BracketTerm::angle(a, b)
}

/// The published leading terms of `C(x, y, u, w)`, in printed order and
/// with every repetition kept.
pub fn printed_series() -> Vec<(BracketTerm, BigRational)> {
    let xu = || ang(x(), u());
    let yw = || ang(y(), w());
    let xuu = || ang(xu(), u());
    let yww = || ang(yw(), w());
    vec![
        (x(), q(1, 1)),
        (y(), q(1, 1)),
        (sq(x(), y()), q(1, 2)),
        (xu(), q(-1, 1)),
        (yw(), q(-1, 1)),
        (sq(x(), sq(x(), y())), q(1, 12)),
        (sq(y(), sq(y(), x())), q(1, 12)),
        (xuu(), q(1, 2)),
        (yww(), q(1, 2)),
        (sq(x(), yw()), q(-1, 2)),
        (sq(xu(), y()), q(-1, 2)),
        (sq(x(), sq(x(), y())), q(1, 12)),
        (sq(y(), sq(y(), x())), q(1, 12)),
        (ang(xuu(), u()), q(-1, 6)),
        (ang(yww(), w()), q(-1, 6)),
        (sq(x(), yww()), q(1, 4)),
        (sq(xu(), yw()), q(1, 2)),
        (sq(xuu(), y()), q(1, 4)),
        (sq(x(), sq(x(), yw())), q(-1, 12)),
        (sq(xu(), sq(x(), y())), q(-1, 12)),
        (sq(y(), sq(y(), xu())), q(-1, 12)),
        (sq(yw(), sq(y(), x())), q(-1, 12)),
        (sq(y(), sq(x(), sq(y(), x()))), q(1, 24)),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordDiscrepancy {
    pub word: String,
    pub computed: String,
    pub printed: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub printed: String,
    pub matches: bool,
    pub discrepant_words: usize,
    pub discrepancies: Vec<WordDiscrepancy>,
    /// Bracket witness for `computed - printed` in this degree.
    pub difference: String,
}

/// Coefficient of a pure `x, y` bracket read off its one-dimensional
/// bidegree component at `u = w = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpotCheck {
    pub bracket_form: String,
    pub bidegree: (usize, usize),
    pub printed: String,
    pub computed: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DuplicateTerm {
    pub bracket_form: String,
    pub occurrences: usize,
    pub printed_each: Vec<String>,
    pub printed_sum: String,
    pub computed: String,
    pub resolution: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub max_degree: usize,
    pub grading: String,
    pub degrees: Vec<DegreeComparison>,
    pub spot_checks: Vec<SpotCheck>,
    pub duplicates: Vec<DuplicateTerm>,
}

impl DiscrepancyReport {
    pub fn degree(&self, d: usize) -> Option<&DegreeComparison> {
        self.degrees.iter().find(|c| c.degree == d)
    }

    pub fn spot_check(&self, bracket_form: &str) -> Option<&SpotCheck> {
        self.spot_checks.iter().find(|s| s.bracket_form == bracket_form)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn bidegree_component(s: &Series<BigRational>, a: usize, b: usize) -> Series<BigRational> {
    let terms = s
        .specialize_zero(&[Generator::U, Generator::W])
        .terms()
        .iter()
        .filter(|(w, _)| w.count_generator(Generator::X) == a && w.count_generator(Generator::Y) == b)
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect::<Vec<_>>();
    Series::from_terms(s.truncation(), terms)
}

/// `c` with `component = c · basis`, if such a multiple exists.
fn multiple_of(component: &Series<BigRational>, basis: &Series<BigRational>) -> Option<BigRational> {
    let (w, b) = basis.terms().iter().next()?;
    let c = component.coefficient(w) / b;
    (component == &basis.scale(&c) || (c.is_zero() && component.terms().is_empty())).then_some(c)
}

fn printed_total(printed: &[(BracketTerm, BigRational)], term: &BracketTerm) -> BigRational {
    printed
        .iter()
        .filter(|(t, _)| t == term)
        .fold(BigRational::zero(), |acc, (_, c)| acc + c)
}

/// Diffs the printed terms of degree `≤ n` against the computed series and
/// resolves the pure `x, y` coefficients through degree four.
pub fn compare_printed_series(n: usize) -> Result<DiscrepancyReport, FreeBchError> {
    check_degree(n, 4)?;
    let printed = printed_series();
    let z = extended_bch(4)?;

    let mut degrees = Vec::new();
    for d in 1..=n {
        let terms: Vec<_> = printed.iter().filter(|(t, _)| t.degree() == d).cloned().collect();
        let mut expanded = Series::zero(4);
        for (t, c) in &terms {
            expanded = expanded.add(&t.expand::<BigRational>(4).scale(c));
        }
        let computed = z.homogeneous(d);
        let diff = computed.sub(&expanded);
        let discrepancies: Vec<WordDiscrepancy> = diff
            .terms()
            .keys()
            .map(|w| WordDiscrepancy {
                word: w.to_string(),
                computed: format_rational(&computed.coefficient(w)),
                printed: format_rational(&expanded.coefficient(w)),
            })
            .collect();
        let fit = fit_component(&diff, d)?;
        degrees.push(DegreeComparison {
            degree: d,
            printed: format_bracket_sum(terms.iter().map(|(t, c)| (t, c))),
            matches: discrepancies.is_empty(),
            discrepant_words: discrepancies.len(),
            discrepancies: discrepancies.into_iter().take(MAX_LISTED_WORDS).collect(),
            difference: format_bracket_sum(fit.iter().map(|(t, c)| (t, c))),
        });
    }

    let probes = [
        sq(x(), y()),
        sq(x(), sq(x(), y())),
        sq(y(), sq(y(), x())),
        sq(y(), sq(x(), sq(y(), x()))),
    ];
    let mut spot_checks = Vec::new();
    let mut resolved = Vec::new();
    for t in probes {
        let (a, b) = (t.count(Generator::X), t.count(Generator::Y));
        let basis = bidegree_component(&t.expand::<BigRational>(4), a, b);
        let computed = multiple_of(&bidegree_component(&z, a, b), &basis);
        let printed_c = printed_total(&printed, &t);
        spot_checks.push(SpotCheck {
            bracket_form: t.to_string(),
            bidegree: (a, b),
            printed: format_rational(&printed_c),
            computed: computed
                .as_ref()
                .map_or_else(|| "not a multiple".to_string(), format_rational),
            matches: computed.as_ref() == Some(&printed_c),
        });
        resolved.push((t, computed));
    }

    let mut duplicates = Vec::new();
    let mut seen: Vec<&BracketTerm> = Vec::new();
    for (t, _) in &printed {
        if seen.contains(&t) {
            continue;
        }
        seen.push(t);
        let each: Vec<&BigRational> = printed.iter().filter(|(s, _)| s == t).map(|(_, c)| c).collect();
        if each.len() < 2 {
            continue;
        }
        let sum = printed_total(&printed, t);
        let computed = resolved.iter().find(|(s, _)| s == t).and_then(|(_, c)| c.clone());
        let resolution = match &computed {
            Some(c) if each.iter().all(|e| *e == c) => format!(
                "computed coefficient {} supports a single occurrence; the literal sum {} disagrees",
                format_rational(c),
                format_rational(&sum)
            ),
            Some(c) if *c == sum => format!("computed coefficient {} supports the literal sum", format_rational(c)),
            Some(c) => format!("computed coefficient {} matches neither reading", format_rational(c)),
            None => "term is not a pure x, y bracket; see the per-degree diff".to_string(),
        };
        duplicates.push(DuplicateTerm {
            bracket_form: t.to_string(),
            occurrences: each.len(),
            printed_each: each.iter().map(|c| format_rational(c)).collect(),
            printed_sum: format_rational(&sum),
            computed: computed.as_ref().map_or_else(|| "n/a".to_string(), format_rational),
            resolution,
        });
    }

    Ok(DiscrepancyReport {
        max_degree: n,
        grading: "terms grouped by total degree in x, y, u, w".to_string(),
        degrees,
        spot_checks,
        duplicates,
    })
}
