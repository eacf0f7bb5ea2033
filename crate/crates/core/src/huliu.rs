//! Angle and square brackets on a Z2-algebra and the graded Leibniz
//! identity verifier.
//!
//! On an associative Z2-algebra the brackets
//!
//! ```text
//! <x, y> = x y_0 - y_0 x        [x, y] = x y - y x
//! ```
//!
//! satisfy the Leibniz identity and the four mixed bracket identities. The verifier
//! evaluates all of them exactly, on every basis triple and on seeded random
//! triples.

use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::linalg::{dense_to_sparse, sparse_to_dense, Echelon};
use crate::report::{Check, VerificationReport};
use crate::sampling::RationalSampler;
use crate::scalar::Scalar;
use crate::z2core::{same_algebra, Algebra, Element, Z2Error};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HuLiuError {
    #[error("algebra {0} is not associative")]
    NotAssociative(String),
    #[error(transparent)]
    Z2(#[from] Z2Error),
}

/// `x y_0 - y_0 x`.
pub fn angle<T: Scalar>(x: &Element<T>, y: &Element<T>) -> Result<Element<T>, Z2Error> {
    let y0 = y.even_part();
    x.try_mul(&y0)?.try_sub(&y0.try_mul(x)?)
}

/// `x y - y x`.
pub fn square<T: Scalar>(x: &Element<T>, y: &Element<T>) -> Result<Element<T>, Z2Error> {
    x.try_mul(y)?.try_sub(&y.try_mul(x)?)
}

/// An associative Z2-algebra viewed as a two-bracket Leibniz algebra.
#[derive(Clone, Debug)]
pub struct BracketedAlgebra {
    algebra: Arc<Algebra>,
}

impl BracketedAlgebra {
    pub fn new(algebra: Arc<Algebra>) -> Result<Self, HuLiuError> {
        if !algebra.is_associative() {
            return Err(HuLiuError::NotAssociative(algebra.name().to_owned()));
        }
        Ok(Self { algebra })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn angle<T: Scalar>(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>, Z2Error> {
        angle(x, y)
    }

    pub fn square<T: Scalar>(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>, Z2Error> {
        square(x, y)
    }
}

type Q = BigRational;
type Triple<'a> = (&'a Element<Q>, &'a Element<Q>, &'a Element<Q>);

fn ang(x: &Element<Q>, y: &Element<Q>) -> Element<Q> {
    angle(x, y).expect("same algebra")
}

fn sq(x: &Element<Q>, y: &Element<Q>) -> Element<Q> {
    square(x, y).expect("same algebra")
}

/// One identity as `lhs - rhs` of a triple; zero means it holds.
struct Identity {
    name: &'static str,
    residual: fn(Triple<'_>) -> Element<Q>,
}

const IDENTITIES: [Identity; 7] = [
    Identity {
        name: "leibniz <<x,y>,z> = <x,<y,z>> + <<x,z>,y>",
        residual: |(x, y, z)| &(&ang(&ang(x, y), z) - &ang(x, &ang(y, z))) - &ang(&ang(x, z), y),
    },
    Identity {
        name: "hu-liu <x,[y,z]> = <x,<y,z>>",
        residual: |(x, y, z)| &ang(x, &sq(y, z)) - &ang(x, &ang(y, z)),
    },
    Identity {
        name: "hu-liu [<x,x>,y] = <<x,x>,y>",
        residual: |(x, y, _)| {
            let xx = ang(x, x);
            &sq(&xx, y) - &ang(&xx, y)
        },
    },
    Identity {
        name: "hu-liu <[x,y],z> + [<y,z>,x] + [y,<x,z>] = 0",
        residual: |(x, y, z)| &(&ang(&sq(x, y), z) + &sq(&ang(y, z), x)) + &sq(y, &ang(x, z)),
    },
    Identity {
        name: "hu-liu [<x,y>,z] + [z,[x,y]] + [z,<y,x>] + <z,<x,y>> = 0",
        residual: |(x, y, z)| {
            let xy = ang(x, y);
            &(&(&sq(&xy, z) + &sq(z, &sq(x, y))) + &sq(z, &ang(y, x))) + &ang(z, &xy)
        },
    },
    Identity {
        name: "square antisymmetry [x,y] + [y,x] = 0",
        residual: |(x, y, _)| &sq(x, y) + &sq(y, x),
    },
    Identity {
        name: "square jacobi [[x,y],z] + [[y,z],x] + [[z,x],y] = 0",
        residual: |(x, y, z)| &(&sq(&sq(x, y), z) + &sq(&sq(y, z), x)) + &sq(&sq(z, x), y),
    },
];

/// Names of the checks produced by [`verify_identities`], in report order.
pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|i| i.name).collect()
}

/// Evaluates the Leibniz identity, the four mixed bracket identities, and the Lie
/// axioms of the square bracket on all basis triples plus `trials` seeded
/// random triples. Checks are claimed only when the algebra is associative.
pub fn verify_identities(alg: &Arc<Algebra>, trials: usize, seed: u64) -> VerificationReport {
    let claimed = alg.is_associative();
    let n = alg.dim();
    let basis: Vec<Element<Q>> = (0..n).map(|i| Element::basis(alg, i)).collect();
    let mut sampler = RationalSampler::new(seed);
    let random: Vec<[Element<Q>; 3]> = (0..trials)
        .map(|_| {
            [
                sampler.element(alg, None),
                sampler.element(alg, None),
                sampler.element(alg, None),
            ]
        })
        .collect();

    let mut report = VerificationReport::new("hu-liu identities", alg.name());
    for identity in &IDENTITIES {
        let mut check = Check::new(identity.name, claimed).with_note(format!(
            "{} basis triples + {trials} random triples",
            n * n * n
        ));
        if !claimed {
            check.note = Some(format!(
                "{}; informational, algebra is not associative",
                check.note.unwrap_or_default()
            ));
        }
        let mut run = |x: &Element<Q>, y: &Element<Q>, z: &Element<Q>| {
            let r = (identity.residual)((x, y, z));
            check.record(
                r.is_zero(),
                || [("x", x.to_string()), ("y", y.to_string()), ("z", z.to_string())],
                || r.format_coeffs(),
            );
        };
        for x in &basis {
            for y in &basis {
                for z in &basis {
                    run(x, y, z);
                }
            }
        }
        for [x, y, z] in &random {
            run(x, y, z);
        }
        report.push(check);
    }
    report
}

/// Linearly independent elements spanning a subspace closed under both
/// brackets.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis<T> {
    vectors: Vec<Element<T>>,
}

impl<T: Scalar> SubalgebraBasis<T> {
    pub fn vectors(&self) -> &[Element<T>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn echelon(&self) -> Echelon<T> {
        let mut e = Echelon::new();
        for v in &self.vectors {
            e.insert(&dense_to_sparse(v.coeffs()));
        }
        e
    }

    pub fn contains(&self, x: &Element<T>) -> bool {
        self.echelon().contains(&dense_to_sparse(x.coeffs()))
    }

    /// Every pairwise bracket lies in the span.
    pub fn is_closed(&self) -> Result<bool, Z2Error> {
        let e = self.echelon();
        for a in &self.vectors {
            for b in &self.vectors {
                for br in [angle(a, b)?, square(a, b)?] {
                    if !e.contains(&dense_to_sparse(br.coeffs())) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn same_span(&self, other: &Self) -> bool {
        self.echelon().reduced_basis() == other.echelon().reduced_basis()
    }
}

/// Smallest subspace containing `seeds` and closed under both brackets.
///
/// The result is returned in reduced echelon form (pivot on the first
/// nonzero coordinate), so equal spans give equal bases.
pub fn generate_subalgebra<T: Scalar>(
    algebra: &Arc<Algebra>,
    seeds: &[Element<T>],
) -> Result<SubalgebraBasis<T>, Z2Error> {
    let mut echelon = Echelon::new();
    let mut basis: Vec<Element<T>> = Vec::new();
    let mut pending: Vec<Element<T>> = seeds.to_vec();
    while let Some(v) = pending.pop() {
        if !same_algebra(algebra, v.algebra()) {
            return Err(Z2Error::AlgebraMismatch {
                left: algebra.name().to_owned(),
                right: v.algebra().name().to_owned(),
            });
        }
        if !echelon.insert(&dense_to_sparse(v.coeffs())) {
            continue;
        }
        basis.push(v.clone());
        for b in &basis {
            pending.push(angle(&v, b)?);
            pending.push(angle(b, &v)?);
            pending.push(square(&v, b)?);
        }
    }
    let vectors = echelon
        .reduced_basis()
        .iter()
        .map(|row| Element::new(algebra, sparse_to_dense(row, algebra.dim())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SubalgebraBasis { vectors })
}
