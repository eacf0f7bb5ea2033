use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{axpy, SparseVec};

use super::Z2Error;

/// Grade of a basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Grade of a product of homogeneous elements.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Unvalidated algebra description: a graded basis, dense structure
/// constants `e_i e_j = Σ_k c[i][j][k] e_k`, and a candidate unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDef {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<Parity>,
    /// Row-major `dim × dim × dim` tensor.
    pub structconst: Vec<BigRational>,
    pub unit: Vec<BigRational>,
    /// Optional display names for basis vectors.
    pub labels: Vec<String>,
}

impl AlgebraDef {
    /// Empty multiplication table; the unit is left at zero.
    pub fn new(name: impl Into<String>, parity: Vec<Parity>) -> Self {
        let dim = parity.len();
        Self {
            name: name.into(),
            dim,
            parity,
            structconst: vec![BigRational::zero(); dim * dim * dim],
            unit: vec![BigRational::zero(); dim],
            labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.structconst[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: BigRational) {
        let at = self.idx(i, j, k);
        self.structconst[at] = c;
    }

    /// Sets `e_i e_j = sign * e_k`.
    pub fn set_product(&mut self, i: usize, j: usize, k: usize, sign: i64) {
        for m in 0..self.dim {
            let at = self.idx(i, j, m);
            self.structconst[at] = BigRational::zero();
        }
        self.set(i, j, k, BigRational::from_integer(sign.into()));
    }

    pub fn set_unit_basis(&mut self, i: usize) {
        self.unit = vec![BigRational::zero(); self.dim];
        self.unit[i] = BigRational::one();
    }

    pub fn label(&self, i: usize) -> String {
        self.labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("e{i}"))
    }

    /// Checks every invariant of a Z2-algebra with identity.
    pub fn validate(self) -> Result<Arc<Algebra>, Z2Error> {
        Algebra::new(self).map(Arc::new)
    }
}

/// A validated Z2-graded algebra with identity.
#[derive(Debug, PartialEq, Eq)]
pub struct Algebra {
    def: AlgebraDef,
    /// Nonzero structure constants `(i, j, k, c)`.
    terms: Vec<(usize, usize, usize, BigRational)>,
    /// Products of basis pairs as sparse vectors, indexed `i * dim + j`.
    products: Vec<SparseVec<BigRational>>,
}

impl Algebra {
    pub fn new(def: AlgebraDef) -> Result<Self, Z2Error> {
        let dim = def.dim;
        if dim == 0 {
            return Err(Z2Error::EmptyAlgebra);
        }
        if def.parity.len() != dim {
            return Err(Z2Error::ShapeMismatch {
                what: "parity",
                expected: dim,
                found: def.parity.len(),
            });
        }
        if def.structconst.len() != dim * dim * dim {
            return Err(Z2Error::ShapeMismatch {
                what: "structconst",
                expected: dim * dim * dim,
                found: def.structconst.len(),
            });
        }
        if def.unit.len() != dim {
            return Err(Z2Error::ShapeMismatch {
                what: "unit",
                expected: dim,
                found: def.unit.len(),
            });
        }
        if !def.labels.is_empty() && def.labels.len() != dim {
            return Err(Z2Error::ShapeMismatch {
                what: "labels",
                expected: dim,
                found: def.labels.len(),
            });
        }

        let mut terms = Vec::new();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let both_odd = def.parity[i].is_odd() && def.parity[j].is_odd();
                let grade = def.parity[i].combine(def.parity[j]);
                let mut row = SparseVec::new();
                for k in 0..dim {
                    let c = def.get(i, j, k);
                    if c.is_zero() {
                        continue;
                    }
                    if both_odd {
                        return Err(Z2Error::OddOddNonzero { i, j });
                    }
                    if def.parity[k] != grade {
                        return Err(Z2Error::ParityViolation { i, j, k });
                    }
                    terms.push((i, j, k, c.clone()));
                    row.insert(k, c.clone());
                }
                products.push(row);
            }
        }

        if def
            .unit
            .iter()
            .zip(&def.parity)
            .any(|(c, p)| p.is_odd() && !c.is_zero())
        {
            return Err(Z2Error::NonEvenUnit);
        }
        let alg = Self {
            def,
            terms,
            products,
        };
        for j in 0..dim {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (i, u) in alg.def.unit.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                axpy(&mut left, u, alg.basis_product(i, j));
                axpy(&mut right, u, alg.basis_product(j, i));
            }
            let expected: SparseVec<BigRational> = [(j, BigRational::one())].into();
            if left != expected || right != expected {
                return Err(Z2Error::NoUnit);
            }
        }
        Ok(alg)
    }

    pub fn def(&self) -> &AlgebraDef {
        &self.def
    }

    pub fn name(&self) -> &str {
        &self.def.name
    }

    pub fn dim(&self) -> usize {
        self.def.dim
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.def.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.def.parity
    }

    pub fn unit(&self) -> &[BigRational] {
        &self.def.unit
    }

    pub fn indices_of(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == parity).collect()
    }

    pub fn has_odd_part(&self) -> bool {
        self.def.parity.iter().any(|p| p.is_odd())
    }

    /// Nonzero structure constants.
    pub fn terms(&self) -> &[(usize, usize, usize, BigRational)] {
        &self.terms
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<BigRational> {
        &self.products[i * self.dim() + j]
    }

    fn apply_right(&self, v: &SparseVec<BigRational>, k: usize) -> SparseVec<BigRational> {
        let mut out = SparseVec::new();
        for (&m, c) in v {
            axpy(&mut out, c, self.basis_product(m, k));
        }
        out
    }

    fn apply_left(&self, i: usize, v: &SparseVec<BigRational>) -> SparseVec<BigRational> {
        let mut out = SparseVec::new();
        for (&m, c) in v {
            axpy(&mut out, c, self.basis_product(i, m));
        }
        out
    }

    /// `(e_i e_j) e_k - e_i (e_j e_k)`.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> SparseVec<BigRational> {
        let mut out = self.apply_right(self.basis_product(i, j), k);
        let rhs = self.apply_left(i, self.basis_product(j, k));
        axpy(&mut out, &-BigRational::one(), &rhs);
        out
    }

    fn associators(&self) -> Vec<SparseVec<BigRational>> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push(self.associator(i, j, k));
                }
            }
        }
        out
    }

    /// Exhaustive check of `(e_i e_j) e_k = e_i (e_j e_k)` over all basis triples.
    pub fn is_associative(&self) -> bool {
        self.first_nonassociative_triple().is_none()
    }

    pub fn first_nonassociative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| !self.associator(i, j, k).is_empty())
    }

    /// Left and right alternative laws, checked through their polarized
    /// forms `(x,y,z) + (y,x,z) = 0` and `(z,x,y) + (z,y,x) = 0` on every
    /// basis triple. The polarized identities are trilinear, so this is
    /// equivalent to the laws holding on the whole algebra.
    pub fn is_alternative(&self) -> bool {
        let n = self.dim();
        let assoc = self.associators();
        let at = |i: usize, j: usize, k: usize| &assoc[(i * n + j) * n + k];
        let one = BigRational::one();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut left = at(i, j, k).clone();
                    axpy(&mut left, &one, at(j, i, k));
                    if !left.is_empty() {
                        return false;
                    }
                    let mut right = at(k, i, j).clone();
                    axpy(&mut right, &one, at(k, j, i));
                    if !right.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `e_i e_j = e_j e_i` for all basis pairs.
    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }
}

/// Validates a definition; see [`AlgebraDef::validate`].
pub fn validate_z2(def: AlgebraDef) -> Result<Arc<Algebra>, Z2Error> {
    def.validate()
}
