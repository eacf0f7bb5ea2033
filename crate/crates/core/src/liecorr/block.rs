use std::fmt;

use nalgebra::{DMatrix, RealField};
use serde::{Deserialize, Serialize};

use super::LieCorrError;

/// Sizes of the diagonal blocks of an `(p + q) × (p + q)` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockShape {
    pub p: usize,
    pub q: usize,
}

impl BlockShape {
    pub fn new(p: usize, q: usize) -> Result<Self, LieCorrError> {
        if p == 0 || q == 0 {
            return Err(LieCorrError::EmptyBlock { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Entry lies in the zero lower-left block.
    pub fn is_forbidden(&self, i: usize, j: usize) -> bool {
        i >= self.p && j < self.p
    }

    /// Entry lies in the upper-right (odd) block.
    pub fn is_odd_entry(&self, i: usize, j: usize) -> bool {
        i < self.p && j >= self.p
    }

    /// Admissible positions in row-major order; these index coordinates.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.is_forbidden(i, j))
            .collect()
    }

    /// `p² + q² + pq`.
    pub fn dim(&self) -> usize {
        self.p * self.p + self.q * self.q + self.p * self.q
    }

    pub fn even_dim(&self) -> usize {
        self.p * self.p + self.q * self.q
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

/// Block upper-triangular matrix
///
/// ```text
/// [ P  S ]
/// [ 0  R ]
/// ```
///
/// with even part `diag(P, R)` and odd part `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatElement<T: RealField + Copy> {
    shape: BlockShape,
    matrix: DMatrix<T>,
}

impl<T: RealField + Copy> BlockMatElement<T> {
    pub fn new(shape: BlockShape, matrix: DMatrix<T>) -> Result<Self, LieCorrError> {
        let n = shape.n();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(LieCorrError::ShapeMismatch {
                expected: n,
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        for i in shape.p..n {
            for j in 0..shape.p {
                if matrix[(i, j)] != T::zero() {
                    return Err(LieCorrError::LowerLeftNonzero { row: i, col: j });
                }
            }
        }
        Ok(Self { shape, matrix })
    }

    /// Wraps a product or sum of admissible matrices. Such results have an
    /// exactly zero lower-left block because every contributing term
    /// multiplies by an exact zero.
    pub(crate) fn from_closed(shape: BlockShape, matrix: DMatrix<T>) -> Self {
        debug_assert!(Self::new(shape, matrix.clone()).is_ok(), "lower-left block written");
        Self { shape, matrix }
    }

    pub fn zero(shape: BlockShape) -> Self {
        Self::from_closed(shape, DMatrix::zeros(shape.n(), shape.n()))
    }

    pub fn identity(shape: BlockShape) -> Self {
        Self::from_closed(shape, DMatrix::identity(shape.n(), shape.n()))
    }

    /// Matrix unit `E_ij`.
    pub fn unit(shape: BlockShape, i: usize, j: usize) -> Result<Self, LieCorrError> {
        let mut m = DMatrix::zeros(shape.n(), shape.n());
        if i >= shape.n() || j >= shape.n() {
            return Err(LieCorrError::ShapeMismatch {
                expected: shape.n(),
                rows: i + 1,
                cols: j + 1,
            });
        }
        m[(i, j)] = T::one();
        Self::new(shape, m)
    }

    pub fn from_coords(shape: BlockShape, coords: &[T]) -> Result<Self, LieCorrError> {
        let positions = shape.positions();
        if coords.len() != positions.len() {
            return Err(LieCorrError::ShapeMismatch {
                expected: positions.len(),
                rows: coords.len(),
                cols: 1,
            });
        }
        let mut m = DMatrix::zeros(shape.n(), shape.n());
        for (&(i, j), &c) in positions.iter().zip(coords) {
            m[(i, j)] = c;
        }
        Ok(Self::from_closed(shape, m))
    }

    pub fn coords(&self) -> Vec<T> {
        self.shape.positions().into_iter().map(|(i, j)| self.matrix[(i, j)]).collect()
    }

    pub fn shape(&self) -> BlockShape {
        self.shape
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.matrix
    }

    /// Block-diagonal part.
    pub fn even_part(&self) -> Self {
        let (p, n) = (self.shape.p, self.shape.n());
        let mut m = self.matrix.clone();
        m.view_mut((0, p), (p, n - p)).fill(T::zero());
        Self::from_closed(self.shape, m)
    }

    /// Upper-right block.
    pub fn odd_part(&self) -> Self {
        let (p, n) = (self.shape.p, self.shape.n());
        let mut m = DMatrix::zeros(n, n);
        m.view_mut((0, p), (p, n - p))
            .copy_from(&self.matrix.view((0, p), (p, n - p)));
        Self::from_closed(self.shape, m)
    }

    fn check(&self, other: &Self) -> Result<(), LieCorrError> {
        if self.shape != other.shape {
            return Err(LieCorrError::BlockShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LieCorrError> {
        self.check(other)?;
        Ok(Self::from_closed(self.shape, &self.matrix + &other.matrix))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LieCorrError> {
        self.check(other)?;
        Ok(Self::from_closed(self.shape, &self.matrix - &other.matrix))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LieCorrError> {
        self.check(other)?;
        Ok(Self::from_closed(self.shape, &self.matrix * &other.matrix))
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_closed(self.shape, &self.matrix * s)
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> T {
        self.matrix
            .singular_values()
            .iter()
            .fold(T::zero(), |acc, &s| if s > acc { s } else { acc })
    }

    /// Distance to the identity in operator norm.
    pub fn distance_to_identity(&self) -> T {
        Self::from_closed(self.shape, &self.matrix - DMatrix::identity(self.shape.n(), self.shape.n())).op_norm()
    }

    pub fn lower_left_is_zero(&self) -> bool {
        Self::new(self.shape, self.matrix.clone()).is_ok()
    }

    /// Inverse of the even part, by inverting the two diagonal blocks.
    pub fn even_inverse(&self) -> Result<Self, LieCorrError> {
        let (p, n) = (self.shape.p, self.shape.n());
        let top = self.matrix.view((0, 0), (p, p)).clone_owned();
        let bottom = self.matrix.view((p, p), (n - p, n - p)).clone_owned();
        let top = top.try_inverse().ok_or(LieCorrError::SingularEvenPart)?;
        let bottom = bottom.try_inverse().ok_or(LieCorrError::SingularEvenPart)?;
        let mut m = DMatrix::zeros(n, n);
        m.view_mut((0, 0), (p, p)).copy_from(&top);
        m.view_mut((p, p), (n - p, n - p)).copy_from(&bottom);
        Ok(Self::from_closed(self.shape, m))
    }
}

impl<T: RealField + Copy> std::ops::Mul for &BlockMatElement<T> {
    type Output = BlockMatElement<T>;

    fn mul(self, rhs: Self) -> BlockMatElement<T> {
        self.try_mul(rhs).expect("block shapes differ")
    }
}

impl<T: RealField + Copy> std::ops::Add for &BlockMatElement<T> {
    type Output = BlockMatElement<T>;

    fn add(self, rhs: Self) -> BlockMatElement<T> {
        self.try_add(rhs).expect("block shapes differ")
    }
}

impl<T: RealField + Copy> std::ops::Sub for &BlockMatElement<T> {
    type Output = BlockMatElement<T>;

    fn sub(self, rhs: Self) -> BlockMatElement<T> {
        self.try_sub(rhs).expect("block shapes differ")
    }
}
