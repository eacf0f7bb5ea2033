//! Exact linear algebra on sparse coordinate vectors.
//!
//! Everything here is generic over [`Scalar`], but the pivot rule (first
//! nonzero coordinate) is only well-behaved for exact scalars.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse coordinate vector; absent keys are zero.
pub type SparseVec<T> = BTreeMap<usize, T>;

/// `acc += factor * v`, dropping entries that cancel.
pub fn axpy<T: Scalar>(acc: &mut SparseVec<T>, factor: &T, v: &SparseVec<T>) {
    for (&i, x) in v {
        let add = factor.clone() * x.clone();
        match acc.get_mut(&i) {
            Some(cur) => {
                *cur = cur.clone() + add;
                if cur.is_negligible() {
                    acc.remove(&i);
                }
            }
            None => {
                if !add.is_negligible() {
                    acc.insert(i, add);
                }
            }
        }
    }
}

pub fn dense_to_sparse<T: Scalar>(v: &[T]) -> SparseVec<T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_negligible())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense<T: Scalar>(v: &SparseVec<T>, len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

#[derive(Clone, Debug)]
struct PivotRow<T> {
    vector: SparseVec<T>,
    /// Expression of `vector` in terms of the inserted columns.
    combination: SparseVec<T>,
}

/// Incremental semi-echelon basis with combination tracking.
///
/// Each stored row has its leading (smallest) coordinate at a distinct pivot
/// index. Reduction walks the pivots in ascending order, which only ever
/// introduces entries to the right of the pivot being cleared.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    rows: BTreeMap<usize, PivotRow<T>>,
    inserted: usize,
}

impl<T: Scalar> Default for Echelon<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> Echelon<T> {
    pub fn new() -> Self {
        Self {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors offered via [`Echelon::insert`], independent or not.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce_tracked(&self, v: &SparseVec<T>) -> (SparseVec<T>, SparseVec<T>) {
        let mut residual = v.clone();
        let mut combination = SparseVec::new();
        for (&p, row) in &self.rows {
            let Some(coef) = residual.get(&p).cloned() else {
                continue;
            };
            let lead = row.vector[&p].clone();
            let factor = -(coef / lead);
            axpy(&mut residual, &factor, &row.vector);
            residual.remove(&p);
            axpy(&mut combination, &factor, &row.combination);
        }
        (residual, combination)
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &SparseVec<T>) -> SparseVec<T> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Offers a new column. Returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec<T>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (residual, mut combination) = self.reduce_tracked(v);
        let Some((&pivot, _)) = residual.iter().next() else {
            return false;
        };
        // residual = v + combination(previous columns)
        combination.insert(id, T::one());
        self.rows.insert(
            pivot,
            PivotRow {
                vector: residual,
                combination,
            },
        );
        true
    }

    /// Coefficients `c` with `Σ c[id] * column[id] = target`, supported on
    /// the independent columns, or `None` if `target` is outside the span.
    pub fn solve(&self, target: &SparseVec<T>) -> Option<SparseVec<T>> {
        let (residual, combination) = self.reduce_tracked(target);
        if !residual.is_empty() {
            return None;
        }
        // target + combination = 0
        let mut out = SparseVec::new();
        axpy(&mut out, &-T::one(), &combination);
        Some(out)
    }

    /// Fully reduced basis with unit pivots, sorted by pivot index.
    pub fn reduced_basis(&self) -> Vec<SparseVec<T>> {
        let mut rows: Vec<(usize, SparseVec<T>)> = self
            .rows
            .iter()
            .map(|(&p, row)| {
                let lead = row.vector[&p].clone();
                let inv = T::one() / lead;
                let v = row
                    .vector
                    .iter()
                    .map(|(&i, x)| (i, x.clone() * inv.clone()))
                    .collect();
                (p, v)
            })
            .collect();
        // back substitution, last pivot first
        for a in (0..rows.len()).rev() {
            let (pa, va) = rows[a].clone();
            for row in rows.iter_mut().take(a) {
                if let Some(c) = row.1.get(&pa).cloned() {
                    axpy(&mut row.1, &-c, &va);
                    row.1.remove(&pa);
                }
            }
        }
        rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// Solves the dense square system `m x = rhs` by Gaussian elimination.
///
/// Pivots on the largest-magnitude nonzero entry of each column, so the same
/// routine serves exact and floating scalars.
pub fn solve_dense<T: Scalar>(m: &[Vec<T>], rhs: &[T]) -> Option<Vec<T>> {
    let n = rhs.len();
    let mut a: Vec<Vec<T>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_negligible())
            .max_by(|&r, &s| {
                a[r][col]
                    .to_f64()
                    .abs()
                    .total_cmp(&a[s][col].to_f64().abs())
                    .then(s.cmp(&r))
            })?;
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot_row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
    }
    Some(
        (0..n)
            .map(|r| a[r][n].clone() / a[r][r].clone())
            .collect(),
    )
}
