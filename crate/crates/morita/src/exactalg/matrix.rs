//! Dense exact matrices and the row-reduction kernel.
//!
//! Everything downstream (coends, splittings, representation transport)
//! is realized through the handful of operations here: `solve`,
//! `kernel_basis`, `cokernel_basis` and `split_idempotent`. All results
//! are deterministic: reduced row echelon form with leftmost-pivot
//! order, and quotient representatives chosen as the lowest-index
//! standard basis vectors.

use super::scalar::Field;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dims(String),
    #[error("matrix is not idempotent: entry ({row},{col}) of P*P differs from P")]
    NotIdempotent { row: usize, col: usize },
    #[error("structure constants are not associative at basis triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
}

/// A dense `rows x cols` matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<K: Field> {
    pub field: K,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Self { field, rows, cols, entries }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { field, rows, cols, entries }
    }

    /// Build from row-major `i64` literals; handy in tests.
    pub fn from_i64(field: K, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self::from_fn(field.clone(), rows, cols, |i, j| field.from_i64(data[i * cols + j]))
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field.clone(), self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        Self::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.mul(self.get(i, j), c)
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "product dimension mismatch");
        let mut out = Self::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if self.field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if self.field.is_zero(b) {
                        continue;
                    }
                    let t = self.field.mul(a, b);
                    let cur = out.get(i, j);
                    let next = self.field.add(cur, &t);
                    out.set(i, j, next);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let t = self.field.mul(self.get(i, k), &v[k]);
                    acc = self.field.add(&acc, &t);
                }
                acc
            })
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Columns glued side by side.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn from_cols(field: K, rows: usize, cols: &[Vec<K::Elem>]) -> Self {
        for c in cols {
            assert_eq!(c.len(), rows);
        }
        Self::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.field.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.field.inv(self.get(row, col)).expect("pivot nonzero");
            for j in col..self.cols {
                let v = self.field.mul(self.get(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.field.is_zero(self.get(r, col)) {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        if self.field.is_zero(self.get(row, j)) {
                            continue;
                        }
                        let t = self.field.mul(&factor, self.get(row, j));
                        let v = self.field.sub(self.get(r, j), &t);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Solve `A x = b` exactly. `None` when inconsistent; otherwise the
    /// particular solution with all free variables zero.
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let rhs = Matrix::from_fn(self.field.clone(), self.rows, 1, |i, _| b[i].clone());
        let mut aug = self.hcat(&rhs);
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the rhs column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `A X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix<K>) -> Option<Matrix<K>> {
        assert_eq!(self.rows, b.rows);
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            cols.push(self.solve(&b.col(j))?);
        }
        Some(Matrix::from_cols(self.field.clone(), self.cols, &cols))
    }

    /// A basis of `ker A` as column vectors, one per non-pivot column, in
    /// ascending column order with the free coordinate set to one.
    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                if c < free {
                    v[c] = self.field.neg(m.get(r, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// A basis of the column space: the columns whose index is a pivot of
    /// the column-space reduction, in ascending index order.
    pub fn column_space_basis(&self) -> Vec<Vec<K::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    /// Invert a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<K>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field.clone(), self.rows);
        let mut aug = self.hcat(&id);
        let pivots = aug.rref_in_place();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        Some(Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            aug.get(i, self.cols + j).clone()
        }))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// The cokernel of a matrix: a projection onto chosen quotient
/// coordinates together with a section picking representatives.
///
/// For `a : R^n -> R^m`, `projection` is `(m-r) x m` with
/// `projection * a = 0`, and `section` is `m x (m-r)` with
/// `projection * section = I`. The quotient basis is the classes of the
/// lowest-index standard vectors outside the column space.
pub struct Cokernel<K: Field> {
    pub projection: Matrix<K>,
    pub section: Matrix<K>,
    pub dim: usize,
}

/// Compute the cokernel of `a`, deterministically.
pub fn cokernel_basis<K: Field>(a: &Matrix<K>) -> Cokernel<K> {
    let field = a.field.clone();
    let m = a.rows;
    // Greedily extend a column-space basis by standard vectors e_i with
    // the lowest indices; the chosen e_i represent the quotient basis.
    let im_basis = a.column_space_basis();
    let r = im_basis.len();
    let mut cols: Vec<Vec<K::Elem>> = im_basis;
    let mut chosen = Vec::new();
    for i in 0..m {
        if cols.len() == m {
            break;
        }
        let mut e = vec![field.zero(); m];
        e[i] = field.one();
        let mut trial = cols.clone();
        trial.push(e.clone());
        let trial_m = Matrix::from_cols(field.clone(), m, &trial);
        if trial_m.rank() == trial.len() {
            cols.push(e);
            chosen.push(i);
        }
    }
    debug_assert_eq!(cols.len(), m);
    let u = Matrix::from_cols(field.clone(), m, &cols);
    let u_inv = u.inverse().expect("basis matrix invertible");
    // Last m-r rows of u_inv read off quotient coordinates.
    let projection = Matrix::from_fn(field.clone(), m - r, m, |i, j| u_inv.get(r + i, j).clone());
    let section = Matrix::from_fn(field.clone(), m, m - r, |i, j| {
        if chosen[j] == i {
            field.one()
        } else {
            field.zero()
        }
    });
    Cokernel { projection, section, dim: m - r }
}

/// Split an exactly idempotent matrix `P` as `P = S * R` with `R * S = I`.
///
/// `S` has columns a basis of `im P` (lowest-pivot choice) and `R` holds
/// the coordinates of `P` in that basis.
pub fn split_idempotent<K: Field>(p: &Matrix<K>) -> Result<(Matrix<K>, Matrix<K>), MatrixError> {
    if p.rows != p.cols {
        return Err(MatrixError::Dims(format!("{}x{} not square", p.rows, p.cols)));
    }
    let sq = p.mul(p);
    for i in 0..p.rows {
        for j in 0..p.cols {
            if sq.get(i, j) != p.get(i, j) {
                return Err(MatrixError::NotIdempotent { row: i, col: j });
            }
        }
    }
    let field = p.field.clone();
    let basis = p.column_space_basis();
    let s = Matrix::from_cols(field, p.rows, &basis);
    let r = s.solve_matrix(p).expect("columns of P lie in im P");
    debug_assert_eq!(s.mul(&r), *p);
    debug_assert!(r.mul(&s).is_identity());
    Ok((s, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{PrimeField, Rationals};

    #[test]
    fn solve_identity_returns_rhs() {
        let a = Matrix::identity(Rationals, 3);
        let b = vec![Rationals.from_i64(5), Rationals.from_i64(-2), Rationals.from_i64(7)];
        assert_eq!(a.solve(&b).unwrap(), b);
    }

    #[test]
    fn kernel_of_all_ones_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        let a = Matrix::from_i64(f2, 2, 2, &[1, 1, 1, 1]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![1, 1]);
        assert!(a.mul_vec(&basis[0]).iter().all(|e| f2.is_zero(e)));
    }

    #[test]
    fn cokernel_of_rank_one_inclusion_in_q2() {
        // inclusion of span{(1,2)} into Q^2
        let a = Matrix::from_i64(Rationals, 2, 1, &[1, 2]);
        let cok = cokernel_basis(&a);
        assert_eq!(cok.dim, 1);
        assert!(cok.projection.mul(&a).is_zero());
        assert!(cok.projection.mul(&cok.section).is_identity());
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let a = Matrix::from_i64(Rationals, 2, 1, &[1, 1]);
        let b = vec![Rationals.from_i64(1), Rationals.from_i64(2)];
        assert_eq!(a.solve(&b), None);
    }

    #[test]
    fn split_identity_and_projection() {
        let id = Matrix::identity(Rationals, 2);
        let (s, r) = split_idempotent(&id).unwrap();
        assert_eq!(s.mul(&r), id);
        assert!(r.mul(&s).is_identity());

        let p = Matrix::from_i64(Rationals, 2, 2, &[1, 0, 0, 0]);
        let (s, r) = split_idempotent(&p).unwrap();
        assert_eq!(s.rows, 2);
        assert_eq!(s.cols, 1);
        assert_eq!(s.mul(&r), p);
        assert!(r.mul(&s).is_identity());
    }

    #[test]
    fn split_half_all_ones() {
        // P = (1/2) * all-ones is a rank-1 idempotent over Q.
        let q = Rationals;
        let half = q.div(&q.one(), &q.from_i64(2));
        let p = Matrix::from_fn(q, 2, 2, |_, _| half.clone());
        let (s, r) = split_idempotent(&p).unwrap();
        assert_eq!(s.cols, 1);
        assert_eq!(s.mul(&r), p);
        assert!(r.mul(&s).is_identity());
    }

    #[test]
    fn split_rejects_non_idempotent() {
        let p = Matrix::from_i64(Rationals, 2, 2, &[1, 1, 0, 1]);
        match split_idempotent(&p) {
            Err(MatrixError::NotIdempotent { .. }) => {}
            other => panic!("expected idempotency error, got {other:?}"),
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_i64(Rationals, 3, 3, &[2, 1, 0, 1, 1, 1, 0, 3, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        let singular = Matrix::from_i64(Rationals, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().is_none());
    }
}
