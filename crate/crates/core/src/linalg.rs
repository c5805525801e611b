//! Dense exact matrices and Gaussian elimination over the rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Dense row-major matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Returns `None` on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return None;
        }
        Some(Self {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Permutation matrix sending basis vector `x` to basis vector `perm[x]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (x, &y) in perm.iter().enumerate() {
            m.data[y * n + x] = Rational::one();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * k).collect(),
        }
    }

    /// `self += k * other`
    pub fn add_scaled(&mut self, k: Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if k.is_zero() {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    /// `AB - BA`
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(Rational::one(), rhs);
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(-Rational::one(), rhs);
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.scale(-Rational::one())
    }
}

/// Reduces `rows` in place to reduced row echelon form, scanning columns left
/// to right, and drops zero rows. Returns the pivot column of each remaining
/// row.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..n_cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let k = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= k * p;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows = vectors.to_vec();
    rref(&mut rows).len()
}

/// Incrementally grown basis of a subspace, kept in reduced echelon form.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after eliminating against the current basis.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let k = v[p];
            if k.is_zero() {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= k * b;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the basis; reports whether it was.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= inv;
        }
        for row in self.rows.iter_mut() {
            let k = row[p];
            if k.is_zero() {
                continue;
            }
            for (x, &b) in row.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *x -= k * b;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(xs: &[i128]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_of_dependent_rows() {
        let mut rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        let pivots = rref(&mut rows);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]);
    }

    #[test]
    fn rref_handles_fractions() {
        let mut rows = vec![v(&[3, 1]), v(&[1, 0])];
        rref(&mut rows);
        assert_eq!(rows[0], v(&[1, 0]));
        let mut rows = vec![v(&[3, 1])];
        rref(&mut rows);
        assert_eq!(rows[0], vec![int(1), rat(1, 3)]);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&v(&[1, 1, 0])));
        assert!(b.insert(&v(&[0, 1, 1])));
        assert!(!b.insert(&v(&[1, 2, 1])));
        assert!(b.contains(&v(&[2, 0, -2])));
        assert!(b.insert(&v(&[0, 0, 5])));
        assert_eq!(b.dim(), 3);
        assert!(!b.insert(&v(&[0, 0, 0])));
    }

    #[test]
    fn permutation_matrices_compose_like_maps() {
        // f: 0->1->2->0, g: swap 0 and 1
        let f = Matrix::permutation(&[1, 2, 0]);
        let g = Matrix::permutation(&[1, 0, 2]);
        // (f g)(x) = f(g(x)): 0 -> 1 -> 2
        let fg = &f * &g;
        assert_eq!(fg, Matrix::permutation(&[2, 1, 0]));
        assert_eq!(f.apply(&v(&[1, 0, 0])), v(&[0, 1, 0]));
    }

    #[test]
    fn commutator_of_commuting_matrices_vanishes() {
        let a = Matrix::identity(3).scale(int(4));
        let b = Matrix::from_fn(3, 3, |i, j| int((i * 3 + j) as i128));
        assert!(a.commutator(&b).is_zero());
        assert!(!b.commutator(&b.transpose()).is_zero());
    }
}
