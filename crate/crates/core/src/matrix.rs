//! Exact integer matrices: Hermite normal form, fraction-free determinants,
//! plus a crate-internal rational matrix for basis arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len(), "dimension mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    *out.get_mut(i, j) += t;
                }
            }
        }
        out
    }

    /// Determinant by the Bareiss fraction-free elimination. Square input only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &t / &prev; // exact by Bareiss
                }
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Row Hermite normal form: same row lattice, row echelon shape with
    /// positive pivots and entries above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> IntMatrix {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            // Euclidean reduction within this column, below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for i in pivot_row..rows {
                    if !m[i][col].is_zero()
                        && best.is_none_or(|b| m[i][col].abs() < m[b][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                m.swap(pivot_row, b);
                let mut done = true;
                let pivot = m[pivot_row][col].clone();
                for i in pivot_row + 1..rows {
                    if m[i][col].is_zero() {
                        continue;
                    }
                    let q = m[i][col].div_floor(&pivot);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &q * &m[pivot_row][j];
                            m[i][j] -= t;
                        }
                    }
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if m[pivot_row][col].is_zero() {
                continue;
            }
            if m[pivot_row][col].is_negative() {
                for j in 0..cols {
                    m[pivot_row][j] = -m[pivot_row][j].clone();
                }
            }
            // Reduce the entries above the pivot into [0, pivot).
            let pivot = m[pivot_row][col].clone();
            for i in 0..pivot_row {
                let q = m[i][col].div_floor(&pivot);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &m[pivot_row][j];
                        m[i][j] -= t;
                    }
                }
            }
            pivot_row += 1;
        }
        IntMatrix::from_rows(m)
    }

    /// Hermite form in the mirrored convention: lower triangular for full-rank
    /// square lattices, pivots on the diagonal in ascending column order. Used
    /// for order bases so that the first basis vector is the smallest positive
    /// multiple of 1.
    pub(crate) fn hnf_lower(&self) -> IntMatrix {
        let flipped = IntMatrix::from_rows(
            (0..self.rows)
                .map(|i| self.row(i).iter().rev().cloned().collect())
                .collect(),
        );
        let h = flipped.hnf();
        IntMatrix::from_rows(
            (0..h.rows)
                .rev()
                .map(|i| h.row(i).iter().rev().cloned().collect())
                .collect(),
        )
    }
}

/// Rational matrix used internally for change-of-basis computations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct RatMat {
    pub rows: Vec<Vec<BigRational>>,
}

impl RatMat {
    pub fn from_int(m: &IntMatrix) -> Self {
        RatMat {
            rows: (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(|x| BigRational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Basis matrix `num / den`.
    pub fn scaled(num: &IntMatrix, den: &BigInt) -> Self {
        let d = BigRational::from_integer(den.clone());
        let mut m = RatMat::from_int(num);
        for row in &mut m.rows {
            for x in row.iter_mut() {
                *x /= d.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    #[cfg(test)]
    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.ncols(), other.nrows());
        let n = self.nrows();
        let m = other.ncols();
        let mut out = vec![vec![BigRational::zero(); m]; n];
        for i in 0..n {
            for (k, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let t = a * &other.rows[k][j];
                    out[i][j] += t;
                }
            }
        }
        RatMat { rows: out }
    }

    /// Row vector times matrix.
    pub fn row_mul(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.nrows());
        let mut out = vec![BigRational::zero(); self.ncols()];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.ncols() {
                let t = a * &self.rows[k][j];
                out[j] += t;
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMat> {
        let n = self.nrows();
        assert_eq!(n, self.ncols());
        let mut a = self.rows.clone();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&i| !a[i][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= p.clone();
                inv[col][j] /= p.clone();
            }
            for i in 0..n {
                if i == col || a[i][col].is_zero() {
                    continue;
                }
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[i][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[i][j] -= t;
                }
            }
        }
        Ok(RatMat { rows: inv })
    }
}
