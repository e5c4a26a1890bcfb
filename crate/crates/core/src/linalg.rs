//! Dense linear algebra over prime fields, crate internal.
//!
//! Vectors are row vectors; a matrix acts on the right, `v -> v * M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::mod_inverse;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct FpMat {
    pub p: BigInt,
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl FpMat {
    pub fn zero(p: &BigInt, rows: usize, cols: usize) -> Self {
        FpMat {
            p: p.clone(),
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(p: &BigInt, n: usize) -> Self {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(p: &BigInt, rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        let data = rows.into_iter().flatten().map(|x| x.mod_floor(p)).collect();
        FpMat {
            p: p.clone(),
            rows: r,
            cols: c,
            data,
        }
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

    pub fn transpose(&self) -> FpMat {
        let mut t = FpMat::zero(&self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zero(&self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = (a * other.get(k, j) + out.get(i, j)).mod_floor(&self.p);
                    *out.get_mut(i, j) = t;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = FpMat::identity(&self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let t = self.get(pr, j).clone();
                *self.get_mut(pr, j) = self.get(r, j).clone();
                *self.get_mut(r, j) = t;
            }
            let inv = mod_inverse(self.get(r, c), &self.p).expect("prime modulus");
            for j in 0..self.cols {
                let t = (self.get(r, j) * &inv).mod_floor(&self.p);
                *self.get_mut(r, j) = t;
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let t = (self.get(i, j) - &f * self.get(r, j)).mod_floor(&self.p);
                    *self.get_mut(i, j) = t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{x : self * x = 0}` as row vectors of length `cols`.
    pub fn right_kernel(&self) -> Vec<Vec<BigInt>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for j in 0..self.cols {
            if pivot_of_col[j].is_some() {
                continue;
            }
            let mut x = vec![BigInt::zero(); self.cols];
            x[j] = BigInt::one();
            for (r, &c) in pivots.iter().enumerate() {
                let v = m.get(r, j);
                if !v.is_zero() {
                    x[c] = (-v).mod_floor(&self.p);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        self.transpose().right_kernel()
    }

    /// Row-space basis (the nonzero rows of the rref).
    pub fn row_basis(&self) -> Vec<Vec<BigInt>> {
        let mut m = self.clone();
        let pivots = m.rref();
        (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
    }

    /// Solve `x * self = target` for each target row; `None` if inconsistent.
    pub fn solve_left(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        // Gaussian elimination on the transpose with an augmented column.
        assert_eq!(target.len(), self.cols);
        let t = self.transpose(); // t: cols x rows, solve t * x^T = target^T
        let mut aug = FpMat::zero(&self.p, t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                *aug.get_mut(i, j) = t.get(i, j).clone();
            }
            *aug.get_mut(i, t.cols) = target[i].mod_floor(&self.p);
        }
        let pivots = aug.rref();
        if pivots.contains(&t.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![BigInt::zero(); self.rows];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, t.cols).clone();
        }
        Some(x)
    }
}

pub(crate) fn vec_mod(v: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    v.iter().map(|x| x.mod_floor(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(p: i64, rows: &[&[i64]]) -> FpMat {
        FpMat::from_rows(
            &BigInt::from(p),
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let m = mat(5, &[&[1, 2, 3], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(m.rank(), 2);
        let id = FpMat::identity(&BigInt::from(7), 3);
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn kernels() {
        let m = mat(5, &[&[1, 2], &[2, 4]]);
        let k = m.right_kernel();
        assert_eq!(k.len(), 1);
        // (x, y) with x + 2y = 0 mod 5
        let x = &k[0];
        let two = BigInt::from(2);
        assert_eq!(
            (&x[0] + &two * &x[1]).mod_floor(&BigInt::from(5)),
            BigInt::zero()
        );
        let lk = m.left_kernel();
        assert_eq!(lk.len(), 1);
        // v0 * row0 + v1 * row1 = 0: (v0 + 2 v1, 2 v0 + 4 v1)
        assert_eq!(
            (&lk[0][0] + &two * &lk[0][1]).mod_floor(&BigInt::from(5)),
            BigInt::zero()
        );
    }

    #[test]
    fn solve_left_works() {
        let m = mat(7, &[&[1, 2, 0], &[0, 1, 1]]);
        // x = (3, 4): 3*(1,2,0) + 4*(0,1,1) = (3, 10, 4) = (3, 3, 4) mod 7
        let sol = m
            .solve_left(&[BigInt::from(3), BigInt::from(3), BigInt::from(4)])
            .unwrap();
        assert_eq!(sol, vec![BigInt::from(3), BigInt::from(4)]);
        assert!(m
            .solve_left(&[BigInt::from(1), BigInt::from(0), BigInt::from(1)])
            .is_none());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let m = mat(5, &[&[1, 1], &[1, 0]]);
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        assert_eq!(m.pow(0), FpMat::identity(&BigInt::from(5), 2));
    }
}
