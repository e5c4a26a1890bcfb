//! Orders in a number field, crate internal.
//!
//! An order is a full-rank subring of the maximal order containing the
//! equation order `Z[theta]`. We keep its basis as an integer matrix over a
//! common denominator, rows expressing basis vectors in the power basis, in
//! the lower-triangular Hermite form (so the first basis vector is 1 whenever
//! the order contains it, which it always does).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::FpMat;
use crate::matrix::{IntMatrix, RatMat};
use crate::poly::IntPoly;

/// `theta^k` for `k = 0..=upto` as integer vectors in the power basis,
/// reduced by the monic defining polynomial.
pub(crate) fn theta_powers(f: &IntPoly, upto: usize) -> Vec<Vec<BigInt>> {
    let n = f.degree().expect("nonconstant polynomial");
    assert!(f.is_monic());
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(upto + 1);
    for k in 0..=upto {
        if k < n {
            let mut row = vec![BigInt::zero(); n];
            row[k] = BigInt::one();
            rows.push(row);
        } else {
            // theta^k = theta * theta^{k-1}, reduced via theta^n = -(low terms)
            let prev = rows[k - 1].clone();
            let mut row = vec![BigInt::zero(); n];
            for i in 0..n - 1 {
                row[i + 1] = prev[i].clone();
            }
            let head = prev[n - 1].clone();
            if !head.is_zero() {
                for (i, c) in f.coeffs()[..n].iter().enumerate() {
                    row[i] -= &head * c;
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Power sums `tr(theta^k)` for `k = 0..=upto`, by Newton's identities.
pub(crate) fn power_sums(f: &IntPoly, upto: usize) -> Vec<BigInt> {
    let n = f.degree().expect("nonconstant polynomial");
    assert!(f.is_monic());
    // a[i] = coefficient of x^{n-i}
    let a = |i: usize| -> BigInt {
        if i == 0 {
            BigInt::one()
        } else {
            f.coeff(n - i)
        }
    };
    let mut p: Vec<BigInt> = vec![BigInt::from(n as i64)];
    for k in 1..=upto {
        let mut s = BigInt::zero();
        for i in 1..k.min(n + 1) {
            s += a(i) * &p[k - i];
        }
        if k <= n {
            s += BigInt::from(k as i64) * a(k);
        }
        p.push(-s);
    }
    p
}

#[derive(Clone, Debug)]
pub(crate) struct Order {
    pub f: IntPoly,
    pub n: usize,
    pub num: IntMatrix,
    pub den: BigInt,
    basis_inv: RatMat,
    /// w_i * w_j in basis coordinates; integrality is what makes this a ring.
    times: Vec<Vec<Vec<BigInt>>>,
}

impl Order {
    pub fn equation_order(f: &IntPoly) -> Order {
        let n = f.degree().expect("nonconstant polynomial");
        Order::from_basis(f, IntMatrix::identity(n), BigInt::one())
    }

    /// Build an order from a basis `num / den` of its lattice; the rows must
    /// span a ring. Panics if they do not (internal misuse).
    pub fn from_basis(f: &IntPoly, num: IntMatrix, den: BigInt) -> Order {
        let n = f.degree().expect("nonconstant polynomial");
        assert_eq!(num.rows(), n);
        assert_eq!(num.cols(), n);
        // normalize: Hermite form, common factor of (num, den) removed
        let mut num = num.hnf_lower();
        let mut den = den;
        if den.is_negative() {
            den = -den;
        }
        let mut g = den.clone();
        for i in 0..n {
            for j in 0..n {
                g = g.gcd(num.get(i, j));
            }
        }
        if !g.is_one() && !g.is_zero() {
            for i in 0..n {
                for j in 0..n {
                    let t = num.get(i, j) / &g;
                    *num.get_mut(i, j) = t;
                }
            }
            den /= &g;
        }
        let basis = RatMat::scaled(&num, &den);
        let basis_inv = basis.inverse().expect("basis must have full rank");
        let powers = theta_powers(f, 2 * n - 2);
        // structure constants
        let den2 = BigRational::from_integer(&den * &den);
        let mut times = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                // convolution of rows i and j, then reduce through theta powers
                let mut acc = vec![BigRational::zero(); n];
                for (a, ca) in num.row(i).iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in num.row(j).iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let c = ca * cb;
                        for (t, pt) in powers[a + b].iter().enumerate() {
                            if !pt.is_zero() {
                                acc[t] += BigRational::from_integer(&c * pt);
                            }
                        }
                    }
                }
                for x in acc.iter_mut() {
                    *x /= den2.clone();
                }
                let coords = basis_inv.row_mul(&acc);
                let ints: Vec<BigInt> = coords
                    .into_iter()
                    .map(|c| {
                        assert!(c.is_integer(), "basis does not span a ring");
                        c.to_integer()
                    })
                    .collect();
                times[i][j] = ints.clone();
                times[j][i] = ints;
            }
        }
        Order {
            f: f.clone(),
            n,
            num,
            den,
            basis_inv,
            times,
        }
    }

    /// The module index `[O : Z[theta]] = den^n / det(num)`, a positive integer.
    pub fn index(&self) -> BigInt {
        let det = self.num.det();
        assert!(det.is_positive());
        let dn = self.den.pow(self.n as u32);
        let (q, r) = dn.div_rem(&det);
        assert!(r.is_zero(), "order does not contain the equation order");
        q
    }

    /// Product of two elements given in basis coordinates, mod `q`.
    pub fn mul_mod(&self, a: &[BigInt], b: &[BigInt], q: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.n];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = (ca * cb).mod_floor(q);
                if c.is_zero() {
                    continue;
                }
                for (t, w) in self.times[i][j].iter().enumerate() {
                    if !w.is_zero() {
                        out[t] += &c * w;
                    }
                }
            }
        }
        for x in out.iter_mut() {
            *x = x.mod_floor(q);
        }
        out
    }

    /// Trace form Gram matrix `tr(w_i w_j)` on the order basis; entries are
    /// integers because traces of algebraic integers are.
    pub fn trace_gram(&self) -> IntMatrix {
        let sums = power_sums(&self.f, 2 * self.n - 2);
        let den2 = &self.den * &self.den;
        let mut g = IntMatrix::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..=i {
                let mut acc = BigInt::zero();
                for (a, ca) in self.num.row(i).iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in self.num.row(j).iter().enumerate() {
                        if !cb.is_zero() {
                            acc += ca * cb * &sums[a + b];
                        }
                    }
                }
                let (v, r) = acc.div_rem(&den2);
                assert!(r.is_zero(), "trace Gram entry not integral");
                *g.get_mut(i, j) = v.clone();
                *g.get_mut(j, i) = v;
            }
        }
        g
    }

    /// Basis of the radical of `O/qO` as row vectors over `F_q`.
    ///
    /// For q <= n the radical is the kernel of a power of the q-th power map
    /// (which is F_q-linear on O/qO); for q > n the trace form detects it.
    pub fn radical_mod(&self, q: &BigInt) -> Vec<Vec<BigInt>> {
        let n = self.n;
        if *q <= BigInt::from(n as i64) {
            let qe = u32::try_from(q).expect("small prime");
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                rows.push(self.pow_mod(&e, qe, q));
            }
            let frob = FpMat::from_rows(q, rows);
            let mut k = 0u32;
            let mut qk = BigInt::one();
            while qk < BigInt::from(n as i64) {
                qk *= q;
                k += 1;
            }
            frob.pow(k).left_kernel()
        } else {
            let g = self.trace_gram();
            let rows = (0..n).map(|i| g.row(i).to_vec()).collect();
            FpMat::from_rows(q, rows).left_kernel()
        }
    }

    fn pow_mod(&self, a: &[BigInt], e: u32, q: &BigInt) -> Vec<BigInt> {
        let mut acc = crate::linalg::vec_mod(&self.one_coords(), q);
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, q);
            }
            base = self.mul_mod(&base, &base, q);
            e >>= 1;
        }
        acc
    }

    /// Coordinates w.r.t. the order basis of a vector given in the power
    /// basis (rational); panics if not in the order lattice over Z localized
    /// away from nothing -- caller must pass order elements.
    fn coords_of_power_vec(&self, v: &[BigRational]) -> Vec<BigInt> {
        let coords = self.basis_inv.row_mul(v);
        coords
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "element not in order");
                c.to_integer()
            })
            .collect()
    }

    /// Coordinates of the multiplicative identity.
    pub fn one_coords(&self) -> Vec<BigInt> {
        let mut v = vec![BigRational::zero(); self.n];
        v[0] = BigRational::one();
        self.coords_of_power_vec(&v)
    }

    /// One enlargement step at `q`: returns the multiplier ring of the
    /// radical ideal, and whether it is strictly larger.
    pub fn enlarge_at(&self, q: &BigInt) -> (Order, bool) {
        let n = self.n;
        let radical = self.radical_mod(q);
        // Z-basis of the radical ideal I (contains qO), in basis coordinates.
        let mut stack: Vec<Vec<BigInt>> = radical;
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = q.clone();
            stack.push(r);
        }
        let u = IntMatrix::from_rows(stack).hnf();
        debug_assert!((n..u.rows()).all(|i| u.row(i).iter().all(|x| x.is_zero())));
        let u = IntMatrix::from_rows((0..n).map(|i| u.row(i).to_vec()).collect());
        let u_inv = RatMat::from_int(&u)
            .inverse()
            .expect("radical ideal has full rank");
        // x in O with x * I <= q I, i.e. the kernel of multiplication into
        // I/qI, gives O' = (1/q) T.
        let mut big_rows: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n * n); n];
        for j in 0..n {
            let gamma = u.row(j);
            for i in 0..n {
                // w_i * gamma in basis coordinates
                let mut prod = vec![BigInt::zero(); n];
                for (l, cl) in gamma.iter().enumerate() {
                    if cl.is_zero() {
                        continue;
                    }
                    for (t, w) in self.times[i][l].iter().enumerate() {
                        if !w.is_zero() {
                            prod[t] += cl * w;
                        }
                    }
                }
                // coordinates w.r.t. the ideal basis
                let prod_rat: Vec<BigRational> = prod
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let y = u_inv.row_mul(&prod_rat);
                for c in y {
                    assert!(c.is_integer(), "radical is not an ideal");
                    big_rows[i].push(c.to_integer());
                }
            }
        }
        let kernel = FpMat::from_rows(q, big_rows).left_kernel();
        let mut stack = kernel;
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = q.clone();
            stack.push(r);
        }
        let t = IntMatrix::from_rows(stack).hnf();
        debug_assert!((n..t.rows()).all(|i| t.row(i).iter().all(|x| x.is_zero())));
        let t = IntMatrix::from_rows((0..n).map(|i| t.row(i).to_vec()).collect());
        let grew = t.det().abs() != q.pow(n as u32);
        if !grew {
            return (self.clone(), false);
        }
        // O' basis in power coordinates: (T / q) * (num / den)
        let num = t.mul(&self.num);
        let den = q * &self.den;
        (Order::from_basis(&self.f, num, den), true)
    }

    /// Enlarge until `q`-maximal.
    pub fn q_maximal(mut self, q: &BigInt) -> Order {
        for _ in 0..64 * self.n {
            let (next, grew) = self.enlarge_at(q);
            self = next;
            if !grew {
                return self;
            }
        }
        panic!("maximal order iteration failed to terminate");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPoly;

    #[test]
    fn theta_power_reduction() {
        // f = x^2 - 5: theta^2 = 5, theta^3 = 5 theta
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        let p = theta_powers(&f, 3);
        assert_eq!(p[2], vec![BigInt::from(5), BigInt::zero()]);
        assert_eq!(p[3], vec![BigInt::zero(), BigInt::from(5)]);
    }

    #[test]
    fn newton_sums() {
        // x^2 - 5: tr(1) = 2, tr(theta) = 0, tr(theta^2) = 10
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        assert_eq!(
            power_sums(&f, 2),
            vec![BigInt::from(2), BigInt::zero(), BigInt::from(10)]
        );
        // x^3 - x - 1: p1 = 0, p2 = 2, p3 = 3, p4 = 2
        let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
        assert_eq!(
            power_sums(&f, 4),
            vec![
                BigInt::from(3),
                BigInt::zero(),
                BigInt::from(2),
                BigInt::from(3),
                BigInt::from(2)
            ]
        );
    }

    #[test]
    fn equation_order_gram() {
        let f = IntPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        let o = Order::equation_order(&f);
        let g = o.trace_gram();
        assert_eq!(g.det(), BigInt::from(-4));
        assert_eq!(*g.get(0, 0), BigInt::from(2));
        assert_eq!(*g.get(1, 1), BigInt::from(-2));
        assert_eq!(*g.get(0, 1), BigInt::zero());
    }

    #[test]
    fn enlarging_x2_minus_5_at_2() {
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        let o = Order::equation_order(&f).q_maximal(&BigInt::from(2));
        assert_eq!(o.index(), BigInt::from(2));
        assert_eq!(o.den, BigInt::from(2));
        // basis {1, (1 + theta)/2}
        assert_eq!(
            o.num,
            IntMatrix::from_rows(vec![
                vec![BigInt::from(2), BigInt::zero()],
                vec![BigInt::one(), BigInt::one()],
            ])
        );
        assert_eq!(o.trace_gram().det(), BigInt::from(5));
    }

    #[test]
    fn already_maximal_stays() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let o = Order::equation_order(&f).q_maximal(&BigInt::from(2));
        assert_eq!(o.index(), BigInt::one());
    }
}
