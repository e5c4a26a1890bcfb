//! Univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::parse::render_poly;

/// Dense integer polynomial, constant term first. The zero polynomial is the
/// empty coefficient vector; `degree()` returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs([c])
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k)),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c))
    }

    /// Quotient when `divisor` divides `self` exactly over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (d, r) = self.pseudo_like_div(divisor)?;
        if r.is_zero() {
            Some(d)
        } else {
            None
        }
    }

    /// Long division over the rationals, returned only when the quotient and
    /// remainder are integral at every step (sufficient for monic divisors and
    /// for exact-division checks).
    fn pseudo_like_div(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = divisor.degree()?;
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return Some((IntPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let head = rem[i + dd].clone();
            if head.is_zero() {
                continue;
            }
            let (c, r) = head.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            q[i] = c.clone();
            for (k, b) in divisor.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[i + k] -= t;
            }
        }
        Some((IntPoly::from_coeffs(q), IntPoly::from_coeffs(rem)))
    }

    /// true iff `divisor` divides `self` over the integers.
    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        self.div_exact(divisor).is_some()
    }

    /// Resultant of `self` and `other` as the determinant of the Sylvester
    /// matrix (fraction-free; degrees here are small).
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (Some(n), Some(m)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        if n == 0 {
            return self.lc().pow(m as u32);
        }
        if m == 0 {
            return other.lc().pow(n as u32);
        }
        let size = n + m;
        let mut s = IntMatrix::zero(size, size);
        for i in 0..m {
            for (k, c) in self.coeffs.iter().enumerate() {
                *s.get_mut(i, i + n - k) = c.clone();
            }
        }
        for i in 0..n {
            for (k, c) in other.coeffs.iter().enumerate() {
                *s.get_mut(m + i, i + m - k) = c.clone();
            }
        }
        s.det()
    }

    /// Discriminant `(-1)^{n(n-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::zero();
        };
        if n == 0 {
            return BigInt::zero();
        }
        if n == 1 {
            return BigInt::one();
        }
        let res = self.resultant(&self.derivative());
        let signed = if (n * (n - 1) / 2) % 2 == 1 {
            -res
        } else {
            res
        };
        let (q, r) = signed.div_rem(&self.lc());
        debug_assert!(r.is_zero());
        q
    }

    /// Squared l2 norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c))
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(self))
    }
}
