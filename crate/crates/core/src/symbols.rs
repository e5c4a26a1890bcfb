//! Residue and Hilbert symbols, and p-adic valuations of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::int_valuation;
use crate::error::{Error, Result};
use crate::place::Place;

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive modulus, got {n}"
        )));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut acc = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r: BigInt = &n % 8;
            let r = u8::try_from(&r).unwrap();
            if r == 3 || r == 5 {
                acc = -acc;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4) == BigInt::from(3) && (&n % 4) == BigInt::from(3) {
            acc = -acc;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { acc } else { 0 })
}

/// Legendre symbol `(a / p)` for an odd prime `p`: `0` when `p | a`, `+1` on
/// nonzero squares, `-1` otherwise.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    if p.is_even() || *p < BigInt::from(3) {
        return Err(Error::InvalidArgument(format!(
            "Legendre symbol needs an odd finite prime, got {p}"
        )));
    }
    jacobi(a, p)
}

/// Valuation of a nonzero rational at a place: the usual p-adic valuation at
/// finite primes, and the sign at the real place.
pub fn valuation(a: &BigRational, place: &Place) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::InvalidArgument(
            "valuation of zero is undefined".into(),
        ));
    }
    match place {
        Place::Real => Ok(if a.is_positive() { 1 } else { -1 }),
        Place::Finite(p) => {
            let num = int_valuation(a.numer(), p) as i64;
            let den = int_valuation(a.denom(), p) as i64;
            Ok(num - den)
        }
    }
}

/// Unit part of a nonzero rational at a finite prime: `a / p^{v_p(a)}`.
pub(crate) fn unit_part(a: &BigRational, p: &BigInt) -> BigRational {
    let v = valuation(a, &Place::Finite(p.clone())).expect("nonzero");
    let scale = BigRational::from_integer(p.clone()).pow(-v as i32);
    a * scale
}

/// Residue mod `m` of a rational with denominator coprime to `m`, reduced
/// into `[0, m)`.
pub(crate) fn rational_mod(a: &BigRational, m: &BigInt) -> BigInt {
    let inv = crate::arith::mod_inverse(a.denom(), m).expect("denominator not coprime to modulus");
    (a.numer() * inv).mod_floor(m)
}

fn eps_mod2(u: &BigInt) -> u32 {
    // (u - 1)/2 mod 2 for odd u, i.e. 1 iff u = 3 mod 4
    if u.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        1
    } else {
        0
    }
}

fn omega_mod2(u: &BigInt) -> u32 {
    // (u^2 - 1)/8 mod 2 for odd u, i.e. 1 iff u = 3, 5 mod 8
    let r = u.mod_floor(&BigInt::from(8));
    let r = u8::try_from(&r).unwrap();
    if r == 3 || r == 5 {
        1
    } else {
        0
    }
}

/// Hilbert symbol `(a, b)_p` over the completion at `place` (`-1` meaning the
/// reals); both arguments must be nonzero.
pub fn hilbert(a: &BigRational, b: &BigRational, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument(
            "Hilbert symbol needs nonzero arguments".into(),
        ));
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) if *p == BigInt::from(2) => {
            let two = BigInt::from(2);
            let alpha = valuation(a, place)?;
            let beta = valuation(b, place)?;
            let u = rational_mod(&unit_part(a, &two), &BigInt::from(8));
            let v = rational_mod(&unit_part(b, &two), &BigInt::from(8));
            let e = eps_mod2(&u) * eps_mod2(&v)
                + (alpha.rem_euclid(2) as u32) * omega_mod2(&v)
                + (beta.rem_euclid(2) as u32) * omega_mod2(&u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            let alpha = valuation(a, place)?;
            let beta = valuation(b, place)?;
            let u = rational_mod(&unit_part(a, p), p);
            let v = rational_mod(&unit_part(b, p), p);
            let mut acc = 1i32;
            if alpha % 2 != 0 && beta % 2 != 0 && p.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
                acc = -acc;
            }
            if beta % 2 != 0 {
                acc *= legendre(&u, p)?;
            }
            if alpha % 2 != 0 {
                acc *= legendre(&v, p)?;
            }
            Ok(acc)
        }
    }
}

/// Convenience wrapper for integer arguments.
pub fn hilbert_int(a: &BigInt, b: &BigInt, place: &Place) -> Result<i32> {
    hilbert(
        &BigRational::from_integer(a.clone()),
        &BigRational::from_integer(b.clone()),
        place,
    )
}
