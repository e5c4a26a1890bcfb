//! Polynomials over prime fields and their factorization.
//!
//! The factorization pipeline is squarefree decomposition, then
//! distinct-degree splitting, then equal-degree splitting: randomized
//! Cantor-Zassenhaus for odd moduli and the deterministic Berlekamp kernel
//! method for p = 2. Randomized steps draw from an explicit seed so results
//! are reproducible; the returned factor list is canonically sorted and does
//! not depend on the seed.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::linalg::FpMat;
use crate::poly::IntPoly;

/// Dense polynomial over `Z/p`, coefficients reduced into `[0, p)`,
/// constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPoly {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPoly {
    pub fn new<I: IntoIterator<Item = BigInt>>(p: &BigInt, coeffs: I) -> Self {
        assert!(*p >= BigInt::from(2), "modulus must be at least 2");
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(p)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ModPoly {
            p: p.clone(),
            coeffs,
        }
    }

    pub fn from_int_poly(p: &BigInt, f: &IntPoly) -> Self {
        ModPoly::new(p, f.coeffs().iter().cloned())
    }

    pub fn zero(p: &BigInt) -> Self {
        ModPoly::new(p, [])
    }

    pub fn one(p: &BigInt) -> Self {
        ModPoly::new(p, [BigInt::one()])
    }

    pub fn x(p: &BigInt) -> Self {
        ModPoly::new(p, [BigInt::zero(), BigInt::one()])
    }

    pub fn constant(p: &BigInt, c: &BigInt) -> Self {
        ModPoly::new(p, [c.clone()])
    }

    pub fn modulus(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    fn same_field(&self, other: &ModPoly) {
        assert_eq!(self.p, other.p, "mixed moduli");
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(&self.p, (0..n).map(|k| self.coeff(k) + other.coeff(k)))
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(&self.p, (0..n).map(|k| self.coeff(k) - other.coeff(k)))
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(&self.p);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ModPoly::new(&self.p, out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> ModPoly {
        ModPoly::new(&self.p, self.coeffs.iter().map(|a| a * c))
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        self.same_field(divisor);
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() < dd + 1 {
            return (ModPoly::zero(&self.p), self.clone());
        }
        let lc_inv = mod_inverse(&divisor.lc(), &self.p).expect("prime modulus");
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = (&rem[i + dd] * &lc_inv).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            q[i] = c.clone();
            for (k, b) in divisor.coeffs.iter().enumerate() {
                let t = (&rem[i + k] - &c * b).mod_floor(&self.p);
                rem[i + k] = t;
            }
        }
        (ModPoly::new(&self.p, q), ModPoly::new(&self.p, rem))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.divmod(divisor).1
    }

    pub fn make_monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(&self.lc(), &self.p).expect("prime modulus");
        self.mul_scalar(&inv)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        self.same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns monic `g` and `(u, v)` with `u*self + v*other = g`.
    pub fn xgcd(&self, other: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        self.same_field(other);
        let p = &self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inverse(&r0.lc(), p).expect("prime modulus");
        (
            r0.mul_scalar(&inv),
            s0.mul_scalar(&inv),
            t0.mul_scalar(&inv),
        )
    }

    pub fn derivative(&self) -> ModPoly {
        ModPoly::new(
            &self.p,
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
            acc = (acc * x + c).mod_floor(&self.p);
        }
        acc
    }

    /// `self^e mod m`, square and multiply.
    pub fn pow_mod(&self, e: &BigInt, m: &ModPoly) -> ModPoly {
        assert!(!e.is_negative());
        let mut acc = ModPoly::one(&self.p);
        let mut base = self.rem(m);
        let mut e = e.clone();
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Representative with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().cloned())
    }

    /// Representative with coefficients in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self) -> IntPoly {
        let half = &self.p / 2;
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| {
            if c > &half {
                c - &self.p
            } else {
                c.clone()
            }
        }))
    }

    /// Factor into monic irreducibles with multiplicities, sorted by degree
    /// and then coefficients. The leading unit is dropped.
    pub fn factor(&self, seed: u64) -> Result<Vec<(ModPoly, usize)>> {
        if !is_prime(&self.p) {
            return Err(Error::InvalidArgument(format!(
                "modulus {} is not prime",
                self.p
            )));
        }
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "cannot factor the zero polynomial".into(),
            ));
        }
        if self.degree() == Some(0) {
            return Ok(vec![]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let monic = self.make_monic();
        let mut out: Vec<(ModPoly, usize)> = Vec::new();
        for (part, mult) in squarefree_parts(&monic) {
            for (piece, d) in distinct_degree(&part) {
                for g in equal_degree(&piece, d, &mut rng) {
                    out.push((g, mult));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
        });
        debug_assert!({
            let mut prod = ModPoly::constant(&self.p, &self.lc());
            for (g, m) in &out {
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            prod == *self
        });
        Ok(out)
    }

    /// True iff this polynomial is irreducible over `Z/p` (nonconstant input).
    pub fn is_irreducible(&self, seed: u64) -> Result<bool> {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return Ok(false);
        }
        let fs = self.factor(seed)?;
        Ok(fs.len() == 1 && fs[0].1 == 1)
    }
}

/// Squarefree decomposition in characteristic p, handling the `g(x^p)` case.
fn squarefree_parts(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    fn rec(f: &ModPoly, scale: usize, out: &mut Vec<(ModPoly, usize)>) {
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let df = f.derivative();
        if df.is_zero() {
            rec(&pth_root(f), scale * pth(f), out);
            return;
        }
        let mut c = f.gcd(&df);
        let mut w = f.divmod(&c).0;
        let mut i = 1usize;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divmod(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i * scale));
            }
            c = c.divmod(&y).0;
            w = y;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            rec(&pth_root(&c), scale * pth(&c), out);
        }
    }
    fn pth(f: &ModPoly) -> usize {
        usize::try_from(f.modulus()).expect("p fits in usize when x^p divides the degree")
    }
    // f has only exponents divisible by p; over the prime field the
    // coefficientwise p-th root is the identity.
    fn pth_root(f: &ModPoly) -> ModPoly {
        let p = pth(f);
        let coeffs: Vec<BigInt> = f
            .coeffs()
            .iter()
            .enumerate()
            .filter_map(|(k, c)| {
                if k % p == 0 {
                    Some(c.clone())
                } else {
                    debug_assert!(c.is_zero());
                    None
                }
            })
            .collect();
        ModPoly::new(f.modulus(), coeffs)
    }
    let mut out = Vec::new();
    rec(f, 1, &mut out);
    out
}

/// Split a monic squarefree polynomial into products of irreducibles of equal
/// degree; returns `(product, degree)` pairs.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus().clone();
    let mut out = Vec::new();
    let mut v = f.clone();
    let mut h = ModPoly::x(&p).rem(&v);
    let mut d = 0usize;
    while v.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&p, &v);
        let g = v.gcd(&h.sub(&ModPoly::x(&p)));
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), d));
            v = v.divmod(&g).0;
            h = h.rem(&v);
        }
    }
    if v.degree().unwrap_or(0) > 0 {
        let d = v.degree().unwrap();
        out.push((v, d));
    }
    out
}

/// Equal-degree splitting; `f` is monic squarefree with all irreducible
/// factors of degree `d`.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let deg = f.degree().unwrap();
    if deg == d {
        return vec![f.clone()];
    }
    if *f.modulus() == BigInt::from(2) {
        return berlekamp_f2(f);
    }
    cantor_zassenhaus(f, d, rng)
}

fn cantor_zassenhaus(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = f.modulus().clone();
    let exp: BigInt = (p.pow(d as u32) - BigInt::one()) / BigInt::from(2);
    let mut done = Vec::new();
    let mut work = vec![f.clone()];
    let mut rounds = 0usize;
    while let Some(w) = work.pop() {
        if w.degree().unwrap() == d {
            done.push(w);
            continue;
        }
        rounds += 1;
        assert!(rounds < 16_384, "equal-degree splitting failed to converge");
        let a = random_poly(&p, w.degree().unwrap(), rng);
        if a.degree().unwrap_or(0) == 0 {
            work.push(w);
            continue;
        }
        let g = w.gcd(&a);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < w.degree().unwrap() {
            work.push(w.divmod(&g).0);
            work.push(g);
            continue;
        }
        let b = a.pow_mod(&exp, &w);
        let g = w.gcd(&b.sub(&ModPoly::one(&p)));
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < w.degree().unwrap() {
            work.push(w.divmod(&g).0);
            work.push(g);
        } else {
            work.push(w);
        }
    }
    done
}

fn random_poly(p: &BigInt, below_degree: usize, rng: &mut ChaCha8Rng) -> ModPoly {
    let coeffs: Vec<BigInt> = (0..below_degree)
        .map(|_| rng.gen_bigint_range(&BigInt::zero(), p))
        .collect();
    ModPoly::new(p, coeffs)
}

/// Deterministic Berlekamp splitting over F_2 of a monic squarefree input.
fn berlekamp_f2(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.modulus().clone();
    let n = f.degree().unwrap();
    // Frobenius matrix: row i holds x^{2i} mod f.
    let mut rows = Vec::with_capacity(n);
    let x2 = ModPoly::x(&p).mul(&ModPoly::x(&p)).rem(f);
    let mut cur = ModPoly::one(&p);
    for _ in 0..n {
        let mut row = vec![BigInt::zero(); n];
        for (k, c) in cur.coeffs().iter().enumerate() {
            row[k] = c.clone();
        }
        rows.push(row);
        cur = cur.mul(&x2).rem(f);
    }
    let frob = FpMat::from_rows(&p, rows);
    let mut fr_minus_id = frob;
    for i in 0..n {
        let t = (fr_minus_id.get(i, i) - BigInt::one()).mod_floor(&p);
        *fr_minus_id.get_mut(i, i) = t;
    }
    let kernel = fr_minus_id.left_kernel();
    let target = kernel.len();
    let mut factors = vec![f.clone()];
    for v in &kernel {
        if factors.len() == target {
            break;
        }
        let vp = ModPoly::new(&p, v.iter().cloned());
        if vp.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for w in factors {
            let g = w.gcd(&vp);
            let gd = g.degree().unwrap_or(0);
            if gd == 0 || gd == w.degree().unwrap() {
                next.push(w);
            } else {
                next.push(w.divmod(&g).0);
                next.push(g);
            }
        }
        factors = next;
    }
    assert_eq!(factors.len(), target, "Berlekamp splitting incomplete");
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: i64, coeffs: &[i64]) -> ModPoly {
        ModPoly::new(
            &BigInt::from(p),
            coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn factor_examples() {
        // x^2 + 1 mod 5 = (x + 2)(x + 3)
        let f = mp(5, &[1, 0, 1]);
        let fs = f.factor(0).unwrap();
        assert_eq!(fs, vec![(mp(5, &[2, 1]), 1), (mp(5, &[3, 1]), 1)]);
        // x^2 + 1 mod 2 = (x + 1)^2
        let f = mp(2, &[1, 0, 1]);
        assert_eq!(f.factor(0).unwrap(), vec![(mp(2, &[1, 1]), 2)]);
        // x mod 7 is already irreducible
        let f = mp(7, &[0, 1]);
        assert_eq!(f.factor(0).unwrap(), vec![(mp(7, &[0, 1]), 1)]);
    }

    #[test]
    fn composite_modulus_rejected() {
        let f = mp(6, &[1, 1]);
        assert!(matches!(f.factor(0), Err(Error::InvalidArgument(_))));
        assert!(mp(5, &[]).factor(0).is_err());
    }

    /// Exhaustive trial division over small fields, used as the oracle.
    /// Scans candidate divisors in ascending degree, so the first hit is
    /// irreducible; divides it out completely and rescans.
    fn brute_force(f: &ModPoly) -> Vec<(ModPoly, usize)> {
        let p = u64::try_from(f.modulus()).unwrap();
        let monic_of = |code: u64, deg: usize| {
            let mut coeffs: Vec<BigInt> = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                coeffs.push(BigInt::from(c % p));
                c /= p;
            }
            coeffs.push(BigInt::one());
            ModPoly::new(f.modulus(), coeffs)
        };
        let mut rem = f.make_monic();
        let mut out: Vec<(ModPoly, usize)> = Vec::new();
        'outer: while rem.degree().unwrap_or(0) > 0 {
            let rd = rem.degree().unwrap();
            for deg in 1..=rd / 2 {
                for code in 0..p.pow(deg as u32) {
                    let cand = monic_of(code, deg);
                    let mut mult = 0usize;
                    loop {
                        let (q, r) = rem.divmod(&cand);
                        if !r.is_zero() {
                            break;
                        }
                        rem = q;
                        mult += 1;
                    }
                    if mult > 0 {
                        out.push((cand, mult));
                        continue 'outer;
                    }
                }
            }
            out.push((rem.clone(), 1));
            break;
        }
        out.sort_by(|(a, _), (b, _)| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
        });
        out
    }

    #[test]
    fn factor_matches_brute_force_oracle() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2i64, 3, 5] {
            for _ in 0..60 {
                let deg = rng.gen_range(1..=4);
                let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
                coeffs.push(1);
                let f = mp(p, &coeffs);
                assert_eq!(f.factor(0).unwrap(), brute_force(&f), "f = {f:?}");
            }
        }
    }

    #[test]
    fn product_of_factors_reproduces_input() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let primes = [2i64, 3, 5, 7, 13, 101];
        for i in 0..500 {
            let p = primes[i % primes.len()];
            let deg = rng.gen_range(1..=8);
            let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                coeffs[deg as usize] = 1;
            }
            let f = mp(p, &coeffs);
            if f.is_zero() || f.degree() == Some(0) {
                continue;
            }
            let fs = f.factor(i as u64).unwrap();
            let mut prod = ModPoly::constant(f.modulus(), &f.lc());
            for (g, m) in &fs {
                assert!(g.lc().is_one());
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f);
        }
    }

    #[test]
    fn xgcd_bezout() {
        let a = mp(7, &[1, 0, 1]);
        let b = mp(7, &[3, 1]);
        let (g, u, v) = a.xgcd(&b);
        assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
        assert!(g.is_one()); // x^2+1 and x+3 coprime mod 7: (-3)^2+1 = 10 = 3 != 0
    }

    #[test]
    fn big_prime_modulus() {
        // behaves sensibly for a modulus beyond machine words
        let p = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        // p composite: rejected
        let f = ModPoly::new(&p, vec![BigInt::one(), BigInt::one()]);
        assert!(f.factor(0).is_err());
        let p = BigInt::from(1_000_000_007u64);
        let f = ModPoly::new(&p, vec![BigInt::from(-1), BigInt::zero(), BigInt::one()]);
        let fs = f.factor(0).unwrap();
        assert_eq!(fs.len(), 2); // x^2 - 1 = (x-1)(x+1)
    }
}
