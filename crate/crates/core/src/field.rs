//! Number fields from monic defining polynomials: maximal order, field
//! discriminant, signature.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{factorize, int_valuation, small_primes};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::modpoly::ModPoly;
use crate::order::Order;
use crate::poly::IntPoly;
use crate::sturm::count_real_roots;

/// Default seed for the randomized factorization steps.
pub const DEFAULT_SEED: u64 = 0;

/// A number field `Q[x]/(f)` together with an integral basis of its maximal
/// order, the field discriminant and the signature. Immutable once built.
#[derive(Clone, Debug)]
pub struct NumberField {
    min_poly: IntPoly,
    degree: usize,
    order: Order,
    index: BigInt,
    disc: BigInt,
    disc_factors: Vec<(BigInt, u32)>,
    signature: (usize, usize),
    irreducibility_warning: bool,
}

impl NumberField {
    /// Construct with the default seed.
    pub fn new(min_poly: &IntPoly) -> Result<NumberField> {
        NumberField::new_seeded(min_poly, DEFAULT_SEED)
    }

    /// Construct a field, screening the polynomial for irreducibility and
    /// computing the maximal order by radical-ideal enlargement at every
    /// prime whose square divides the polynomial discriminant.
    pub fn new_seeded(min_poly: &IntPoly, seed: u64) -> Result<NumberField> {
        let Some(degree) = min_poly.degree() else {
            return Err(Error::NonMonic);
        };
        if degree == 0 || !min_poly.is_monic() {
            return Err(Error::NonMonic);
        }
        let disc_poly = min_poly.discriminant();
        if degree > 1 && disc_poly.is_zero() {
            return Err(Error::Reducible("polynomial has a repeated factor".into()));
        }
        let irreducibility_warning = if degree == 1 {
            false
        } else {
            match screen_irreducible(min_poly, &disc_poly, seed)? {
                Screening::Proven => false,
                Screening::Assumed => true,
            }
        };
        let disc_poly_factors = if degree == 1 {
            vec![]
        } else {
            factorize(&disc_poly)
        };
        let mut order = Order::equation_order(min_poly);
        for (q, e) in &disc_poly_factors {
            if *e >= 2 {
                order = order.q_maximal(q);
            }
        }
        let index = order.index();
        let index_sq = &index * &index;
        let (disc, rem) = disc_poly.div_rem(&index_sq);
        assert!(rem.is_zero(), "index squared must divide the discriminant");
        let r = count_real_roots(min_poly);
        assert!((degree - r) % 2 == 0);
        let signature = (r, (degree - r) / 2);
        let disc_factors: Vec<(BigInt, u32)> = disc_poly_factors
            .iter()
            .filter_map(|(q, e)| {
                let vi = int_valuation(&index, q);
                let v = *e - 2 * (vi as u32);
                (v > 0).then(|| (q.clone(), v))
            })
            .collect();
        let field = NumberField {
            min_poly: min_poly.clone(),
            degree,
            order,
            index,
            disc,
            disc_factors,
            signature,
            irreducibility_warning,
        };
        debug_assert_eq!(
            field.disc.sign() == num_bigint::Sign::Minus,
            signature.1 % 2 == 1
        );
        debug_assert_eq!(field.order.trace_gram().det(), field.disc);
        Ok(field)
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Field discriminant.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// Prime factorization of `|disc|`.
    pub fn disc_factors(&self) -> &[(BigInt, u32)] {
        &self.disc_factors
    }

    /// `(r, s)`: real embeddings and conjugate pairs.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// `[O_L : Z[theta]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// Integral basis as rows over a common denominator, in the power basis
    /// of a root of the defining polynomial. Lower-triangular Hermite form,
    /// so the first basis vector is 1.
    pub fn integral_basis(&self) -> (&IntMatrix, &BigInt) {
        (&self.order.num, &self.order.den)
    }

    /// True when irreducibility was neither proven nor disproven during
    /// screening; results are then conditional on irreducibility.
    pub fn irreducibility_warning(&self) -> bool {
        self.irreducibility_warning
    }

    pub(crate) fn order(&self) -> &Order {
        &self.order
    }

    pub fn to_json(&self) -> Value {
        let (num, den) = self.integral_basis();
        json!({
            "min_poly": self.min_poly.coeffs().iter().map(int_json).collect::<Vec<_>>(),
            "degree": self.degree,
            "disc": self.disc.to_string(),
            "signature": [self.signature.0, self.signature.1],
            "basis_num": (0..num.rows())
                .map(|i| num.row(i).iter().map(int_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "basis_den": den.to_string(),
            "index": self.index.to_string(),
            "irreducibility_warning": self.irreducibility_warning,
        })
    }
}

/// Integers as JSON numbers when they fit in i64, decimal strings otherwise.
pub(crate) fn int_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

enum Screening {
    Proven,
    Assumed,
}

/// Irreducibility screening: accept with certainty when the polynomial is
/// irreducible modulo one of the first 25 usable primes; otherwise try to
/// exhibit a rational factor by Hensel lifting a modular factorization and
/// recombining; otherwise accept with a warning.
fn screen_irreducible(f: &IntPoly, disc_poly: &BigInt, seed: u64) -> Result<Screening> {
    let mut tried = 0usize;
    let mut best: Option<(BigInt, Vec<ModPoly>)> = None;
    for q in small_primes(20_000) {
        if tried == 25 {
            break;
        }
        let q = BigInt::from(q);
        if (disc_poly % &q).is_zero() {
            continue;
        }
        tried += 1;
        let fq = ModPoly::from_int_poly(&q, f);
        let factors = fq.factor(seed)?;
        debug_assert!(factors.iter().all(|(_, m)| *m == 1));
        if factors.len() == 1 {
            return Ok(Screening::Proven);
        }
        let flat: Vec<ModPoly> = factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| flat.len() < b.len()) {
            best = Some((q, flat));
        }
    }
    let Some((q, factors)) = best else {
        return Ok(Screening::Assumed);
    };
    if factors.len() > 16 {
        return Ok(Screening::Assumed);
    }
    if let Some(g) = hensel_search(f, &q, &factors) {
        return Err(Error::Reducible(format!("divisible by {g}")));
    }
    Ok(Screening::Proven)
}

/// Zassenhaus recombination: lift the modular factors to a modulus beyond
/// twice the factor-coefficient bound, then test subset products against `f`.
/// Returns a proper divisor if one exists. With all subsets tried, absence of
/// a divisor proves irreducibility.
fn hensel_search(f: &IntPoly, q: &BigInt, factors: &[ModPoly]) -> Option<IntPoly> {
    let n = f.degree().unwrap();
    // Mignotte-style bound on coefficients of monic factors of f.
    let bound: BigInt = (BigInt::one() << n) * (f.norm2_sq().sqrt() + 1);
    let mut big_mod = q.clone();
    while big_mod < (&bound << 1) + 1 {
        big_mod = &big_mod * &big_mod;
    }
    let lifted = hensel_lift_tree(f, q, factors, &big_mod);
    debug_assert_eq!(lifted.len(), factors.len());
    let r = lifted.len();
    // subsets by increasing size; degree <= n/2 suffices
    let mut masks: Vec<u32> = (1..(1u32 << r) - 1).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let deg: usize = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| lifted[i].degree().unwrap())
            .sum();
        if deg == 0 || deg > n / 2 {
            continue;
        }
        let mut prod = ModPoly::one(&big_mod);
        for (i, g) in lifted.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = prod.mul(g);
            }
        }
        let candidate = prod.lift_symmetric();
        if f.divisible_by(&candidate) {
            return Some(candidate);
        }
    }
    None
}

/// Lift a coprime monic factorization of `f` mod `q` to mod `big_mod` by a
/// factor tree of quadratic Hensel steps.
fn hensel_lift_tree(
    f: &IntPoly,
    q: &BigInt,
    factors: &[ModPoly],
    big_mod: &BigInt,
) -> Vec<ModPoly> {
    if factors.len() == 1 {
        return vec![ModPoly::from_int_poly(big_mod, f)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod_mod =
        |fs: &[ModPoly]| -> ModPoly { fs.iter().fold(ModPoly::one(q), |acc, g| acc.mul(g)) };
    let g0 = prod_mod(left);
    let h0 = prod_mod(right);
    let (one, s0, t0) = g0.xgcd(&h0);
    assert!(one.is_one(), "modular factors are coprime");
    let (g, h) = hensel_lift_pair(f, q, &g0, &h0, &s0, &t0, big_mod);
    let mut out = hensel_lift_tree(&g.lift_symmetric(), q, left, big_mod);
    out.extend(hensel_lift_tree(&h.lift_symmetric(), q, right, big_mod));
    out
}


/// Quadratic Hensel lifting of `f = g*h (mod q)` with `s*g + t*h = 1 (mod q)`
/// up to `big_mod` (built by squaring `q`), both factors monic. Returns the
/// pair mod `big_mod`.
fn hensel_lift_pair(
    f: &IntPoly,
    q: &BigInt,
    g0: &ModPoly,
    h0: &ModPoly,
    s0: &ModPoly,
    t0: &ModPoly,
    big_mod: &BigInt,
) -> (ModPoly, ModPoly) {
    let mut m = q.clone();
    let mut g = g0.lift_symmetric();
    let mut h = h0.lift_symmetric();
    let mut s = s0.lift_symmetric();
    let mut t = t0.lift_symmetric();
    while &m < big_mod {
        let m2 = &m * &m;
        let to = |p: &IntPoly| ModPoly::from_int_poly(&m2, p);
        let (gm, hm, sm, tm) = (to(&g), to(&h), to(&s), to(&t));
        let fm = ModPoly::from_int_poly(&m2, f);
        // g* = g + (t e mod g) stays monic; then h is recovered by exact
        // division, which is well defined for a monic divisor.
        let e = fm.sub(&gm.mul(&hm));
        let g_new = gm.add(&tm.mul(&e).rem(&gm));
        let (h_new, rem) = fm.divmod(&g_new);
        assert!(rem.is_zero(), "Hensel step lost the factorization");
        // Bezout update: s* g* + t* h* = 1 mod m^2.
        let b = sm.mul(&g_new).add(&tm.mul(&h_new)).sub(&ModPoly::one(&m2));
        let (c, d) = sm.mul(&b).divmod(&h_new);
        let s_new = sm.sub(&d);
        let t_new = tm.sub(&tm.mul(&b)).sub(&c.mul(&g_new));
        g = g_new.lift_symmetric();
        h = h_new.lift_symmetric();
        s = s_new.lift_symmetric();
        t = t_new.lift_symmetric();
        m = m2;
    }
    (
        ModPoly::from_int_poly(big_mod, &g),
        ModPoly::from_int_poly(big_mod, &h),
    )
}
