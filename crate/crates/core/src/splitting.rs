//! Decomposition type of a rational prime in the maximal order.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::field::{NumberField, DEFAULT_SEED};
use crate::linalg::FpMat;
use crate::modpoly::ModPoly;
use crate::place::Place;
use crate::poly::IntPoly;

/// The multiset of `(e, f)` pairs over a place, canonically sorted. At the
/// real place a real embedding counts as `(1, 1)` and a conjugate pair as
/// `(2, 1)`, which makes every downstream invariant formula uniform.
#[derive(Clone, Debug)]
pub struct SplittingType {
    place: Place,
    pairs: Vec<(u32, u32)>,
    warning: bool,
}

impl PartialEq for SplittingType {
    fn eq(&self, other: &Self) -> bool {
        self.place == other.place && self.pairs == other.pairs
    }
}

impl Eq for SplittingType {}

impl SplittingType {
    pub(crate) fn new(place: Place, mut pairs: Vec<(u32, u32)>, warning: bool) -> Self {
        pairs.sort();
        SplittingType {
            place,
            pairs,
            warning,
        }
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    /// `(e_i, f_i)` sorted ascending.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Unresolved-irreducibility flag propagated from the field.
    pub fn warning(&self) -> bool {
        self.warning
    }

    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|(e, f)| e * f).sum()
    }

    /// Number of primes above the place.
    pub fn num_primes(&self) -> usize {
        self.pairs.len()
    }

    pub fn e_sum(&self) -> u32 {
        self.pairs.iter().map(|(e, _)| e).sum()
    }

    pub fn f_sum(&self) -> u32 {
        self.pairs.iter().map(|(_, f)| f).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.pairs.iter().all(|(e, _)| *e == 1)
    }

    pub fn is_totally_split(&self) -> bool {
        self.pairs.iter().all(|&(e, f)| e == 1 && f == 1)
    }

    /// Wild ramification: the (finite) residue characteristic divides some
    /// ramification index. Always false at the real place.
    pub fn is_wild(&self) -> bool {
        match &self.place {
            Place::Real => false,
            Place::Finite(p) => self
                .pairs
                .iter()
                .any(|(e, _)| (BigInt::from(*e) % p).is_zero()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "p": crate::field::int_json(&self.place.to_bigint()),
            "pairs": self.pairs.iter().map(|(e, f)| json!([e, f])).collect::<Vec<_>>(),
        });
        if self.warning {
            v["warning"] = json!(true);
        }
        v
    }
}

/// Dedekind's criterion: does `p` divide the index `[O_L : Z[theta]]` of the
/// equation order of this (monic, irreducible) polynomial?
pub fn dedekind_index_divides(poly: &IntPoly, p: &BigInt) -> Result<bool> {
    if !poly.is_monic() || poly.degree().is_none_or(|d| d == 0) {
        return Err(Error::NonMonic);
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let fp = ModPoly::from_int_poly(p, poly);
    let factors = fp.factor(DEFAULT_SEED)?;
    if factors.iter().all(|(_, m)| *m == 1) {
        return Ok(false);
    }
    let mut g_bar = ModPoly::one(p);
    let mut h_bar = ModPoly::one(p);
    for (gi, e) in &factors {
        g_bar = g_bar.mul(gi);
        for _ in 1..*e {
            h_bar = h_bar.mul(gi);
        }
    }
    let g = g_bar.lift();
    let h = h_bar.lift();
    let gh = &g * &h;
    let diff = &gh - poly;
    let f_big = IntPoly::from_coeffs(diff.coeffs().iter().map(|c| {
        let (q, r) = c.div_rem(p);
        debug_assert!(r.is_zero());
        q
    }));
    let f_bar = ModPoly::from_int_poly(p, &f_big);
    let d = f_bar.gcd(&g_bar).gcd(&h_bar);
    Ok(d.degree().unwrap_or(0) > 0)
}

/// Splitting type of a place in the field, with the default seed.
pub fn split_prime(field: &NumberField, place: &Place) -> Result<SplittingType> {
    split_prime_seeded(field, place, DEFAULT_SEED)
}

/// Splitting type of a place. Finite primes not dividing the index factor the
/// defining polynomial over `F_p`; primes dividing the index decompose the
/// algebra `O/pO` directly.
pub fn split_prime_seeded(field: &NumberField, place: &Place, seed: u64) -> Result<SplittingType> {
    let warning = field.irreducibility_warning();
    match place {
        Place::Real => {
            let (r, s) = field.signature();
            let mut pairs = vec![(1, 1); r];
            pairs.extend(std::iter::repeat_n((2, 1), s));
            Ok(SplittingType::new(Place::Real, pairs, warning))
        }
        Place::Finite(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            if (field.index() % p).is_zero() {
                return split_prime_general(field, p, seed);
            }
            let fp = ModPoly::from_int_poly(p, field.min_poly());
            let factors = fp.factor(seed)?;
            let pairs = factors
                .iter()
                .map(|(g, e)| (*e as u32, g.degree().unwrap() as u32))
                .collect();
            let st = SplittingType::new(place.clone(), pairs, warning);
            assert_eq!(st.degree() as usize, field.degree());
            Ok(st)
        }
    }
}

/// The general path: decompose `O/pO` by splitting its semisimple quotient
/// into fields, lifting the idempotents, and reading each local dimension.
/// Valid for every finite prime, required when `p` divides the index.
pub fn split_prime_general(field: &NumberField, p: &BigInt, seed: u64) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let order = field.order();
    let n = field.degree();
    let radical = order.radical_mod(p);

    // Reduction mod the radical: rref the radical rows once, then eliminate
    // pivot coordinates from any vector to get a canonical coset
    // representative of A/N.
    let mut rad = FpMat::from_rows(p, radical.clone());
    let pivots = rad.rref();
    let reduce = |v: &[BigInt]| -> Vec<BigInt> {
        let mut v = crate::linalg::vec_mod(v, p);
        for (r, &c) in pivots.iter().enumerate() {
            if !v[c].is_zero() {
                let f = v[c].clone();
                for j in 0..n {
                    v[j] = (&v[j] - &f * rad.get(r, j)).mod_floor(p);
                }
            }
        }
        v
    };
    let mul_reduced = |a: &[BigInt], b: &[BigInt]| reduce(&order.mul_mod(a, b, p));

    let one = crate::linalg::vec_mod(&order.one_coords(), p);
    let s_basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            v
        })
        .collect();

    // Split the semisimple quotient into fields.
    struct Component {
        one: Vec<BigInt>,
        basis: Vec<Vec<BigInt>>,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut fields: Vec<Component> = Vec::new();
    let mut work = vec![Component {
        one: reduce(&one),
        basis: s_basis,
    }];
    let mut attempts_left = 200usize * n.max(1);
    while let Some(c) = work.pop() {
        let dim = c.basis.len();
        assert!(dim > 0);
        if dim == 1 {
            fields.push(c);
            continue;
        }
        // candidate elements: the component basis first, then random
        // combinations of it
        let mut is_field = false;
        let mut subs: Option<Vec<Component>> = None;
        let mut k = 0usize;
        while !is_field && subs.is_none() {
            assert!(attempts_left > 0, "algebra decomposition did not converge");
            attempts_left -= 1;
            let x: Vec<BigInt> = if k < dim {
                c.basis[k].clone()
            } else {
                let mut acc = vec![BigInt::zero(); n];
                for b in &c.basis {
                    let r = rng.gen_bigint_range(&BigInt::zero(), p);
                    for j in 0..n {
                        acc[j] = (&acc[j] + &r * &b[j]).mod_floor(p);
                    }
                }
                acc
            };
            k += 1;
            // minimal polynomial of x in the component
            let mut powers: Vec<Vec<BigInt>> = vec![c.one.clone()];
            let min_poly: ModPoly = loop {
                let last = powers.last().unwrap();
                let next = mul_reduced(last, &x);
                let stack = FpMat::from_rows(p, powers.clone());
                if let Some(coeffs) = stack.solve_left(&next) {
                    let mut cs: Vec<BigInt> = coeffs.iter().map(|c| (-c).mod_floor(p)).collect();
                    cs.push(BigInt::one());
                    break ModPoly::new(p, cs);
                }
                powers.push(next);
            };
            let deg = min_poly.degree().unwrap();
            let factors = min_poly.factor(seed)?;
            assert!(
                factors.iter().all(|(_, m)| *m == 1),
                "quotient by the radical is not semisimple"
            );
            if factors.len() == 1 {
                if deg == dim {
                    is_field = true;
                }
                // irreducible but too small: try another element
                continue;
            }
            // proper split: Chinese-remainder idempotents evaluated at x
            let mut found = Vec::new();
            for (mj, _) in &factors {
                let uj = {
                    let (q, r) = min_poly.divmod(mj);
                    debug_assert!(r.is_zero());
                    q
                };
                let (g, w, _) = uj.xgcd(mj);
                assert!(g.is_one());
                let idem_poly = uj.mul(&w);
                // evaluate at x inside the component (Horner)
                let mut acc = vec![BigInt::zero(); n];
                for coeff in idem_poly.coeffs().iter().rev() {
                    acc = mul_reduced(&acc, &x);
                    for j in 0..n {
                        acc[j] = (&acc[j] + coeff * &c.one[j]).mod_floor(p);
                    }
                }
                let eps = reduce(&acc);
                let sub_basis: Vec<Vec<BigInt>> = {
                    let rows: Vec<Vec<BigInt>> =
                        c.basis.iter().map(|b| mul_reduced(&eps, b)).collect();
                    FpMat::from_rows(p, rows).row_basis()
                };
                assert!(!sub_basis.is_empty());
                found.push(Component {
                    one: eps,
                    basis: sub_basis,
                });
            }
            subs = Some(found);
        }
        if is_field {
            fields.push(c);
        } else {
            work.extend(subs.unwrap());
        }
    }

    // Lift each primitive idempotent to O/pO and read off the local length.
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for comp in &fields {
        let f_deg = comp.basis.len();
        let mut eps = comp.one.clone();
        let mut ok = false;
        for _ in 0..12 {
            let sq = order.mul_mod(&eps, &eps, p);
            if sq == eps {
                ok = true;
                break;
            }
            // Newton: 3 e^2 - 2 e^3
            let cube = order.mul_mod(&sq, &eps, p);
            for j in 0..n {
                let t = (BigInt::from(3) * &sq[j] - BigInt::from(2) * &cube[j]).mod_floor(p);
                eps[j] = t;
            }
        }
        assert!(ok, "idempotent lifting did not converge");
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut ej = vec![BigInt::zero(); n];
                ej[j] = BigInt::one();
                order.mul_mod(&eps, &ej, p)
            })
            .collect();
        let local_dim = FpMat::from_rows(p, rows).rank();
        assert_eq!(
            local_dim % f_deg,
            0,
            "residue degree must divide local length"
        );
        pairs.push(((local_dim / f_deg) as u32, f_deg as u32));
    }
    let st = SplittingType::new(
        Place::Finite(p.clone()),
        pairs,
        field.irreducibility_warning(),
    );
    assert_eq!(
        st.degree() as usize,
        n,
        "local degrees must sum to the field degree"
    );
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn field(s: &str) -> NumberField {
        NumberField::new(&parse_poly(s).unwrap()).unwrap()
    }

    fn split(s: &str, p: i64) -> Vec<(u32, u32)> {
        let f = field(s);
        split_prime(&f, &Place::finite(p)).unwrap().pairs().to_vec()
    }

    #[test]
    fn dedekind_examples() {
        let d = |s: &str, p: i64| {
            dedekind_index_divides(&parse_poly(s).unwrap(), &BigInt::from(p)).unwrap()
        };
        assert!(d("x^2-5", 2));
        assert!(!d("x^2+1", 5));
        assert!(!d("x^2+1", 2));
        assert!(!d("x^8-3", 2));
        assert!(!d("x^8-3", 3));
    }

    #[test]
    fn split_examples() {
        assert_eq!(split("x^2+1", 5), vec![(1, 1), (1, 1)]);
        assert_eq!(split("x^8-3", 2), vec![(8, 1)]);
        assert_eq!(split("x^8-3", 3), vec![(8, 1)]);
        assert_eq!(split("x^2-5", 2), vec![(1, 2)]); // the maximal order is inert at 2
        assert_eq!(split("x^2+1", 2), vec![(2, 1)]);
        assert_eq!(split("x^2+1", 3), vec![(1, 2)]);
    }

    #[test]
    fn real_place_from_signature() {
        let f = field("x^3-3");
        let st = split_prime(&f, &Place::Real).unwrap();
        assert_eq!(st.pairs(), &[(1, 1), (2, 1)]);
        assert!(!st.is_wild());
        let f = field("x^2-5");
        let st = split_prime(&f, &Place::Real).unwrap();
        assert_eq!(st.pairs(), &[(1, 1), (1, 1)]);
        assert!(st.is_totally_split());
    }

    #[test]
    fn general_path_agrees_with_fast_path() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let primes: Vec<BigInt> = crate::arith::small_primes(50)
            .into_iter()
            .map(BigInt::from)
            .collect();
        let mut tested = 0;
        while tested < 40 {
            let deg = rng.gen_range(2..=4);
            let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-20..=20)).collect();
            coeffs.push(1);
            let poly = IntPoly::from_i64(&coeffs);
            let Ok(f) = NumberField::new(&poly) else {
                continue;
            };
            tested += 1;
            for p in &primes {
                if (f.index() % p).is_zero() {
                    continue; // no fast path available
                }
                let fast = split_prime(&f, &Place::Finite(p.clone())).unwrap();
                let general = split_prime_general(&f, p, 0).unwrap();
                assert_eq!(fast, general, "disagree for {poly} at {p}");
            }
        }
    }

    #[test]
    fn general_path_handles_index_primes() {
        // 2 divides the index for x^2 - 5; the general path must run there.
        let f = field("x^2-5");
        let st = split_prime_general(&f, &BigInt::from(2), 0).unwrap();
        assert_eq!(st.pairs(), &[(1, 2)]);
        // and at a ramified index prime: x^2 - 45 has index 6... actually
        // disc(x^2-45) = 180 = 4*45, field disc 5, index 6: splitting at 2, 3, 5
        let f = field("x^2-45");
        assert_eq!(*f.disc(), BigInt::from(5));
        assert_eq!(*f.index(), BigInt::from(6));
        assert_eq!(
            split_prime_general(&f, &BigInt::from(2), 0)
                .unwrap()
                .pairs(),
            &[(1, 2)]
        );
        assert_eq!(
            split_prime_general(&f, &BigInt::from(3), 0)
                .unwrap()
                .pairs(),
            &[(1, 2)]
        );
        assert_eq!(
            split_prime_general(&f, &BigInt::from(5), 0)
                .unwrap()
                .pairs(),
            &[(2, 1)]
        );
    }

    #[test]
    fn ramifies_iff_divides_disc() {
        for s in ["x^2+1", "x^3-3", "x^4+x+1", "x^5-x-1"] {
            let f = field(s);
            for p in crate::arith::small_primes(60) {
                let p = BigInt::from(p);
                let st = split_prime(&f, &Place::Finite(p.clone())).unwrap();
                assert_eq!(!st.is_unramified(), (f.disc() % &p).is_zero(), "{s} at {p}");
            }
        }
    }

    #[test]
    fn composite_p_rejected() {
        let f = field("x^2+1");
        assert!(split_prime(&f, &Place::finite(4)).is_err());
        assert!(dedekind_index_divides(&parse_poly("x^2+1").unwrap(), &BigInt::from(6)).is_err());
    }

    #[test]
    fn sum_rule_holds() {
        let f = field("x^5 - x - 1");
        for p in [2i64, 3, 5, 7, 2971] {
            let st = split_prime(&f, &Place::finite(p)).unwrap();
            assert_eq!(st.degree(), 5);
        }
    }

    #[test]
    fn json_shape() {
        let f = field("x^8-3");
        let st = split_prime(&f, &Place::finite(2)).unwrap();
        assert_eq!(st.to_json(), json!({"p": 2, "pairs": [[8, 1]]}));
    }
}
