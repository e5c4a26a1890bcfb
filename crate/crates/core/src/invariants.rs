//! Ramification invariants of a number field at a place: the unit `u_p`, the
//! first and second ramification factors, the third factor at odd tame
//! primes, the attached diagonal quadratic form, and the ramification
//! classifier they encode.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::int_valuation;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::place::Place;
use crate::splitting::{split_prime, SplittingType};
use crate::symbols::legendre;

/// `u_p`: `-1` at the real place, `5` at 2, and the least positive quadratic
/// non-residue at every other prime.
pub fn nonresidue_unit(place: &Place) -> BigInt {
    match place {
        Place::Real => BigInt::from(-1),
        Place::Finite(p) if *p == BigInt::from(2) => BigInt::from(5),
        Place::Finite(p) => {
            let mut u = BigInt::from(2);
            while legendre(&u, p).expect("odd prime") != -1 {
                u += 1;
                assert!(&u < p, "no non-residue below p");
            }
            u
        }
    }
}

/// Square class of a unit at an odd prime (or the class of a nonzero real).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SquareClass {
    One,
    NonResidue,
}

impl SquareClass {
    /// Class of an integer that is a unit at the odd prime `p`.
    pub fn of(a: &BigInt, p: &BigInt) -> Result<SquareClass> {
        match legendre(a, p)? {
            1 => Ok(SquareClass::One),
            -1 => Ok(SquareClass::NonResidue),
            _ => Err(Error::InvalidArgument(format!("{a} is not a unit at {p}"))),
        }
    }

    pub fn product(self, other: SquareClass) -> SquareClass {
        if self == other {
            SquareClass::One
        } else {
            SquareClass::NonResidue
        }
    }

    /// A representative: 1 or `u_p`.
    pub fn representative(self, u: &BigInt) -> BigInt {
        match self {
            SquareClass::One => BigInt::one(),
            SquareClass::NonResidue => u.clone(),
        }
    }
}

/// First ramification factor from a splitting type:
/// `prod e_i^{f_i} * u_p^{f_p - g_p}`.
pub fn alpha_of(st: &SplittingType) -> BigInt {
    let u = nonresidue_unit(st.place());
    let mut a = BigInt::one();
    for &(e, f) in st.pairs() {
        a *= BigInt::from(e).pow(f);
    }
    let exp = st.f_sum() as usize - st.num_primes();
    a * u.pow(exp as u32)
}

/// Second ramification factor:
/// `(-1)^{sum floor((e_i-1)/2) f_i} * prod e_i^{f_i (e_i - 1)} * u_p^{n - f_p - e_p + g_p}`.
pub fn beta_of(st: &SplittingType) -> BigInt {
    let u = nonresidue_unit(st.place());
    let mut sign_exp = 0u32;
    let mut b = BigInt::one();
    for &(e, f) in st.pairs() {
        sign_exp += ((e - 1) / 2) * f;
        b *= BigInt::from(e).pow(f * (e - 1));
    }
    let exp = st.degree() + st.num_primes() as u32 - st.f_sum() - st.e_sum();
    b *= u.pow(exp);
    if sign_exp % 2 == 1 {
        -b
    } else {
        b
    }
}

pub fn alpha(field: &NumberField, place: &Place) -> Result<BigInt> {
    Ok(alpha_of(&split_prime(field, place)?))
}

pub fn beta(field: &NumberField, place: &Place) -> Result<BigInt> {
    Ok(beta_of(&split_prime(field, place)?))
}

/// Third ramification factor at an odd prime, tame in the field: the square
/// class making `disc(L) = p^{n - f_p} * alpha * beta * nu` hold modulo unit
/// squares. Undefined at 2, at the real place, and at wild primes.
pub fn nu(field: &NumberField, p: &BigInt) -> Result<SquareClass> {
    if *p == BigInt::from(2) {
        return Err(Error::UndefinedInvariant(
            "third ramification factor is undefined at 2".into(),
        ));
    }
    if *p == BigInt::from(-1) {
        return Err(Error::UndefinedInvariant(
            "third ramification factor is undefined at the real place".into(),
        ));
    }
    let place = Place::Finite(p.clone());
    let st = split_prime(field, &place)?;
    if st.is_wild() {
        return Err(Error::UndefinedInvariant(format!(
            "third ramification factor is undefined at wildly ramified {p}"
        )));
    }
    nu_of(&st, field.disc(), p)
}

pub(crate) fn nu_of(st: &SplittingType, disc: &BigInt, p: &BigInt) -> Result<SquareClass> {
    let v = int_valuation(disc, p);
    let expected = st.degree() - st.f_sum();
    assert_eq!(
        v, expected as u64,
        "tame discriminant valuation must be n - f_p"
    );
    let unit = disc / p.pow(v as u32);
    let a = alpha_of(st);
    let b = beta_of(st);
    // nu = class of unit / (alpha beta); inverses agree with products mod squares
    let cls = SquareClass::of(&(&unit * &a * &b), p)?;
    Ok(cls)
}

/// Ramification flags of a place.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RamFlags {
    pub unramified: bool,
    pub totally_split: bool,
    pub wild: bool,
}

/// Classify a place from its splitting data and cross-check against the
/// invariant criteria (`beta = 1` iff unramified, `alpha = 1` iff totally
/// split, `p | alpha` iff wild). A mismatch is a bug, hence a panic.
pub fn classify(field: &NumberField, place: &Place) -> Result<RamFlags> {
    let st = split_prime(field, place)?;
    Ok(classify_of(&st))
}

pub(crate) fn classify_of(st: &SplittingType) -> RamFlags {
    let flags = RamFlags {
        unramified: st.is_unramified(),
        totally_split: st.is_totally_split(),
        wild: st.is_wild(),
    };
    let a = alpha_of(st);
    let b = beta_of(st);
    assert_eq!(
        flags.unramified,
        b.is_one(),
        "unramified <-> beta = 1 failed at {}",
        st.place()
    );
    assert_eq!(
        flags.totally_split,
        a.is_one(),
        "totally split <-> alpha = 1 failed at {}",
        st.place()
    );
    if let Place::Finite(p) = st.place() {
        assert_eq!(
            flags.wild,
            (&a % p).is_zero(),
            "wild <-> p | alpha failed at {}",
            st.place()
        );
    }
    flags
}

/// The diagonal quadratic form attached to a place: one block per prime
/// above it. Blocks follow the residue degree: `<e>` for f = 1,
/// `<-e, -e u_p>` for f = 2, and `<e, ..., e, e (-1)^{f-1}, e (-u_p)^{f-1}>`
/// for larger f. Its determinant is the first ramification factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AForm {
    place: Place,
    blocks: Vec<AFormBlock>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AFormBlock {
    pub e: u32,
    pub f: u32,
    pub entries: Vec<BigInt>,
}

impl AForm {
    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn blocks(&self) -> &[AFormBlock] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.entries.len()).sum()
    }

    pub fn det(&self) -> BigInt {
        self.blocks.iter().flat_map(|b| &b.entries).product()
    }

    /// All diagonal entries in block order.
    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.blocks.iter().flat_map(|b| b.entries.iter())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": crate::field::int_json(&self.place.to_bigint()),
            "blocks": self
                .blocks
                .iter()
                .map(|b| json!({
                    "e": b.e,
                    "f": b.f,
                    "entries": b.entries.iter().map(|x| crate::field::int_json(x)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "det": self.det().to_string(),
        })
    }
}

impl std::fmt::Display for AForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let entries: Vec<String> = b.entries.iter().map(BigInt::to_string).collect();
                format!("<{}>", entries.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn a_form(field: &NumberField, place: &Place) -> Result<AForm> {
    Ok(a_form_of(&split_prime(field, place)?))
}

/// Entries of one diagonal block: `<e>` for f = 1, `<-e, -e u>` for f = 2,
/// `<e, ..., e, e (-1)^{f-1}, e (-u)^{f-1}>` for larger f.
pub(crate) fn diag_block_entries(e: u32, f: u32, u: &BigInt) -> Vec<BigInt> {
    let eb = BigInt::from(e);
    match f {
        1 => vec![eb],
        2 => vec![-eb.clone(), -(&eb * u)],
        _ => {
            let sign = |x: BigInt| if f % 2 == 0 { -x } else { x };
            let mut v = vec![eb.clone(); (f - 2) as usize];
            v.push(sign(eb.clone()));
            v.push(sign(&eb * u.pow(f - 1)));
            v
        }
    }
}

pub fn a_form_of(st: &SplittingType) -> AForm {
    let u = nonresidue_unit(st.place());
    let blocks: Vec<AFormBlock> = st
        .pairs()
        .iter()
        .map(|&(e, f)| AFormBlock {
            e,
            f,
            entries: diag_block_entries(e, f, &u),
        })
        .collect();
    let form = AForm {
        place: st.place().clone(),
        blocks,
    };
    debug_assert_eq!(form.det(), alpha_of(st));
    form
}

/// All ramification data of a place bundled together, cross-checked.
#[derive(Clone, Debug)]
pub struct RamificationInvariants {
    pub place: Place,
    pub alpha: BigInt,
    pub beta: BigInt,
    /// Defined only at odd finite tame places.
    pub nu: Option<SquareClass>,
    pub flags: RamFlags,
}

pub fn invariants(field: &NumberField, place: &Place) -> Result<RamificationInvariants> {
    let st = split_prime(field, place)?;
    let flags = classify_of(&st);
    let nu = match place {
        Place::Finite(p) if *p != BigInt::from(2) && !st.is_wild() => {
            Some(nu_of(&st, field.disc(), p)?)
        }
        _ => None,
    };
    Ok(RamificationInvariants {
        place: place.clone(),
        alpha: alpha_of(&st),
        beta: beta_of(&st),
        nu,
        flags,
    })
}

impl RamificationInvariants {
    pub fn to_json(&self) -> Value {
        json!({
            "p": crate::field::int_json(&self.place.to_bigint()),
            "alpha": self.alpha.to_string(),
            "beta": self.beta.to_string(),
            "nu": match self.nu {
                Some(SquareClass::One) => "1",
                Some(SquareClass::NonResidue) => "u",
                None => "undefined",
            },
            "flags": {
                "unramified": self.flags.unramified,
                "totally_split": self.flags.totally_split,
                "wild": self.flags.wild,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn field(s: &str) -> NumberField {
        NumberField::new(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn nonresidue_units() {
        assert_eq!(nonresidue_unit(&Place::finite(2)), BigInt::from(5));
        assert_eq!(nonresidue_unit(&Place::Real), BigInt::from(-1));
        assert_eq!(nonresidue_unit(&Place::finite(7)), BigInt::from(3));
        assert_eq!(nonresidue_unit(&Place::finite(3)), BigInt::from(2));
        assert_eq!(nonresidue_unit(&Place::finite(5)), BigInt::from(2));
        assert_eq!(nonresidue_unit(&Place::finite(23)), BigInt::from(5));
        assert_eq!(nonresidue_unit(&Place::finite(73)), BigInt::from(5));
    }

    #[test]
    fn alpha_small_examples() {
        let qi = field("x^2+1");
        // totally split at 5
        assert_eq!(alpha(&qi, &Place::finite(5)).unwrap(), BigInt::one());
        // inert at 3: u_3 = 2
        assert_eq!(alpha(&qi, &Place::finite(3)).unwrap(), BigInt::from(2));
        // ramified at 2
        assert_eq!(alpha(&qi, &Place::finite(2)).unwrap(), BigInt::from(2));
        // eighth root of 3: totally ramified at 3
        let f = field("x^8-3");
        assert_eq!(alpha(&f, &Place::finite(3)).unwrap(), BigInt::from(8));
        assert_eq!(alpha(&f, &Place::finite(2)).unwrap(), BigInt::from(8));
    }

    #[test]
    fn beta_examples() {
        let qi = field("x^2+1");
        // unramified places have beta = 1
        assert_eq!(beta(&qi, &Place::finite(3)).unwrap(), BigInt::one());
        assert_eq!(beta(&qi, &Place::finite(5)).unwrap(), BigInt::one());
        // (x^2+1, 2): e=2, f=1, g=1, n=2
        assert_eq!(beta(&qi, &Place::finite(2)).unwrap(), BigInt::from(2));
        // real place: alpha = beta = 2^s
        assert_eq!(beta(&qi, &Place::Real).unwrap(), BigInt::from(2));
        assert_eq!(alpha(&qi, &Place::Real).unwrap(), BigInt::from(2));
        let f = field("x^8-3"); // s = 3
        assert_eq!(alpha(&f, &Place::Real).unwrap(), BigInt::from(8));
        assert_eq!(beta(&f, &Place::Real).unwrap(), BigInt::from(8));
    }

    #[test]
    fn real_place_f_equals_r_plus_s() {
        for s in ["x^2+1", "x^3-3", "x^8-3", "x^2-5"] {
            let f = field(s);
            let st = split_prime(&f, &Place::Real).unwrap();
            let (r, c) = f.signature();
            assert_eq!(st.f_sum() as usize, r + c);
        }
    }

    #[test]
    fn nu_examples() {
        // (x^2-5, 5): disc 5, alpha = beta = 2; 5/(2*2) is a square class 1
        let f = field("x^2-5");
        assert_eq!(nu(&f, &BigInt::from(5)).unwrap(), SquareClass::One);
        // unramified odd prime: nu = 1
        assert_eq!(nu(&f, &BigInt::from(3)).unwrap(), SquareClass::One);
        // wild: undefined
        let f3 = field("x^3-3");
        assert!(matches!(
            nu(&f3, &BigInt::from(3)),
            Err(Error::UndefinedInvariant(_))
        ));
        assert!(matches!(
            nu(&f3, &BigInt::from(2)),
            Err(Error::UndefinedInvariant(_))
        ));
        assert!(matches!(
            nu(&f3, &BigInt::from(-1)),
            Err(Error::UndefinedInvariant(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let qi = field("x^2+1");
        let fl = classify(&qi, &Place::finite(2)).unwrap();
        assert!(fl.wild && !fl.unramified && !fl.totally_split);
        let fl = classify(&qi, &Place::finite(5)).unwrap();
        assert!(fl.totally_split && fl.unramified && !fl.wild);
        let fl = classify(&qi, &Place::finite(3)).unwrap();
        assert!(fl.unramified && !fl.totally_split && !fl.wild);
    }

    #[test]
    fn a_form_examples() {
        let qi = field("x^2+1");
        let a = a_form(&qi, &Place::finite(5)).unwrap();
        assert_eq!(a.to_string(), "<1> + <1>");
        assert_eq!(a.det(), BigInt::one());
        // x^3 - 3 at 2: splitting [(1,1),(1,2)]
        let f = field("x^3-3");
        let a = a_form(&f, &Place::finite(2)).unwrap();
        assert_eq!(a.to_string(), "<1> + <-1,-5>");
        assert_eq!(a.det(), BigInt::from(5));
        assert_eq!(a.det(), alpha(&f, &Place::finite(2)).unwrap());
        // x^8 - 3 at 3: <8>, det 8
        let f = field("x^8-3");
        let a = a_form(&f, &Place::finite(3)).unwrap();
        assert_eq!(a.to_string(), "<8>");
        assert_eq!(a.det(), BigInt::from(8));
    }

    #[test]
    fn a_form_block_shapes_for_large_f() {
        // inert prime with f = 3: x^3 - x - 1 at 5?
        let f = field("x^3-x-1");
        // disc = -23; 5 unramified; factorization type determines f
        let st = split_prime(&f, &Place::finite(5)).unwrap();
        if st.pairs() == [(1, 3)] {
            let a = a_form(&f, &Place::finite(5)).unwrap();
            // f = 3: <e, e(-1)^2, e(-u)^2> = <1, 1, 4> with u_5 = 2
            assert_eq!(a.to_string(), "<1,1,4>");
        }
        // and f = 4 via x^4+x+1 at a prime where it is irreducible
        let g = field("x^4+x+1");
        for p in [2i64, 3, 5, 7, 11, 13] {
            let st = split_prime(&g, &Place::finite(p)).unwrap();
            if st.pairs() == [(1, 4)] {
                let u = nonresidue_unit(&Place::finite(p));
                let a = a_form(&g, &Place::finite(p)).unwrap();
                let entries: Vec<BigInt> = a.entries().cloned().collect();
                assert_eq!(
                    entries,
                    vec![BigInt::one(), BigInt::one(), BigInt::from(-1), -u.pow(3)]
                );
                assert_eq!(a.det(), alpha_of(&st));
            }
        }
    }

    #[test]
    fn invariants_bundle() {
        let f = field("x^2+1");
        let inv = invariants(&f, &Place::Real).unwrap();
        assert_eq!(inv.alpha, BigInt::from(2));
        assert_eq!(inv.beta, BigInt::from(2));
        assert!(inv.nu.is_none());
        let v = inv.to_json();
        assert_eq!(v["alpha"], "2");
        assert_eq!(v["nu"], "undefined");
        let inv = invariants(&f, &Place::finite(5)).unwrap();
        assert_eq!(inv.nu, Some(SquareClass::One));
    }

    #[test]
    fn hasse_formula_at_unramified_primes() {
        for s in ["x^2+1", "x^3-3", "x^4+x+1", "x^5-x-1"] {
            let f = field(s);
            for p in crate::arith::small_primes(50) {
                if p == 2 {
                    continue;
                }
                let p = BigInt::from(p);
                let st = split_prime(&f, &Place::Finite(p.clone())).unwrap();
                if !st.is_unramified() {
                    continue;
                }
                let lhs = legendre(f.disc(), &p).unwrap();
                let rhs = if (f.degree() - st.num_primes()) % 2 == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(lhs, rhs, "{s} at {p}");
            }
        }
    }
}
