//! Arithmetic-equivalence testing by comparing first ramification factors
//! across primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::small_primes;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::invariants::alpha_of;
use crate::place::Place;
use crate::splitting::split_prime;

/// `alpha_p` for every prime `p <= bound` together with the real place.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaFingerprint {
    pub bound: u64,
    pub real: BigInt,
    pub finite: BTreeMap<u64, BigInt>,
}

impl AlphaFingerprint {
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        map.insert("-1".into(), json!(self.real.to_string()));
        for (p, a) in &self.finite {
            map.insert(p.to_string(), json!(a.to_string()));
        }
        json!({ "bound": self.bound, "alpha": map })
    }
}

pub fn alpha_fingerprint(field: &NumberField, bound: u64) -> Result<AlphaFingerprint> {
    if bound < 2 {
        return Err(Error::InvalidArgument(
            "fingerprint bound must be at least 2".into(),
        ));
    }
    let real = alpha_of(&split_prime(field, &Place::Real)?);
    let mut finite = BTreeMap::new();
    for p in small_primes(bound + 1) {
        let st = split_prime(field, &Place::finite(p as i64))?;
        finite.insert(p, alpha_of(&st));
    }
    Ok(AlphaFingerprint {
        bound,
        real,
        finite,
    })
}

/// One place where the first ramification factors differ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaDifference {
    pub place: Place,
    pub alpha_left: BigInt,
    pub alpha_right: BigInt,
    /// Ramified in at least one of the two fields.
    pub ramified: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    /// No difference outside ramified places up to the bound. A finite scan
    /// can never certify equivalence, so this is the strongest positive
    /// answer given.
    ConsistentUpTo(u64),
    /// A difference at a place unramified in both fields; the split counts
    /// form the certificate.
    NotEquivalent {
        witness: u64,
        splits_left: usize,
        splits_right: usize,
    },
    DegreeMismatch {
        left: usize,
        right: usize,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompareReport {
    pub bound: u64,
    pub differences: Vec<AlphaDifference>,
    pub verdict: Verdict,
}

impl CompareReport {
    pub fn to_json(&self) -> Value {
        let differs: Vec<Value> = self
            .differences
            .iter()
            .map(|d| {
                json!({
                    "p": crate::field::int_json(&d.place.to_bigint()),
                    "alpha_K": d.alpha_left.to_string(),
                    "alpha_L": d.alpha_right.to_string(),
                    "ramified": d.ramified,
                })
            })
            .collect();
        let mut v = json!({
            "bound": self.bound,
            "differs": differs,
        });
        match &self.verdict {
            Verdict::ConsistentUpTo(_) => {
                v["verdict"] = json!("consistent");
            }
            Verdict::NotEquivalent {
                witness,
                splits_left,
                splits_right,
            } => {
                v["verdict"] = json!("not_equivalent");
                v["certificate"] = json!({
                    "p": witness,
                    "g_K": splits_left,
                    "g_L": splits_right,
                });
            }
            Verdict::DegreeMismatch { left, right } => {
                v["verdict"] = json!("degree_mismatch");
                v["degrees"] = json!([left, right]);
            }
        }
        v
    }
}

/// Compare first ramification factors of two fields at the real place and
/// all primes up to `bound`. Differences at ramified places are reported but
/// tolerated; a difference at a place unramified in both fields rules
/// equivalence out.
pub fn compare_fields(
    left: &NumberField,
    right: &NumberField,
    bound: u64,
) -> Result<CompareReport> {
    if left.degree() != right.degree() {
        return Ok(CompareReport {
            bound,
            differences: vec![],
            verdict: Verdict::DegreeMismatch {
                left: left.degree(),
                right: right.degree(),
            },
        });
    }
    if bound < 2 {
        return Err(Error::InvalidArgument(
            "comparison bound must be at least 2".into(),
        ));
    }
    let mut differences = Vec::new();
    let mut witness: Option<(u64, usize, usize)> = None;
    let mut places: Vec<Place> = vec![Place::Real];
    places.extend(
        small_primes(bound + 1)
            .into_iter()
            .map(|p| Place::finite(p as i64)),
    );
    for place in places {
        let st_l = split_prime(left, &place)?;
        let st_r = split_prime(right, &place)?;
        let al = alpha_of(&st_l);
        let ar = alpha_of(&st_r);
        let unramified_both = st_l.is_unramified() && st_r.is_unramified();
        if unramified_both {
            // at such places equal alpha is exactly equal split count
            assert_eq!(
                al == ar,
                st_l.num_primes() == st_r.num_primes(),
                "alpha comparison must reduce to split counts at {place}"
            );
        }
        if al != ar {
            if unramified_both && witness.is_none() {
                if let Place::Finite(p) = &place {
                    witness = Some((
                        u64::try_from(p).unwrap(),
                        st_l.num_primes(),
                        st_r.num_primes(),
                    ));
                }
            }
            differences.push(AlphaDifference {
                place,
                alpha_left: al,
                alpha_right: ar,
                ramified: !unramified_both,
            });
        }
    }
    let verdict = match witness {
        Some((p, gl, gr)) => Verdict::NotEquivalent {
            witness: p,
            splits_left: gl,
            splits_right: gr,
        },
        None => Verdict::ConsistentUpTo(bound),
    };
    Ok(CompareReport {
        bound,
        differences,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn field(s: &str) -> NumberField {
        NumberField::new(&parse_poly(s).unwrap()).unwrap()
    }

    #[test]
    fn gaussian_fingerprint() {
        let f = field("x^2+1");
        let fp = alpha_fingerprint(&f, 10).unwrap();
        assert_eq!(fp.real, BigInt::from(2));
        let get = |p: u64| fp.finite[&p].clone();
        assert_eq!(get(2), BigInt::from(2));
        assert_eq!(get(3), BigInt::from(2));
        assert_eq!(get(5), BigInt::from(1));
        // 7 is inert and the least non-residue mod 7 is 3
        assert_eq!(get(7), BigInt::from(3));
        assert!(!fp.finite.contains_key(&11));
    }

    #[test]
    fn rational_fingerprint_is_trivial() {
        let f = field("x");
        let fp = alpha_fingerprint(&f, 30).unwrap();
        assert_eq!(fp.real, BigInt::from(1));
        assert!(fp.finite.values().all(|a| *a == BigInt::from(1)));
    }

    #[test]
    fn octic_fingerprint() {
        // totally ramified at 2 and 3; s = 3 at the real place
        let f = field("x^8-3");
        let fp = alpha_fingerprint(&f, 5).unwrap();
        assert_eq!(fp.real, BigInt::from(8));
        assert_eq!(fp.finite[&2], BigInt::from(8));
        assert_eq!(fp.finite[&3], BigInt::from(8));
        assert!(fp.finite.contains_key(&5));
    }

    #[test]
    fn fingerprint_prefix_property() {
        let f = field("x^3-3");
        let small = alpha_fingerprint(&f, 20).unwrap();
        let large = alpha_fingerprint(&f, 60).unwrap();
        for (p, a) in &small.finite {
            assert_eq!(large.finite[p], *a);
        }
        assert!(large.finite.len() > small.finite.len());
        assert!(alpha_fingerprint(&f, 1).is_err());
    }

    #[test]
    fn self_comparison_is_clean() {
        let f = field("x^3-3");
        let rep = compare_fields(&f, &f, 50).unwrap();
        assert!(rep.differences.is_empty());
        assert_eq!(rep.verdict, Verdict::ConsistentUpTo(50));
    }

    #[test]
    fn different_quadratic_fields_are_detected() {
        let a = field("x^2+1");
        let b = field("x^2-5");
        let rep = compare_fields(&a, &b, 100).unwrap();
        assert!(matches!(rep.verdict, Verdict::NotEquivalent { .. }));
        // symmetric
        let rep2 = compare_fields(&b, &a, 100).unwrap();
        assert!(matches!(rep2.verdict, Verdict::NotEquivalent { .. }));
        assert_eq!(rep.differences.len(), rep2.differences.len());
    }

    #[test]
    fn degree_mismatch_short_circuits() {
        let a = field("x^2+1");
        let b = field("x^3-3");
        let rep = compare_fields(&a, &b, 1000).unwrap();
        assert_eq!(rep.verdict, Verdict::DegreeMismatch { left: 2, right: 3 });
        assert!(rep.differences.is_empty());
    }

    #[test]
    fn report_json_shape() {
        let a = field("x^2+1");
        let b = field("x^2-5");
        let v = compare_fields(&a, &b, 50).unwrap().to_json();
        assert_eq!(v["bound"], 50);
        assert_eq!(v["verdict"], "not_equivalent");
        assert!(v["differs"].as_array().unwrap().len() > 0);
    }
}
