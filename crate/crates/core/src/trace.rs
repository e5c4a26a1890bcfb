//! The integral trace form, its predicted local decomposition at tame
//! primes, and the verdict comparing the prediction with a directly computed
//! Jordan decomposition.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::arith::int_valuation;
use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::invariants::{alpha_of, beta_of, nonresidue_unit, nu_of, SquareClass};
use crate::place::Place;
use crate::qform::{
    hyperbolic_sum, isometric_zp, jordan_decompose, GramMatrix, Isometry, OddBlock, PAdicForm,
};
use crate::splitting::split_prime;
use crate::symbols::legendre;

/// Gram matrix `tr(w_i w_j)` of the trace form on the integral basis; its
/// determinant is the field discriminant.
pub fn trace_gram(field: &NumberField) -> GramMatrix {
    let g = field.order().trace_gram();
    debug_assert_eq!(g.det(), *field.disc());
    GramMatrix::new(g).expect("trace Gram is symmetric")
}

/// Predicted local trace form of a single local field of ramification index
/// `e` and residue degree `f` over `Q_p`, given the square class of its
/// uniformizer norm data. Requires `p` odd or `e` odd; refuses wild input.
pub fn local_trace_shape(e: u32, f: u32, p: &BigInt, nu: SquareClass) -> Result<PAdicForm> {
    assert!(e >= 1 && f >= 1);
    if (BigInt::from(e) % p).is_zero() {
        return Err(Error::WildRamification(p.clone()));
    }
    let u = nonresidue_unit(&Place::Finite(p.clone()));
    if *p == BigInt::from(2) {
        let entries = crate::invariants::diag_block_entries(e, f, &u);
        let unimod = PAdicForm::unimodular_diag(&Place::finite(2), &entries)?;
        let planes = hyperbolic_sum((f * (e - 1) / 2) as usize, 1);
        return unimod.direct_sum(&planes);
    }
    // scale 0: <1, ..., 1, e^f u^{f-1}> of dimension f
    let lead = BigInt::from(e).pow(f) * u.pow(f - 1);
    let mut blocks = vec![OddBlock {
        scale: 0,
        dim: f as usize,
        nonresidue: SquareClass::of(&lead, p)? == SquareClass::NonResidue,
    }];
    if e > 1 {
        // scale 1: dimension f(e-1), determinant class of
        // (-1)^{f floor((e-1)/2)} (e^f u^{f-1} nu)^{e-1}
        let body = (&lead * nu.representative(&u)).pow(e - 1);
        let signed = if (f * ((e - 1) / 2)) % 2 == 1 {
            -body
        } else {
            body
        };
        blocks.push(OddBlock {
            scale: 1,
            dim: (f * (e - 1)) as usize,
            nonresidue: SquareClass::of(&signed, p)? == SquareClass::NonResidue,
        });
    }
    Ok(PAdicForm::odd(p, blocks))
}

/// Predicted Jordan decomposition of the integral trace form over Z_p at a
/// tame finite prime: the attached diagonal form plus a scaled tail governed
/// by the second and third ramification factors (hyperbolic planes at 2).
/// Assembled both from the global invariants and as an orthogonal sum over
/// the primes above `p`; the two must agree.
pub fn predicted_local_trace(field: &NumberField, p: &BigInt) -> Result<PAdicForm> {
    let place = Place::Finite(p.clone());
    let st = split_prime(field, &place)?;
    if st.is_wild() {
        return Err(Error::WildRamification(p.clone()));
    }
    let n = field.degree() as u32;
    let f_sum = st.f_sum();
    let global = if *p == BigInt::from(2) {
        let aform = crate::invariants::a_form_of(&st);
        let entries: Vec<BigInt> = aform.entries().cloned().collect();
        let unimod = PAdicForm::unimodular_diag(&place, &entries)?;
        unimod.direct_sum(&hyperbolic_sum(((n - f_sum) / 2) as usize, 1))?
    } else {
        let alpha = alpha_of(&st);
        let beta = beta_of(&st);
        let mut blocks = vec![OddBlock {
            scale: 0,
            dim: f_sum as usize,
            nonresidue: SquareClass::of(&alpha, p)? == SquareClass::NonResidue,
        }];
        if n > f_sum {
            let nu = nu_of(&st, field.disc(), p)?;
            let u = nonresidue_unit(&place);
            let tail = &beta * nu.representative(&u);
            blocks.push(OddBlock {
                scale: 1,
                dim: (n - f_sum) as usize,
                nonresidue: SquareClass::of(&tail, p)? == SquareClass::NonResidue,
            });
        }
        PAdicForm::odd(p, blocks)
    };
    // Second assembly: orthogonal sum of the local fields, with the third
    // factor attached to one ramified component of even index (its class is
    // invisible at odd indices).
    let nu_global = if *p != BigInt::from(2) && n > f_sum {
        nu_of(&st, field.disc(), p)?
    } else {
        SquareClass::One
    };
    let mut nu_slot = st.pairs().iter().position(|&(e, _)| e % 2 == 0);
    let mut sum: Option<PAdicForm> = None;
    for (i, &(e, f)) in st.pairs().iter().enumerate() {
        let nu_i = if Some(i) == nu_slot {
            nu_slot = None;
            nu_global
        } else {
            SquareClass::One
        };
        let shape = local_trace_shape(e, f, p, nu_i)?;
        sum = Some(match sum {
            None => shape,
            Some(acc) => acc.direct_sum(&shape)?,
        });
    }
    let by_parts = sum.expect("at least one prime above p");
    assert_eq!(
        isometric_zp(&global, &by_parts)?,
        Isometry::Isometric,
        "global and per-prime assemblies disagree at {p}"
    );
    Ok(global)
}

/// Prediction vs. direct computation of the local trace form.
#[derive(Clone, Debug)]
pub struct TraceVerdict {
    pub place: Place,
    pub predicted: PAdicForm,
    pub oracle: PAdicForm,
    pub matched: Isometry,
    pub notes: String,
}

impl TraceVerdict {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "p": crate::field::int_json(&self.place.to_bigint()),
            "predicted": self.predicted.to_string(),
            "oracle": self.oracle.to_string(),
            "match": self.matched.to_json(),
        });
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }
}

/// Compare the predicted local decomposition against the Jordan
/// decomposition of the actual trace Gram matrix. Tame finite primes only.
pub fn verify_local_trace(field: &NumberField, p: &BigInt) -> Result<TraceVerdict> {
    let place = Place::Finite(p.clone());
    let predicted = predicted_local_trace(field, p)?;
    let oracle = jordan_decompose(&trace_gram(field), &place)?;
    let matched = isometric_zp(&predicted, &oracle)?;
    let notes = match matched {
        Isometry::Indeterminate => "2-adic forms outside the decidable family".to_string(),
        _ => String::new(),
    };
    Ok(TraceVerdict {
        place,
        predicted,
        oracle,
        matched,
        notes,
    })
}

/// Do two fields of the same degree have Z_p-isometric integral trace forms?
/// Decided by comparing Legendre symbols of the first ramification factors,
/// under the hypotheses: `p` odd, tame in both fields, and the discriminants
/// agree at `p` up to unit squares.
pub fn trace_genus_equal(k: &NumberField, l: &NumberField, p: &BigInt) -> Result<bool> {
    if k.degree() != l.degree() {
        return Err(Error::Hypothesis(format!(
            "equal degrees required, got {} and {}",
            k.degree(),
            l.degree()
        )));
    }
    if *p < BigInt::from(3) {
        return Err(Error::Hypothesis(format!(
            "odd finite prime required, got {p}"
        )));
    }
    let place = Place::Finite(p.clone());
    let st_k = split_prime(k, &place)?;
    let st_l = split_prime(l, &place)?;
    if st_k.is_wild() {
        return Err(Error::Hypothesis(format!(
            "{p} is wildly ramified in the first field"
        )));
    }
    if st_l.is_wild() {
        return Err(Error::Hypothesis(format!(
            "{p} is wildly ramified in the second field"
        )));
    }
    let vk = int_valuation(k.disc(), p);
    let vl = int_valuation(l.disc(), p);
    if vk != vl {
        return Err(Error::Hypothesis(format!(
            "discriminants have different valuations at {p} ({vk} vs {vl})"
        )));
    }
    let uk = k.disc() / p.pow(vk as u32);
    let ul = l.disc() / p.pow(vl as u32);
    if legendre(&(&uk * &ul), p)? != 1 {
        return Err(Error::Hypothesis(format!(
            "discriminants differ at {p} up to unit squares"
        )));
    }
    let ak = alpha_of(&st_k);
    let al = alpha_of(&st_l);
    Ok(legendre(&ak, p)? == legendre(&al, p)?)
}
