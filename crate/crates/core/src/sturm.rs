//! Exact real-root counting via Sturm sequences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::IntPoly;

type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k + i] -= t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Number of distinct real roots of a squarefree polynomial.
pub(crate) fn count_real_roots(f: &IntPoly) -> usize {
    let Some(deg) = f.degree() else { return 0 };
    if deg == 0 {
        return 0;
    }
    let to_rat = |p: &IntPoly| -> RatPoly {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut chain: Vec<RatPoly> = vec![to_rat(f), to_rat(&f.derivative())];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[k - 1].len() == 1 {
            break;
        }
        let r = rem(&chain[k - 2], &chain[k - 1]);
        chain.push(r.iter().map(|c| -c).collect());
    }
    // Sign of p(x) as x -> +inf is the sign of the leading coefficient; as
    // x -> -inf it flips with odd degree.
    let sign_at = |p: &RatPoly, plus: bool| -> i32 {
        let lc = p.last().expect("nonzero chain entry");
        let s = if lc.is_positive() { 1 } else { -1 };
        if plus || (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    };
    let variations = |plus: bool| -> usize {
        let signs: Vec<i32> = chain.iter().map(|p| sign_at(p, plus)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(false) - variations(true)
}
