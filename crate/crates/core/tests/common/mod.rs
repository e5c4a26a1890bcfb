//! Shared helpers for the integration suites.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ramify_core::field::NumberField;
use ramify_core::poly::IntPoly;

/// Random monic irreducible polynomial of the given degree with coefficients
/// in `[-bound, bound]`, realized as a field (rejection sampling).
pub fn random_field(
    rng: &mut ChaCha8Rng,
    min_deg: usize,
    max_deg: usize,
    bound: i64,
) -> NumberField {
    loop {
        let deg = rng.gen_range(min_deg..=max_deg);
        let mut coeffs: Vec<BigInt> = (0..deg)
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect();
        coeffs.push(BigInt::from(1));
        let poly = IntPoly::from_coeffs(coeffs);
        match NumberField::new(&poly) {
            Ok(f) if !f.irreducibility_warning() => return f,
            _ => continue,
        }
    }
}

/// The first `count` primes not dividing `n`.
pub fn primes_coprime_to(n: &BigInt, count: usize) -> Vec<BigInt> {
    use num_traits::Zero;
    let mut out = Vec::new();
    for p in ramify_core::arith::small_primes(10_000) {
        let p = BigInt::from(p);
        if !(n % &p).is_zero() {
            out.push(p);
            if out.len() == count {
                break;
            }
        }
    }
    out
}
