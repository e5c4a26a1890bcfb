//! Integer utilities: primality testing, factorization, modular helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Miller-Rabin witnesses. This set is known to be deterministic for all
/// inputs below 3.3 * 10^24, far beyond any discriminant this library meets;
/// above that the test is (overwhelmingly) probabilistic.
const MR_BASES: [u32; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in MR_BASES {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard's rho. `n` must be odd, composite
/// and not a prime power of the seeds used; the caller retries on failure.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    let one = BigInt::one();
    for c in 1u32..64 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2u32);
        let mut y = x.clone();
        let mut d = BigInt::one();
        let mut count = 0u64;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != one && &d != n {
            return Some(d);
        }
    }
    None
}

/// Complete factorization of `|n|` into primes with multiplicities, sorted by
/// prime. The unit (sign) is dropped; `factorize(0)` panics.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, k: u32, factors: &mut Vec<(BigInt, u32)>| {
        if let Some(last) = factors.iter_mut().find(|(q, _)| *q == p) {
            last.1 += k;
        } else {
            factors.push((p, k));
        }
    };
    for q in small_primes(10_000) {
        let q = BigInt::from(q);
        if &q * &q > n {
            break;
        }
        let mut k = 0;
        while (&n % &q).is_zero() {
            n /= &q;
            k += 1;
        }
        if k > 0 {
            push(q, k, &mut factors);
        }
    }
    // Remaining part has no prime factor below 10^4.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, 1, &mut factors);
            continue;
        }
        // Strip perfect powers first so rho only sees distinct cofactors.
        let root = m.sqrt();
        if &root * &root == m {
            stack.push(root.clone());
            stack.push(root);
            continue;
        }
        let d = pollard_rho(&m).expect("rho failed on composite input");
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort();
    factors
}

/// Primes below `bound` by a plain sieve.
pub fn small_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return if bound > 2 { vec![2] } else { vec![] };
    }
    let n = bound as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Largest `k` with `p^k | n`, for `n != 0` and `p >= 2`.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_basics() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(691)));
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(561))); // Carmichael
        assert!(!is_prime(&BigInt::from(691 * 691)));
        // largeish semiprime
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        assert!(!is_prime(&(&p * &q)));
        assert!(is_prime(&p));
    }

    #[test]
    fn factorize_mixed() {
        let n = BigInt::from(64) * BigInt::from(691) * BigInt::from(691);
        assert_eq!(
            factorize(&n),
            vec![(BigInt::from(2), 6), (BigInt::from(691), 2)]
        );
        let n = BigInt::from(-360);
        assert_eq!(
            factorize(&n),
            vec![
                (BigInt::from(2), 3),
                (BigInt::from(3), 2),
                (BigInt::from(5), 1)
            ]
        );
        // product of two primes above the trial-division bound
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        assert_eq!(factorize(&(&p * &q)), vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn valuation_and_inverse() {
        assert_eq!(int_valuation(&BigInt::from(48), &BigInt::from(2)), 4);
        assert_eq!(int_valuation(&BigInt::from(-27), &BigInt::from(3)), 3);
        assert_eq!(
            mod_inverse(&BigInt::from(3), &BigInt::from(7)),
            Some(BigInt::from(5))
        );
        assert_eq!(mod_inverse(&BigInt::from(6), &BigInt::from(9)), None);
    }

    #[test]
    fn sieve_small() {
        assert_eq!(small_primes(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
