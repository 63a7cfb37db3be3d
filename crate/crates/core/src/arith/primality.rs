//! Deterministic Miller-Rabin for the cofactor left over after trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Bases that make Miller-Rabin deterministic for every n below
/// 3,317,044,064,679,887,385,961,981.
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Upper limit (exclusive) below which [`is_prime_deterministic`] is a proof.
pub fn deterministic_limit() -> BigInt {
    "3317044064679887385961981".parse().unwrap()
}

/// Returns `Some(true|false)` when primality of `n` is decided with certainty,
/// `None` when `n` is too large for the fixed witness set.
pub fn is_prime_deterministic(n: &BigInt) -> Option<bool> {
    let two = BigInt::from(2);
    if n < &two {
        return Some(false);
    }
    for &p in &WITNESSES {
        let p = BigInt::from(p);
        if *n == p {
            return Some(true);
        }
        if n.is_multiple_of(&p) {
            return Some(false);
        }
    }
    if *n >= deterministic_limit() {
        return None;
    }

    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }

    'witness: for &a in &WITNESSES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
            if x.is_zero() || x.is_one() {
                break;
            }
        }
        return Some(false);
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is_prime = vec![true; limit + 1];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if is_prime[i] {
                let mut j = i * i;
                while j <= limit {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is_prime
    }

    #[test]
    fn agrees_with_sieve() {
        let table = sieve(20_000);
        for (n, &expected) in table.iter().enumerate() {
            assert_eq!(is_prime_deterministic(&BigInt::from(n)), Some(expected), "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprime to bases 2..=37 (Sorenson-Webster)
        let n: BigInt = "318665857834031151167461".parse().unwrap();
        assert_eq!(is_prime_deterministic(&n), Some(false));
        for carmichael in [561u64, 1105, 1729, 2465, 3_215_031_751] {
            assert_eq!(is_prime_deterministic(&BigInt::from(carmichael)), Some(false));
        }
    }

    #[test]
    fn large_primes() {
        for p in ["1000000007", "2305843009213693951", "1000000000000000003"] {
            assert_eq!(is_prime_deterministic(&p.parse().unwrap()), Some(true), "{p}");
        }
        assert_eq!(is_prime_deterministic(&deterministic_limit()), None);
    }
}
