//! Exact integer number theory: gcds, trial-division factorization, exact
//! roots and perfect-power decomposition.
//!
//! The values passed to the binomial decision procedure are arbitrary
//! [`BigInt`]s. Everything here either returns an exact answer or an error;
//! nothing is probabilistic.

mod primality;

pub use primality::{deterministic_limit, is_prime_deterministic};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Default trial-division bound.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("empty input")]
    EmptyInput,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("factorization of {value} exceeds trial bound {bound}: cofactor {cofactor} is not certified prime")]
    ExceedsBound {
        value: BigInt,
        bound: u64,
        cofactor: BigInt,
    },
}

/// `value = sign * prod(p^e)`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub value: BigInt,
    pub sign: Sign,
    pub factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|(_, e)| *e)
    }

    /// gcd of all prime exponents.
    pub fn exponent_gcd(&self) -> u32 {
        self.exponents().fold(0, |g, e| g.gcd(&e))
    }

    /// Recomputes `sign * prod(p^e)`.
    pub fn product(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e));
        if self.sign == Sign::Minus {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// `base^exponent` with `exponent` maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectPower {
    pub base: BigInt,
    pub exponent: u32,
}

/// gcd of the absolute values. `gcd_many(&[0, 0]) == 0`.
pub fn gcd_many(values: &[BigInt]) -> Result<BigInt, ArithError> {
    if values.is_empty() {
        return Err(ArithError::EmptyInput);
    }
    Ok(values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)))
}

/// Complete factorization of `n` by trial division up to `trial_bound`.
///
/// A cofactor remaining after the bound is accepted only when the
/// deterministic Miller-Rabin test proves it prime; otherwise the call
/// fails with [`ArithError::ExceedsBound`].
pub fn factorize(n: &BigInt, trial_bound: u64) -> Result<PrimeFactorization, ArithError> {
    if n.abs() < BigInt::from(2) {
        return Err(ArithError::Domain(format!("cannot factor {n}: |n| < 2")));
    }
    let sign = n.sign();
    let mut rest = n.abs();
    let mut factors = Vec::new();

    let mut strip = |rest: &mut BigInt, p: u64| {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    };

    strip(&mut rest, 2);
    let mut p = 3u64;
    let mut exhausted = true;
    while !rest.is_one() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p > trial_bound {
            exhausted = false;
            break;
        }
        strip(&mut rest, p);
        p += 2;
    }

    if !rest.is_one() {
        // Either rest < p^2 with no factor below p (prime), or the bound hit.
        let certified = exhausted || is_prime_deterministic(&rest) == Some(true);
        if !certified {
            return Err(ArithError::ExceedsBound {
                value: n.clone(),
                bound: trial_bound,
                cofactor: rest,
            });
        }
        factors.push((rest, 1));
    }

    Ok(PrimeFactorization {
        value: n.clone(),
        sign,
        factors,
    })
}

/// Returns `b` with `b^t == a` if such an integer exists.
pub fn nth_root_exact(a: &BigInt, t: u32) -> Option<BigInt> {
    assert!(t >= 1, "nth_root_exact: t must be positive");
    if t == 1 {
        return Some(a.clone());
    }
    if a.is_negative() && t.is_multiple_of(2) {
        return None;
    }
    let root = a.nth_root(t);
    (root.pow(t) == *a).then_some(root)
}

/// Writes `a = base^exponent` with the exponent maximal. For negative `a`
/// the base carries the sign and the exponent is odd.
pub fn perfect_power_decompose(a: &BigInt) -> Result<PerfectPower, ArithError> {
    if a.abs() < BigInt::from(2) {
        return Err(ArithError::Domain(format!(
            "perfect power decomposition needs |a| >= 2, got {a}"
        )));
    }
    // |a| >= 2^e, so e never exceeds the bit length.
    let max_exponent = a.bits() as u32;
    for e in (2..=max_exponent).rev() {
        if let Some(base) = nth_root_exact(a, e) {
            return Ok(PerfectPower { base, exponent: e });
        }
    }
    Ok(PerfectPower {
        base: a.clone(),
        exponent: 1,
    })
}

/// Writes `a = b^m` with `m >= 2`, `m | n` and `m` maximal, or returns
/// `None` when no such `m` exists.
///
/// `m` is the gcd of `n` with the maximal perfect-power exponent of `a`, so
/// the residual exponent of `b` is coprime to `n / gcd`.
pub fn property_p_decompose(a: &BigInt, n: u32) -> Result<Option<(BigInt, u32)>, ArithError> {
    if n < 2 {
        return Err(ArithError::Domain(format!("property P needs n >= 2, got {n}")));
    }
    let pp = perfect_power_decompose(a)?;
    let m = pp.exponent.gcd(&n);
    if m < 2 {
        return Ok(None);
    }
    let b = pp.base.pow(pp.exponent / m);
    debug_assert_eq!(&b.pow(m), a);
    Ok(Some((b, m)))
}

/// Whether a positive integer `b` has property P relative to `n`: `b` is
/// prime, or `b = (p_1^{b_1} ... p_k^{b_k})^d` with `k >= 2`,
/// `gcd(b_i) = 1` and `gcd(d, n) = 1`.
pub fn has_property_p(b: &BigInt, n: u32, trial_bound: u64) -> Result<bool, ArithError> {
    if *b < BigInt::from(2) {
        return Err(ArithError::Domain(format!("property P needs b >= 2, got {b}")));
    }
    let f = factorize(b, trial_bound)?;
    Ok(match f.omega() {
        1 => f.factors[0].1 == 1,
        _ => f.exponent_gcd().gcd(&n) == 1,
    })
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient by trial division; `n` is a degree-sized integer.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut rest = n;
    let mut p = 2u32;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// Splits `n = 2^r * odd`.
pub fn split_two_power(n: u32) -> (u32, u32) {
    assert!(n > 0);
    let r = n.trailing_zeros();
    (r, n >> r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gcd_many_examples() {
        assert_eq!(gcd_many(&[big(8), big(10), big(6)]).unwrap(), big(2));
        assert_eq!(gcd_many(&[big(5)]).unwrap(), big(5));
        assert_eq!(gcd_many(&[big(0), big(7)]).unwrap(), big(7));
        assert_eq!(gcd_many(&[big(0), big(0)]).unwrap(), big(0));
        assert_eq!(gcd_many(&[big(-12), big(18)]).unwrap(), big(6));
        assert_eq!(gcd_many(&[]), Err(ArithError::EmptyInput));
    }

    #[test]
    fn factorize_examples() {
        let f = factorize(&big(59049), DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(f.sign, Sign::Plus);
        assert_eq!(f.factors, vec![(big(3), 10)]);

        let f = factorize(&big(-8), DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(f.sign, Sign::Minus);
        assert_eq!(f.factors, vec![(big(2), 3)]);
        assert_eq!(f.product(), big(-8));

        let f = factorize(&big(1679616), DEFAULT_TRIAL_BOUND).unwrap();
        assert_eq!(f.factors, vec![(big(2), 8), (big(3), 8)]);
    }

    #[test]
    fn factorize_domain_errors() {
        for v in [-1, 0, 1] {
            assert!(matches!(factorize(&big(v), 100), Err(ArithError::Domain(_))));
        }
    }

    #[test]
    fn factorize_large_prime_cofactor_certified() {
        // 2 * (10^9 + 7) with a tiny trial bound leaves a prime cofactor.
        let n = big(2) * big(1_000_000_007);
        let f = factorize(&n, 10).unwrap();
        assert_eq!(f.factors, vec![(big(2), 1), (big(1_000_000_007), 1)]);
    }

    #[test]
    fn factorize_refuses_uncertified_cofactor() {
        let n = big(1_000_003) * big(1_000_033);
        let err = factorize(&n, 1000).unwrap_err();
        assert!(matches!(err, ArithError::ExceedsBound { .. }));
        assert!(factorize(&n, DEFAULT_TRIAL_BOUND).is_err());
        let f = factorize(&n, 1_000_010).unwrap();
        assert_eq!(f.factors, vec![(big(1_000_003), 1), (big(1_000_033), 1)]);
    }

    #[test]
    fn factorize_reconstructs_up_to_ten_thousand() {
        for v in (-10_000i64..=10_000).filter(|v| v.abs() >= 2) {
            let f = factorize(&big(v), DEFAULT_TRIAL_BOUND).unwrap();
            assert_eq!(f.product(), big(v));
            assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.exponents().all(|e| e >= 1));
        }
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(nth_root_exact(&big(59049), 5), Some(big(9)));
        assert_eq!(nth_root_exact(&big(-8), 3), Some(big(-2)));
        assert_eq!(nth_root_exact(&big(16), 3), None);
        assert_eq!(nth_root_exact(&big(-16), 4), None);
        assert_eq!(nth_root_exact(&big(0), 7), Some(big(0)));
        assert_eq!(nth_root_exact(&big(-1), 5), Some(big(-1)));
    }

    #[test]
    fn nth_root_round_trip_grid() {
        for b in -50i64..=50 {
            for t in 1u32..=12 {
                if b < 0 && t % 2 == 0 {
                    continue;
                }
                assert_eq!(nth_root_exact(&big(b).pow(t), t), Some(big(b)), "b={b} t={t}");
            }
        }
    }

    #[test]
    fn perfect_power_examples() {
        let pp = perfect_power_decompose(&big(59049)).unwrap();
        assert_eq!((pp.base, pp.exponent), (big(3), 10));
        let pp = perfect_power_decompose(&big(12)).unwrap();
        assert_eq!((pp.base, pp.exponent), (big(12), 1));
        let pp = perfect_power_decompose(&big(-64)).unwrap();
        assert_eq!((pp.base, pp.exponent), (big(-4), 3));
        assert!(perfect_power_decompose(&big(1)).is_err());
        assert!(perfect_power_decompose(&big(0)).is_err());
        assert!(perfect_power_decompose(&big(-1)).is_err());
    }

    #[test]
    fn perfect_power_exponent_matches_factorization() {
        for v in (-5000i64..=5000).filter(|v| v.abs() >= 2) {
            let a = big(v);
            let pp = perfect_power_decompose(&a).unwrap();
            assert_eq!(pp.base.pow(pp.exponent), a);
            let g = factorize(&a, DEFAULT_TRIAL_BOUND).unwrap().exponent_gcd();
            let expected = if v > 0 { g } else { g >> g.trailing_zeros() };
            assert_eq!(pp.exponent, expected, "a={v}");
            if pp.base.abs() > BigInt::one() {
                assert_eq!(perfect_power_decompose(&pp.base).unwrap().exponent, 1);
            }
        }
    }

    #[test]
    fn property_p_examples() {
        assert_eq!(property_p_decompose(&big(59049), 25).unwrap(), Some((big(9), 5)));
        assert_eq!(property_p_decompose(&big(1679616), 25).unwrap(), None);
        assert_eq!(property_p_decompose(&big(16), 8).unwrap(), Some((big(2), 4)));
        assert_eq!(property_p_decompose(&big(-64), 12).unwrap(), Some((big(-4), 3)));
    }

    #[test]
    fn property_p_decompose_invariants() {
        for v in (-3000i64..=3000).filter(|v| v.abs() >= 2) {
            for n in 2u32..=12 {
                if let Some((b, m)) = property_p_decompose(&big(v), n).unwrap() {
                    assert_eq!(b.pow(m), big(v));
                    assert!(m >= 2 && n % m == 0);
                }
            }
        }
    }

    #[test]
    fn property_p_predicate() {
        let p = |b: i64, n: u32| has_property_p(&big(b), n, DEFAULT_TRIAL_BOUND).unwrap();
        assert!(p(2, 4));
        assert!(p(6, 4));
        assert!(p(18, 2));
        assert!(!p(4, 2));
        assert!(!p(9, 6));
        // 36 = (2*3)^2: d = 2 shares a factor with even n, not with odd n.
        assert!(!p(36, 4));
        assert!(p(36, 5));
    }

    #[test]
    fn helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(25), vec![1, 5, 25]);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(17), 16);
        assert_eq!(split_two_power(24), (3, 3));
        assert_eq!(split_two_power(7), (0, 7));
    }
}
