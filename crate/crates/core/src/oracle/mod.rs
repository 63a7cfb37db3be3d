//! Brute-force ground truth for `x^n - a` at desk scale.
//!
//! Every proper factor of `x^n - a` is the product of `x - r` over some set
//! of its complex roots `r = |a|^(1/n) * w`, `w^n = sign(a)`. The oracle
//! enumerates conjugation-closed root subsets in order of size, builds each
//! product in fixed-point arithmetic, rounds the coefficients and accepts a
//! candidate only if exact integer division confirms it. Floating values
//! generate candidates; only exact arithmetic judges them.

mod fixed;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::capelli::{Certificate, CertifiedFactor, Provenance};
use crate::polyring::IntPoly;

pub use fixed::{cos_sin_pi_fraction, pi};

/// Largest degree the oracle accepts.
pub const MAX_DEGREE: u32 = 24;
/// Precision doublings allowed before giving up.
pub const MAX_ESCALATIONS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precision exhausted for x^{n} - {a} at {bits} bits")]
    PrecisionExhausted { n: u32, a: BigInt, bits: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Reducible(IntPoly),
    Irreducible,
}

impl OracleVerdict {
    pub fn is_reducible(&self) -> bool {
        matches!(self, OracleVerdict::Reducible(_))
    }
}

/// A complex number `(re + i im) / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
}

/// Fixed-point approximations of the `n` roots of `x^n - a`.
///
/// Root `e` has angle `pi * j / n` with `j = 2e` for `a > 0` and `j = 2e + 1`
/// for `a < 0`, so the roots of `x^n + |a|` are the odd rotations.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub n: u32,
    pub a: BigInt,
    pub precision_bits: u32,
    pub roots: Vec<FixedComplex>,
    modulus_squared: BigInt,
}

type UnitTable = Arc<Vec<(BigInt, BigInt)>>;

/// `(cos, sin)` of `pi * j / n` for `j < 2n`, memoized per `(n, bits)`.
fn unit_table(n: u32, bits: u32) -> UnitTable {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), UnitTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().unwrap().get(&(n, bits)) {
        return hit.clone();
    }
    let table: UnitTable = Arc::new(
        (0..2 * n as u64)
            .map(|j| cos_sin_pi_fraction(j, n as u64, bits))
            .collect(),
    );
    cache.write().unwrap().entry((n, bits)).or_insert(table).clone()
}

impl RootSet {
    pub fn new(n: u32, a: &BigInt, precision_bits: u32) -> Self {
        assert!(n >= 1 && !a.is_zero());
        let modulus = fixed::root_power(a, 1, n, precision_bits);
        let modulus_squared = fixed::root_power(a, 2, n, precision_bits);
        let table = unit_table(n, precision_bits);
        let roots = (0..n as usize)
            .map(|e| {
                let (c, s) = &table[Self::angle_index(a, e)];
                FixedComplex {
                    re: (&modulus * c) >> precision_bits,
                    im: (&modulus * s) >> precision_bits,
                }
            })
            .collect();
        Self {
            n,
            a: a.clone(),
            precision_bits,
            roots,
            modulus_squared,
        }
    }

    fn angle_index(a: &BigInt, e: usize) -> usize {
        if a.is_positive() {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Index of the complex conjugate of root `e`.
    pub fn conjugate(&self, e: usize) -> usize {
        let n = self.n as usize;
        let j = Self::angle_index(&self.a, e);
        let conj = (2 * n - j) % (2 * n);
        if self.a.is_positive() {
            conj / 2
        } else {
            (conj - 1) / 2
        }
    }

    /// `2^(-bits/2)` in fixed units.
    pub fn tolerance(&self) -> BigInt {
        BigInt::one() << (self.precision_bits - self.precision_bits / 2)
    }

    /// Coefficients of `prod (x - r)` over all roots, in fixed point.
    pub fn reconstruct(&self) -> Vec<FixedComplex> {
        let bits = self.precision_bits;
        let one = BigInt::one() << bits;
        let mut poly = vec![FixedComplex { re: one, im: BigInt::zero() }];
        for r in &self.roots {
            let mut next = vec![FixedComplex::default(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1].re += &c.re;
                next[i + 1].im += &c.im;
                // -(c * r)
                next[i].re -= (&c.re * &r.re - &c.im * &r.im) >> bits;
                next[i].im -= (&c.re * &r.im + &c.im * &r.re) >> bits;
            }
            poly = next;
        }
        poly
    }

    /// Largest coefficient deviation of [`reconstruct`](Self::reconstruct)
    /// from `x^n - a`, in fixed units.
    pub fn reconstruction_error(&self) -> BigInt {
        let bits = self.precision_bits;
        let target = IntPoly::binomial(self.n as usize, &self.a);
        self.reconstruct()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let want = target.coeff(i) << bits;
                (&c.re - want).abs().max(c.im.abs())
            })
            .max()
            .unwrap_or_default()
    }

    /// Real fixed-point factor for a conjugation orbit: `x - r` for a real
    /// root, `x^2 - 2 Re(r) x + |r|^2` for a conjugate pair.
    fn orbit_factor(&self, e: usize) -> Vec<BigInt> {
        let one = BigInt::one() << self.precision_bits;
        let r = &self.roots[e];
        if self.conjugate(e) == e {
            vec![-&r.re, one]
        } else {
            vec![self.modulus_squared.clone(), &r.re * BigInt::from(-2), one]
        }
    }
}

fn fixed_mul(p: &[BigInt], q: &[BigInt], bits: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out.into_iter().map(|c| c >> bits).collect()
}

/// Starting precision `max(128, 4 (n + bitlength |a|))`.
pub fn initial_precision(n: u32, a: &BigInt) -> u32 {
    (4 * (n + a.bits() as u32)).max(128)
}

struct Candidate {
    roots: Vec<usize>,
    poly: Vec<BigInt>,
}

enum Scan {
    Found(IntPoly, Vec<usize>),
    Nothing,
    Suspicious,
}

/// All conjugation-closed subsets of `roots` with at most `roots.len() / 2`
/// elements, sorted by size and then lexicographically.
fn closed_subsets(rs: &RootSet, roots: &[usize]) -> Vec<Candidate> {
    let orbits: Vec<Vec<usize>> = roots
        .iter()
        .filter_map(|&e| {
            let c = rs.conjugate(e);
            debug_assert!(roots.contains(&c), "root set is not conjugation-closed");
            match c.cmp(&e) {
                std::cmp::Ordering::Equal => Some(vec![e]),
                std::cmp::Ordering::Greater => Some(vec![e, c]),
                std::cmp::Ordering::Less => None,
            }
        })
        .collect();
    let factors: Vec<Vec<BigInt>> = orbits.iter().map(|o| rs.orbit_factor(o[0])).collect();
    let limit = roots.len() / 2;

    fn walk(
        start: usize,
        current: &Candidate,
        orbits: &[Vec<usize>],
        factors: &[Vec<BigInt>],
        limit: usize,
        bits: u32,
        out: &mut Vec<Candidate>,
    ) {
        for i in start..orbits.len() {
            if current.roots.len() + orbits[i].len() > limit {
                continue;
            }
            let mut roots = current.roots.clone();
            roots.extend(&orbits[i]);
            let next = Candidate {
                roots,
                poly: fixed_mul(&current.poly, &factors[i], bits),
            };
            walk(i + 1, &next, orbits, factors, limit, bits, out);
            out.push(next);
        }
    }

    let empty = Candidate {
        roots: Vec::new(),
        poly: vec![BigInt::one() << rs.precision_bits],
    };
    let mut out = Vec::new();
    walk(0, &empty, &orbits, &factors, limit, rs.precision_bits, &mut out);
    for c in &mut out {
        c.roots.sort_unstable();
    }
    out.sort_by(|x, y| x.roots.len().cmp(&y.roots.len()).then_with(|| x.roots.cmp(&y.roots)));
    out
}

fn scan(rs: &RootSet, roots: &[usize], target: &IntPoly) -> Scan {
    let bits = rs.precision_bits;
    let quarter = BigInt::one() << (bits - 2);
    let tight = rs.tolerance();
    let mut suspicious = false;
    for cand in closed_subsets(rs, roots) {
        let mut coeffs = Vec::with_capacity(cand.poly.len());
        let mut worst = BigInt::zero();
        for c in &cand.poly {
            let (r, d) = fixed::round_fixed(c, bits);
            if d > worst {
                worst = d;
            }
            coeffs.push(r);
        }
        if worst > quarter {
            continue;
        }
        let candidate = IntPoly::new(coeffs);
        match target.div_exact(&candidate) {
            Ok(Some(_)) => return Scan::Found(candidate, cand.roots),
            _ if worst <= tight => suspicious = true,
            _ => {}
        }
    }
    if suspicious {
        Scan::Suspicious
    } else {
        Scan::Nothing
    }
}

/// Smallest proper factor of `target`, whose roots are `roots` (indices into
/// the roots of `x^n - a`), together with the roots it accounts for.
fn find_factor(
    n: u32,
    a: &BigInt,
    roots: &[usize],
    target: &IntPoly,
) -> Result<Option<(IntPoly, Vec<usize>)>, OracleError> {
    let mut bits = initial_precision(n, a);
    for _ in 0..=MAX_ESCALATIONS {
        let rs = RootSet::new(n, a, bits);
        match scan(&rs, roots, target) {
            Scan::Found(f, s) => return Ok(Some((f, s))),
            Scan::Nothing => return Ok(None),
            Scan::Suspicious => bits *= 2,
        }
    }
    Err(OracleError::PrecisionExhausted {
        n,
        a: a.clone(),
        bits: bits / 2,
    })
}

fn check_input(n: u32, a: &BigInt) -> Result<(), OracleError> {
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(OracleError::Domain(format!(
            "oracle degree must lie in [2, {MAX_DEGREE}], got {n}"
        )));
    }
    if a.is_zero() {
        return Err(OracleError::Domain("oracle excludes a = 0".into()));
    }
    Ok(())
}

/// First exactly-verified proper factor of `x^n - a`, or irreducible.
pub fn oracle_decide(n: u32, a: &BigInt) -> Result<OracleVerdict, OracleError> {
    check_input(n, a)?;
    let target = IntPoly::binomial(n as usize, a);
    let roots: Vec<usize> = (0..n as usize).collect();
    Ok(match find_factor(n, a, &roots, &target)? {
        Some((f, _)) => OracleVerdict::Reducible(f),
        None => OracleVerdict::Irreducible,
    })
}

/// Complete factorization of `x^n - a` into irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFactorization {
    pub target: IntPoly,
    /// Sorted by degree, then ascending coefficients.
    pub factors: Vec<IntPoly>,
}

impl OracleFactorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    /// A certificate when the target splits, `None` when it is irreducible.
    pub fn to_certificate(&self) -> Option<Certificate> {
        if self.is_irreducible() {
            return None;
        }
        Some(Certificate {
            target: self.target.clone(),
            factors: self
                .factors
                .iter()
                .map(|p| CertifiedFactor {
                    poly: p.clone(),
                    provenance: Provenance::OracleRefined,
                })
                .collect(),
        })
    }
}

pub fn oracle_factor(n: u32, a: &BigInt) -> Result<OracleFactorization, OracleError> {
    check_input(n, a)?;
    let target = IntPoly::binomial(n as usize, a);
    let roots: Vec<usize> = (0..n as usize).collect();
    let mut factors = Vec::new();
    split(n, a, roots, target.clone(), &mut factors)?;
    factors.sort_by(IntPoly::canonical_cmp);
    assert_eq!(IntPoly::product(&factors), target, "oracle factorization does not reconstruct");
    Ok(OracleFactorization { target, factors })
}

fn split(
    n: u32,
    a: &BigInt,
    roots: Vec<usize>,
    poly: IntPoly,
    out: &mut Vec<IntPoly>,
) -> Result<(), OracleError> {
    match find_factor(n, a, &roots, &poly)? {
        None => out.push(poly),
        Some((f, sub)) => {
            let cofactor = poly
                .div_exact(&f)
                .expect("candidate is nonzero")
                .expect("candidate was verified to divide");
            let rest: Vec<usize> = roots.into_iter().filter(|e| !sub.contains(e)).collect();
            split(n, a, sub, f, out)?;
            split(n, a, rest, cofactor, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn decide_examples() {
        assert_eq!(oracle_decide(4, &big(-4)).unwrap(), OracleVerdict::Reducible(p(&[2, -2, 1])));
        assert_eq!(oracle_decide(4, &big(2)).unwrap(), OracleVerdict::Irreducible);
        assert_eq!(oracle_decide(6, &big(64)).unwrap(), OracleVerdict::Reducible(p(&[-2, 1])));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(oracle_decide(1, &big(3)), Err(OracleError::Domain(_))));
        assert!(matches!(oracle_decide(25, &big(3)), Err(OracleError::Domain(_))));
        assert!(matches!(oracle_decide(4, &big(0)), Err(OracleError::Domain(_))));
    }

    #[test]
    fn factor_examples() {
        let f = oracle_factor(4, &big(1)).unwrap();
        assert_eq!(f.factors, vec![p(&[-1, 1]), p(&[1, 1]), p(&[1, 0, 1])]);
        let f = oracle_factor(6, &big(-8)).unwrap();
        assert_eq!(f.factors, vec![p(&[2, 0, 1]), p(&[4, 0, -2, 0, 1])]);
        let f = oracle_factor(5, &big(7)).unwrap();
        assert_eq!(f.factors, vec![p(&[-7, 0, 0, 0, 0, 1])]);
        assert!(f.to_certificate().is_none());
    }

    #[test]
    fn factor_x12_minus_one() {
        let f = oracle_factor(12, &big(1)).unwrap();
        let mut expected: Vec<_> = [1, 2, 3, 4, 6, 12].iter().map(|&d| crate::polyring::cyclotomic(d)).collect();
        expected.sort_by(IntPoly::canonical_cmp);
        assert_eq!(f.factors, expected);
        assert!(crate::capelli::verify_certificate(&f.to_certificate().unwrap()));
    }

    #[test]
    fn conjugation_pairs() {
        let rs = RootSet::new(6, &big(5), 128);
        assert_eq!((0..6).map(|e| rs.conjugate(e)).collect::<Vec<_>>(), vec![0, 5, 4, 3, 2, 1]);
        let rs = RootSet::new(5, &big(-5), 128);
        // angles pi/5, 3pi/5, pi, 7pi/5, 9pi/5
        assert_eq!((0..5).map(|e| rs.conjugate(e)).collect::<Vec<_>>(), vec![4, 3, 2, 1, 0]);
    }

    #[test]
    fn roots_reconstruct_binomial() {
        for (n, a) in [(2u32, 3i64), (5, -7), (12, 200), (24, -1_000_000), (17, 999_983)] {
            let a = big(a);
            let rs = RootSet::new(n, &a, initial_precision(n, &a));
            assert_eq!(rs.roots.len(), n as usize);
            assert!(rs.reconstruction_error() <= rs.tolerance(), "n={n} a={a}");
        }
    }

    #[test]
    fn degree_24_instances() {
        // x^24 + 64 = x^24 - (-4)^3
        assert!(oracle_decide(24, &big(-64)).unwrap().is_reducible());
        assert_eq!(oracle_decide(24, &big(-3)).unwrap(), OracleVerdict::Irreducible);
    }
}
