//! Reducibility of binomials `x^n - a` over the rationals and integers.
//!
//! `x^n - a` is reducible exactly when `a = b^t` for some `t | n`, `t > 1`,
//! or `4 | n` and `a = -4 b^4`. [`decide`] collects every witness of either
//! branch; [`factor_once`] turns the first one into an explicit
//! [`Certificate`] whose product is re-verified before it is returned.

mod certificate;
mod document;

pub use certificate::{
    factor_deep, factor_once, factor_plus_bm, verify_certificate, Certificate, CertifiedFactor,
    Provenance,
};
pub use document::{witness_to_json, CertificateDocument, DocumentError};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, divisors, factorize, nth_root_exact, ArithError, DEFAULT_TRIAL_BOUND};
use crate::polyring::{IntPoly, PolyError};

/// Odd `k` are searched up to this bound by [`selmer_parity_certificate`].
pub const SELMER_K_MAX: u64 = 99;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapelliError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("x^{n} + {b}^{m} lies in the exception class x^n + b^(2^r); use the Sophie-Germain path")]
    ExceptionClass { n: u32, b: BigInt, m: u32 },
    #[error("x^{n} - {a} is irreducible: no factorization exists")]
    Irreducible { n: u32, a: BigInt },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Reducible,
    Irreducible,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Reducible => "REDUCIBLE",
            Decision::Irreducible => "IRREDUCIBLE",
        })
    }
}

/// Evidence attached to a [`Verdict`]. `T` is the scalar type of the
/// binomial's constant: [`BigInt`] for [`decide`], [`BigRational`] for
/// [`decide_rational`]. Eisenstein and Selmer witnesses always refer to the
/// integer-normalized binomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness<T = BigInt> {
    /// `a = base^t` with `t | n`, `t > 1`.
    PerfectPower { base: T, t: u32 },
    /// `4 | n` and `a = -4 b^4`, `b > 0`.
    SophieGermain { b: T },
    /// `p | a`, `p^2` does not divide `a`.
    Eisenstein { p: BigInt },
    /// `base(k^2) = 2 (mod 4)` with `base(x^2) = x^n - a`.
    SelmerParity { k: u64, base: IntPoly },
    /// `|a| = 1`: `x^n - 1` or `x^n + 1` with `n` not a power of two.
    UnitConstant,
    /// `a = 0`.
    ZeroConstant,
}

impl<T> Witness<T> {
    pub fn proves_reducible(&self) -> bool {
        matches!(
            self,
            Witness::PerfectPower { .. }
                | Witness::SophieGermain { .. }
                | Witness::UnitConstant
                | Witness::ZeroConstant
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Witness::PerfectPower { .. } => "perfect_power",
            Witness::SophieGermain { .. } => "sophie_germain",
            Witness::Eisenstein { .. } => "eisenstein",
            Witness::SelmerParity { .. } => "selmer_parity",
            Witness::UnitConstant => "unit_constant",
            Witness::ZeroConstant => "zero_constant",
        }
    }
}

impl<T: fmt::Display + Signed> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::PerfectPower { base, t } => {
                let text = base.to_string();
                if base.is_negative() || text.contains('/') {
                    write!(f, "a = ({text})^{t}")
                } else {
                    write!(f, "a = {text}^{t}")
                }
            }
            Witness::SophieGermain { b } => write!(f, "Sophie-Germain, a = -4·{b}^4"),
            Witness::Eisenstein { p } => write!(f, "Eisenstein at p={p}"),
            Witness::SelmerParity { k, base } => {
                write!(f, "Selmer parity: g({k}^2) = 2 (mod 4) for g = {base}")
            }
            Witness::UnitConstant => write!(f, "|a| = 1, cyclotomic split"),
            Witness::ZeroConstant => write!(f, "a = 0, x divides"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T = BigInt> {
    pub decision: Decision,
    pub witnesses: Vec<Witness<T>>,
}

impl<T> Verdict<T> {
    pub fn is_reducible(&self) -> bool {
        self.decision == Decision::Reducible
    }

    /// First witness that proves reducibility, in canonical order.
    pub fn constructive_witness(&self) -> Option<&Witness<T>> {
        self.witnesses.iter().find(|w| w.proves_reducible())
    }

    /// First witness certifying irreducibility, if any.
    pub fn irreducibility_certificate(&self) -> Option<&Witness<T>> {
        self.witnesses.iter().find(|w| !w.proves_reducible())
    }

    fn from_witnesses(witnesses: Vec<Witness<T>>) -> Self {
        let decision = if witnesses.iter().any(Witness::proves_reducible) {
            Decision::Reducible
        } else {
            Decision::Irreducible
        };
        Self { decision, witnesses }
    }
}

/// `x^n - a` with `a` rational in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub n: u32,
    pub a: BigRational,
}

impl Binomial {
    pub fn new(n: u32, a: BigRational) -> Result<Self, CapelliError> {
        check_degree(n)?;
        Ok(Self { n, a })
    }

    /// The integer `A` with `x^n - a` reducible over Q iff `y^n - A` is
    /// reducible over Z.
    pub fn normalized(&self) -> BigInt {
        reduce_to_integer(self.n, &self.a)
    }

    pub fn decide(&self) -> Result<Verdict<BigRational>, CapelliError> {
        decide_rational(self.n, &self.a)
    }
}

fn check_degree(n: u32) -> Result<(), CapelliError> {
    if n < 2 {
        return Err(CapelliError::Domain(format!("binomial degree must be >= 2, got {n}")));
    }
    Ok(())
}

/// For `a = b/c` in lowest terms, `A = c^(n-1) b`: `c^n (x^n - a) = (cx)^n - A`.
pub fn reduce_to_integer(n: u32, a: &BigRational) -> BigInt {
    a.denom().pow(n.saturating_sub(1)) * a.numer()
}


/// Decides `x^n - a` over Z with the default trial-division bound.
pub fn decide(n: u32, a: &BigInt) -> Result<Verdict, CapelliError> {
    decide_with_bound(n, a, DEFAULT_TRIAL_BOUND)
}

pub fn decide_with_bound(n: u32, a: &BigInt, trial_bound: u64) -> Result<Verdict, CapelliError> {
    check_degree(n)?;
    if a.is_zero() {
        return Ok(Verdict::from_witnesses(vec![Witness::ZeroConstant]));
    }

    let mut witnesses = Vec::new();
    if a.abs().is_one() {
        if a.is_positive() || !n.is_power_of_two() {
            witnesses.push(Witness::UnitConstant);
        }
    } else {
        for t in divisors(n).into_iter().filter(|&t| t > 1) {
            if let Some(base) = nth_root_exact(a, t) {
                witnesses.push(Witness::PerfectPower { base, t });
            }
        }
        if let Some(b) = sophie_germain_base(n, a) {
            witnesses.push(Witness::SophieGermain { b });
        }
    }

    let mut verdict = Verdict::from_witnesses(witnesses);
    if !verdict.is_reducible() {
        if let Some(w) = irreducibility_witness(n, a, trial_bound) {
            verdict.witnesses.push(w);
        }
    }
    Ok(verdict)
}

/// `b > 0` with `a = -4 b^4`, when `4 | n`.
fn sophie_germain_base(n: u32, a: &BigInt) -> Option<BigInt> {
    if !n.is_multiple_of(4) || !a.is_negative() {
        return None;
    }
    let four = BigInt::from(4);
    let (q, r) = (-a).div_rem(&four);
    if !r.is_zero() {
        return None;
    }
    nth_root_exact(&q, 4).map(|b| b.abs())
}

/// Eisenstein when available, otherwise a Selmer parity witness on
/// `g = x^(n/2) - a` for even `n`. Factorization beyond the trial bound
/// only means no Eisenstein certificate is attached.
fn irreducibility_witness<T>(n: u32, a: &BigInt, trial_bound: u64) -> Option<Witness<T>> {
    if a.abs() >= BigInt::from(2) {
        if let Ok(Some(p)) = eisenstein_witness_with_bound(n, a, trial_bound) {
            return Some(Witness::Eisenstein { p });
        }
    }
    if n.is_multiple_of(2) {
        let base = IntPoly::binomial((n / 2) as usize, a);
        if let Some(k) = selmer_parity_certificate(&base) {
            return Some(Witness::SelmerParity { k, base });
        }
    }
    None
}

/// `Some(r)` with `r^t = q`, requiring both numerator and denominator to be
/// exact `t`-th powers.
fn rational_root_exact(q: &BigRational, t: u32) -> Option<BigRational> {
    let num = nth_root_exact(q.numer(), t)?;
    let den = nth_root_exact(q.denom(), t)?;
    Some(BigRational::new(num, den))
}

/// Decides `x^n - a` directly over Q.
pub fn decide_rational(n: u32, a: &BigRational) -> Result<Verdict<BigRational>, CapelliError> {
    decide_rational_with_bound(n, a, DEFAULT_TRIAL_BOUND)
}

pub fn decide_rational_with_bound(
    n: u32,
    a: &BigRational,
    trial_bound: u64,
) -> Result<Verdict<BigRational>, CapelliError> {
    check_degree(n)?;
    if a.is_zero() {
        return Ok(Verdict::from_witnesses(vec![Witness::ZeroConstant]));
    }

    let mut witnesses = Vec::new();
    if a.abs().is_one() {
        if a.is_positive() || !n.is_power_of_two() {
            witnesses.push(Witness::UnitConstant);
        }
    } else {
        for t in divisors(n).into_iter().filter(|&t| t > 1) {
            if let Some(base) = rational_root_exact(a, t) {
                witnesses.push(Witness::PerfectPower { base, t });
            }
        }
        if n.is_multiple_of(4) && a.is_negative() {
            let quarter = -a / BigRational::from_integer(BigInt::from(4));
            if let Some(b) = rational_root_exact(&quarter, 4) {
                witnesses.push(Witness::SophieGermain { b: b.abs() });
            }
        }
    }

    let mut verdict = Verdict::from_witnesses(witnesses);
    if !verdict.is_reducible() {
        let normalized = reduce_to_integer(n, a);
        if let Some(w) = irreducibility_witness(n, &normalized, trial_bound) {
            verdict.witnesses.push(w);
        }
    }
    Ok(verdict)
}

/// A prime `p` with `p | a` and `p^2` not dividing `a`, which makes
/// `x^n - a` irreducible.
pub fn eisenstein_witness(n: u32, a: &BigInt) -> Result<Option<BigInt>, CapelliError> {
    eisenstein_witness_with_bound(n, a, DEFAULT_TRIAL_BOUND)
}

pub fn eisenstein_witness_with_bound(
    n: u32,
    a: &BigInt,
    trial_bound: u64,
) -> Result<Option<BigInt>, CapelliError> {
    if n < 1 {
        return Err(CapelliError::Domain("Eisenstein needs n >= 1".into()));
    }
    if a.abs() < BigInt::from(2) {
        return Err(CapelliError::Domain(format!("Eisenstein needs |a| >= 2, got {a}")));
    }
    let f = factorize(a, trial_bound)?;
    Ok(f.factors.into_iter().find(|(_, e)| *e == 1).map(|(p, _)| p))
}

/// First odd `k <= SELMER_K_MAX` with `g(k^2) = 2 (mod 4)`. For irreducible
/// `g` this proves `g(x^2)` irreducible; `None` is inconclusive.
pub fn selmer_parity_certificate(g: &IntPoly) -> Option<u64> {
    let four = BigInt::from(4);
    let two = BigInt::from(2);
    (1..=SELMER_K_MAX)
        .step_by(2)
        .find(|&k| g.eval(&BigInt::from(k * k)).mod_floor(&four) == two)
}

/// Checks `g(x^2) = (-1)^n g1(x) g1(-x)` and the equivalent
/// difference-of-squares form `g(x^2) = f1(x)^2 - f2(x)^2`, where `f1` is
/// the part of `g1` with the parity of `n` and `f2` the rest.
pub fn selmer_split_check(g: &IntPoly, g1: &IntPoly) -> Result<bool, CapelliError> {
    let (Some(n), Some(n1)) = (g.degree(), g1.degree()) else {
        return Err(CapelliError::Domain("Selmer split needs nonzero polynomials".into()));
    };
    if n != n1 {
        return Err(CapelliError::Domain(format!(
            "Selmer split needs deg g1 = deg g, got {n1} and {n}"
        )));
    }
    let lhs = g.substitute_power(2);

    let mut product = g1 * &g1.reflect();
    if n % 2 == 1 {
        product = -&product;
    }

    let (f1, f2) = difference_of_squares(g1);
    let squares = &(&f1 * &f1) - &(&f2 * &f2);

    Ok(lhs == product && lhs == squares)
}

/// `(f1, f2)` for `g1`: `f1` collects the terms whose degree has the parity
/// of `deg g1`, so `(-1)^n g1(x) g1(-x) = f1^2 - f2^2`.
pub fn difference_of_squares(g1: &IntPoly) -> (IntPoly, IntPoly) {
    let (even, odd) = g1.parity_parts();
    match g1.degree() {
        Some(d) if d % 2 == 1 => (odd, even),
        _ => (even, odd),
    }
}

/// Property-P check exposed for the lemma sweeps.
pub fn has_property_p(b: &BigInt, n: u32, trial_bound: u64) -> Result<bool, CapelliError> {
    Ok(arith::has_property_p(b, n, trial_bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_integer(3, &rat(2, 3)), big(18));
        assert_eq!(reduce_to_integer(4, &rat(7, 1)), big(7));
        assert_eq!(reduce_to_integer(2, &rat(-1, 4)), big(-4));
    }

    #[test]
    fn decide_worked_instances() {
        let v = decide(25, &big(59049)).unwrap();
        assert!(v.is_reducible());
        assert_eq!(v.witnesses, vec![Witness::PerfectPower { base: big(9), t: 5 }]);

        let v = decide(25, &big(1679616)).unwrap();
        assert_eq!(v.decision, Decision::Irreducible);
        let v = decide(25, &big(-1679616)).unwrap();
        assert_eq!(v.decision, Decision::Irreducible);

        let v = decide(4, &big(-4)).unwrap();
        assert_eq!(v.witnesses, vec![Witness::SophieGermain { b: big(1) }]);
    }

    #[test]
    fn decide_both_branches() {
        let v = decide(12, &big(-64)).unwrap();
        assert_eq!(
            v.witnesses,
            vec![
                Witness::PerfectPower { base: big(-4), t: 3 },
                Witness::SophieGermain { b: big(2) },
            ]
        );
    }

    #[test]
    fn decide_edge_constants() {
        assert_eq!(decide(8, &big(1)).unwrap().witnesses, vec![Witness::UnitConstant]);
        let v = decide(8, &big(-1)).unwrap();
        assert_eq!(v.decision, Decision::Irreducible);
        // x^8 + 1 = g(x^2) with g = x^4 + 1, g(1) = 2.
        assert_eq!(
            v.witnesses,
            vec![Witness::SelmerParity { k: 1, base: p(&[1, 0, 0, 0, 1]) }]
        );
        assert!(decide(6, &big(-1)).unwrap().is_reducible());
        assert!(!decide(2, &big(-1)).unwrap().is_reducible());
        assert_eq!(decide(3, &big(0)).unwrap().witnesses, vec![Witness::ZeroConstant]);
        assert!(matches!(decide(1, &big(5)), Err(CapelliError::Domain(_))));
    }

    #[test]
    fn decide_attaches_eisenstein() {
        let v = decide(5, &big(7)).unwrap();
        assert_eq!(v.witnesses, vec![Witness::Eisenstein { p: big(7) }]);
        assert_eq!(v.irreducibility_certificate(), Some(&Witness::Eisenstein { p: big(7) }));
    }

    #[test]
    fn decide_lists_every_perfect_power() {
        let v = decide(4, &big(16)).unwrap();
        assert_eq!(
            v.witnesses,
            vec![
                Witness::PerfectPower { base: big(4), t: 2 },
                Witness::PerfectPower { base: big(2), t: 4 },
            ]
        );
    }

    #[test]
    fn decide_rational_examples() {
        let v = decide_rational(2, &rat(9, 4)).unwrap();
        assert_eq!(v.witnesses, vec![Witness::PerfectPower { base: rat(3, 2), t: 2 }]);

        let v = decide_rational(3, &rat(2, 3)).unwrap();
        assert_eq!(v.decision, Decision::Irreducible);
        assert_eq!(v.witnesses, vec![Witness::Eisenstein { p: big(2) }]);

        let v = decide_rational(4, &rat(-1, 4)).unwrap();
        assert_eq!(v.witnesses, vec![Witness::SophieGermain { b: rat(1, 2) }]);
        assert!(decide(4, &reduce_to_integer(4, &rat(-1, 4))).unwrap().is_reducible());
    }

    #[test]
    fn binomial_wrapper() {
        let b = Binomial::new(3, rat(2, 3)).unwrap();
        assert_eq!(b.normalized(), big(18));
        assert_eq!(b.decide().unwrap().decision, Decision::Irreducible);
        assert!(Binomial::new(1, rat(2, 3)).is_err());
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_witness(5, &big(12)).unwrap(), Some(big(3)));
        assert_eq!(eisenstein_witness(5, &big(4)).unwrap(), None);
        assert_eq!(eisenstein_witness(3, &big(18)).unwrap(), Some(big(2)));
        assert_eq!(eisenstein_witness(3, &big(-18)).unwrap(), Some(big(2)));
        assert!(eisenstein_witness(3, &big(1)).is_err());
    }

    #[test]
    fn selmer_parity_examples() {
        assert_eq!(selmer_parity_certificate(&p(&[81, 0, 0, 0, 0, 1])), Some(1));
        assert_eq!(selmer_parity_certificate(&p(&[4, 0, 1])), None);
        assert_eq!(selmer_parity_certificate(&p(&[1, 1])), Some(1));
    }

    #[test]
    fn selmer_split_examples() {
        assert!(selmer_split_check(&p(&[4, 1]), &p(&[2, -2, 1])).is_err());
        assert!(selmer_split_check(&p(&[4, 0, 1]), &p(&[2, -2, 1])).is_ok());
        // g = x^2 + 4, deg 2: g(x^2) = x^4 + 4 = g1(x) g1(-x).
        assert!(selmer_split_check(&p(&[4, 0, 1]), &p(&[2, -2, 1])).unwrap());
        assert!(!selmer_split_check(&p(&[4, 0, 1]), &p(&[1, 0, 1])).unwrap());
        // g = x + 2: x^2 + 2 is irreducible, so no degree-1 g1 works.
        for c in -5..=5 {
            for lead in [-2, -1, 1, 2] {
                assert!(!selmer_split_check(&p(&[2, 1]), &p(&[c, lead])).unwrap());
            }
        }
    }

    #[test]
    fn selmer_split_odd_degree() {
        // g(x) = x - 4 gives g(x^2) = x^2 - 4 = -(x - 2)(-x - 2).
        assert!(selmer_split_check(&p(&[-4, 1]), &p(&[-2, 1])).unwrap());
        let (f1, f2) = difference_of_squares(&p(&[-2, 1]));
        assert_eq!((f1, f2), (p(&[0, 1]), p(&[-2])));
    }

    #[test]
    fn witness_display() {
        assert_eq!(Witness::PerfectPower { base: big(9), t: 5 }.to_string(), "a = 9^5");
        assert_eq!(Witness::PerfectPower { base: big(-4), t: 3 }.to_string(), "a = (-4)^3");
        assert_eq!(
            Witness::<BigInt>::SophieGermain { b: big(1) }.to_string(),
            "Sophie-Germain, a = -4·1^4"
        );
        assert_eq!(Witness::<BigInt>::Eisenstein { p: big(7) }.to_string(), "Eisenstein at p=7");
    }
}
