//! Explicit factorizations of reducible binomials and their verification.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{decide, CapelliError, Decision, Verdict, Witness};
use crate::arith::{divisors, split_two_power};
use crate::polyring::{cyclotomic, scaled_cyclotomic, IntPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    GeometricSum,
    ScaledCyclotomic,
    SophieGermain,
    Cyclotomic,
    OracleRefined,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::GeometricSum => "geometric_sum",
            Provenance::ScaledCyclotomic => "scaled_cyclotomic",
            Provenance::SophieGermain => "sophie_germain",
            Provenance::Cyclotomic => "cyclotomic",
            Provenance::OracleRefined => "oracle_refined",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "geometric_sum" => Provenance::GeometricSum,
            "scaled_cyclotomic" => Provenance::ScaledCyclotomic,
            "sophie_germain" => Provenance::SophieGermain,
            "cyclotomic" => Provenance::Cyclotomic,
            "oracle_refined" => Provenance::OracleRefined,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedFactor {
    pub poly: IntPoly,
    pub provenance: Provenance,
}

/// A target polynomial and proper factors whose exact product is the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: IntPoly,
    pub factors: Vec<CertifiedFactor>,
}

impl Certificate {
    /// Builds a certificate and checks it, so a returned value is always valid.
    pub fn checked(
        target: IntPoly,
        factors: impl IntoIterator<Item = (IntPoly, Provenance)>,
    ) -> Result<Self, CapelliError> {
        let cert = Certificate {
            target,
            factors: factors
                .into_iter()
                .map(|(poly, provenance)| CertifiedFactor { poly, provenance })
                .collect(),
        };
        if !verify_certificate(&cert) {
            return Err(CapelliError::Invariant(format!(
                "certificate for {} does not verify",
                cert.target
            )));
        }
        Ok(cert)
    }

    pub fn polys(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|f| &f.poly)
    }
}

/// Recomputes the product and checks every factor degree is proper.
pub fn verify_certificate(cert: &Certificate) -> bool {
    let Some(target_deg) = cert.target.degree() else {
        return false;
    };
    let proper = cert
        .factors
        .iter()
        .all(|f| f.poly.degree().is_some_and(|d| d > 0 && d < target_deg));
    proper && cert.factors.len() >= 2 && IntPoly::product(cert.polys()) == cert.target
}

/// `sum_{j<t} b^j x^(k (t-1-j))`, the cofactor of `x^k - b` in `x^(kt) - b^t`.
fn geometric_cofactor(k: usize, t: u32, b: &BigInt) -> IntPoly {
    let t = t as usize;
    let mut coeffs = vec![BigInt::zero(); k * (t - 1) + 1];
    let mut power = BigInt::one();
    for j in 0..t {
        coeffs[k * (t - 1 - j)] = power.clone();
        power *= b;
    }
    IntPoly::new(coeffs)
}

/// `x^t - 2b x^(t/2) + 2b^2` and `x^t + 2b x^(t/2) + 2b^2` for even `t`.
pub(crate) fn sophie_germain_pair(t: usize, b: &BigInt) -> (IntPoly, IntPoly) {
    let build = |sign: i32| {
        let mut coeffs = vec![BigInt::zero(); t + 1];
        coeffs[t] = BigInt::one();
        coeffs[t / 2] += BigInt::from(2 * sign) * b;
        coeffs[0] += BigInt::from(2) * b * b;
        IntPoly::new(coeffs)
    };
    (build(-1), build(1))
}

fn cyclotomic_split(n: u32, a: &BigInt) -> Vec<IntPoly> {
    if a.is_one() {
        divisors(n).into_iter().map(cyclotomic).collect()
    } else {
        let (n1, u) = split_two_power(n);
        divisors(u)
            .into_iter()
            .map(|d| cyclotomic((1 << (n1 + 1)) * d))
            .collect()
    }
}

/// One explicit split of `x^n - a` from the first constructive witness.
pub fn factor_once(n: u32, a: &BigInt, verdict: &Verdict) -> Result<Certificate, CapelliError> {
    if verdict.decision != Decision::Reducible {
        return Err(CapelliError::Irreducible { n, a: a.clone() });
    }
    let witness = verdict
        .constructive_witness()
        .ok_or_else(|| CapelliError::Invariant("reducible verdict without witness".into()))?;
    let target = IntPoly::binomial(n as usize, a);
    let n_us = n as usize;

    match witness {
        Witness::PerfectPower { base, t } => {
            if !n.is_multiple_of(*t) || &base.pow(*t) != a {
                return Err(CapelliError::Domain(format!(
                    "witness {base}^{t} does not fit x^{n} - {a}"
                )));
            }
            let k = n_us / *t as usize;
            Certificate::checked(
                target,
                [
                    (IntPoly::binomial(k, base), Provenance::GeometricSum),
                    (geometric_cofactor(k, *t, base), Provenance::GeometricSum),
                ],
            )
        }
        Witness::SophieGermain { b } => {
            if !n.is_multiple_of(4) {
                return Err(CapelliError::Domain(format!("Sophie-Germain split needs 4 | {n}")));
            }
            let (lo, hi) = sophie_germain_pair(n_us / 2, b);
            Certificate::checked(
                target,
                [(lo, Provenance::SophieGermain), (hi, Provenance::SophieGermain)],
            )
        }
        Witness::UnitConstant => Certificate::checked(
            target,
            cyclotomic_split(n, a)
                .into_iter()
                .map(|p| (p, Provenance::Cyclotomic)),
        ),
        Witness::ZeroConstant => Certificate::checked(
            target,
            [
                (IntPoly::x(), Provenance::GeometricSum),
                (IntPoly::monomial(BigInt::one(), n_us - 1), Provenance::GeometricSum),
            ],
        ),
        Witness::Eisenstein { .. } | Witness::SelmerParity { .. } => unreachable!(),
    }
}

/// `x^n + b^m` as the product of `scaled_cyclotomic(d, b, n/m, r)` over
/// `d | m1`, where `m = 2^r m1` with `m1` odd and greater than one.
pub fn factor_plus_bm(n: u32, b: &BigInt, m: u32) -> Result<Certificate, CapelliError> {
    if m < 2 || !n.is_multiple_of(m) {
        return Err(CapelliError::Domain(format!("need m >= 2 and m | n, got m={m}, n={n}")));
    }
    if b.is_zero() {
        return Err(CapelliError::Domain("need b != 0".into()));
    }
    let (r, m1) = split_two_power(m);
    if m1 == 1 {
        return Err(CapelliError::ExceptionClass { n, b: b.clone(), m });
    }
    let target = IntPoly::binomial(n as usize, &-b.pow(m));
    let factors = divisors(m1)
        .into_iter()
        .map(|d| Ok((scaled_cyclotomic(d, b, n / m, r)?, Provenance::ScaledCyclotomic)))
        .collect::<Result<Vec<_>, CapelliError>>()?;
    Certificate::checked(target, factors)
}

/// Repeatedly splits binomial factors with [`decide`] and [`factor_once`].
/// Non-binomial cofactors are left as they are.
pub fn factor_deep(n: u32, a: &BigInt) -> Result<Certificate, CapelliError> {
    let verdict = decide(n, a)?;
    let first = factor_once(n, a, &verdict)?;
    let mut out = Vec::new();
    let mut stack: Vec<CertifiedFactor> = first.factors.into_iter().rev().collect();
    while let Some(f) = stack.pop() {
        if let Some((k, c)) = f.poly.as_binomial() {
            if k >= 2 {
                let v = decide(k as u32, &c)?;
                if v.is_reducible() {
                    let sub = factor_once(k as u32, &c, &v)?;
                    stack.extend(sub.factors.into_iter().rev());
                    continue;
                }
            }
        }
        out.push(f);
    }
    Certificate::checked(
        first.target,
        out.into_iter().map(|f| (f.poly, f.provenance)),
    )
}
