//! Grid validation: the decision procedure against the brute-force oracle,
//! plus empirical checks of the necessary conditions and characterizations
//! the decision procedure rests on.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, factorize, nth_root_exact, ArithError, DEFAULT_TRIAL_BOUND};
use crate::capelli::{
    decide_with_bound, eisenstein_witness_with_bound, factor_once, selmer_parity_certificate,
    CapelliError, Decision, Witness,
};
use crate::oracle::{self, oracle_decide, OracleError};
use crate::polyring::IntPoly;

/// Largest `|a|` the sweep accepts.
pub const MAX_SWEEP_CONSTANT: i64 = 1_000_000;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid grid: {0}")]
    Bounds(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// A failure to evaluate a cell within resource bounds.
#[derive(Debug, Clone, Error)]
pub enum CellError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Capelli(#[from] CapelliError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub a_min: i64,
    pub a_max: i64,
    pub jobs: usize,
    pub trial_bound: u64,
}

impl SweepConfig {
    /// `n in [2, n_max]`, `a in [-a_max, a_max]`.
    pub fn symmetric(n_max: u32, a_max: i64) -> Self {
        Self {
            n_min: 2,
            n_max,
            a_min: -a_max,
            a_max,
            jobs: 1,
            trial_bound: DEFAULT_TRIAL_BOUND,
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(SweepError::Bounds(format!(
                "need 2 <= n_min <= n_max, got [{}, {}]",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > oracle::MAX_DEGREE {
            return Err(SweepError::Bounds(format!(
                "n_max = {} exceeds the oracle bound {}",
                self.n_max,
                oracle::MAX_DEGREE
            )));
        }
        if self.a_min > self.a_max
            || self.a_min.abs() > MAX_SWEEP_CONSTANT
            || self.a_max.abs() > MAX_SWEEP_CONSTANT
        {
            return Err(SweepError::Bounds(format!(
                "need a_min <= a_max within +-{MAX_SWEEP_CONSTANT}, got [{}, {}]",
                self.a_min, self.a_max
            )));
        }
        if self.jobs == 0 {
            return Err(SweepError::Bounds("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn cells(&self) -> Vec<(u32, i64)> {
        (self.n_min..=self.n_max)
            .flat_map(|n| (self.a_min..=self.a_max).filter(|&a| a != 0).map(move |a| (n, a)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u32,
    pub a: String,
    pub theorem: Decision,
    pub oracle: Decision,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaResult {
    pub name: String,
    pub checked: usize,
    pub counterexamples: Vec<String>,
}

impl LemmaResult {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n_min: u32,
    pub n_max: u32,
    pub a_min: i64,
    pub a_max: i64,
    pub cells: usize,
    pub mismatches: Vec<Mismatch>,
    pub lemma_results: Vec<LemmaResult>,
    /// Cells or lemma instances that could not be evaluated.
    pub errors: Vec<String>,
    pub elapsed: f64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.errors.is_empty() && self.lemma_results.iter().all(LemmaResult::passed)
    }
}

/// Thread-safe memo of oracle decisions.
#[derive(Default)]
pub struct OracleCache {
    table: Mutex<HashMap<(u32, BigInt), bool>>,
}

impl OracleCache {
    pub fn reducible(&self, n: u32, a: &BigInt) -> Result<bool, OracleError> {
        if let Some(&hit) = self.table.lock().unwrap().get(&(n, a.clone())) {
            return Ok(hit);
        }
        let value = oracle_decide(n, a)?.is_reducible();
        self.table.lock().unwrap().insert((n, a.clone()), value);
        Ok(value)
    }
}

fn decision(reducible: bool) -> Decision {
    if reducible {
        Decision::Reducible
    } else {
        Decision::Irreducible
    }
}

/// One grid cell: theorem decision against oracle decision.
pub fn check_cell(
    n: u32,
    a: &BigInt,
    trial_bound: u64,
    cache: &OracleCache,
) -> Result<Option<Mismatch>, CellError> {
    let theorem = decide_with_bound(n, a, trial_bound)?.decision;
    let oracle = decision(cache.reducible(n, a)?);
    Ok((theorem != oracle).then(|| Mismatch {
        n,
        a: a.to_string(),
        theorem,
        oracle,
    }))
}

/// Necessary condition: if `x^n + a` or `x^n - a` is reducible for `a > 1`,
/// the gcd `g` of the prime exponents of `a` is at least 2 and shares a
/// factor with `n`.
pub fn check_lemma_gcd(
    ns: impl IntoIterator<Item = u32>,
    a_max: i64,
    trial_bound: u64,
    cache: &OracleCache,
) -> Result<LemmaResult, CellError> {
    let mut result = LemmaResult {
        name: "gcd of prime exponents (necessary condition)".into(),
        checked: 0,
        counterexamples: Vec::new(),
    };
    for n in ns {
        for a in 2..=a_max {
            let a = BigInt::from(a);
            for signed in [a.clone(), -a.clone()] {
                if !cache.reducible(n, &signed)? {
                    continue;
                }
                result.checked += 1;
                let g = factorize(&a, trial_bound)?.exponent_gcd();
                if g < 2 || g.gcd(&n) <= 1 {
                    result
                        .counterexamples
                        .push(format!("x^{n} - ({signed}) reducible but exponent gcd {g}"));
                }
            }
        }
    }
    Ok(result)
}

/// If `x^n + b^(2^r)` is reducible with `b` having property P and `2^r | n`,
/// then `b` and `n / 2^r` are both even.
pub fn check_corollary_even(
    ns: impl IntoIterator<Item = u32>,
    a_max: i64,
    trial_bound: u64,
    cache: &OracleCache,
) -> Result<LemmaResult, CellError> {
    let mut result = LemmaResult {
        name: "x^n + b^(2^r) reducible => b and n/2^r even".into(),
        checked: 0,
        counterexamples: Vec::new(),
    };
    for n in ns {
        let (max_r, _) = arith::split_two_power(n);
        for r in 1..=max_r {
            let m = 1u32 << r;
            for a in 2..=a_max {
                let a = BigInt::from(a);
                let Some(b) = nth_root_exact(&a, m) else { continue };
                if b < BigInt::from(2) || !arith::has_property_p(&b, n, trial_bound)? {
                    continue;
                }
                if !cache.reducible(n, &-a.clone())? {
                    continue;
                }
                result.checked += 1;
                if !(b.is_even() && (n / m).is_multiple_of(2)) {
                    result
                        .counterexamples
                        .push(format!("x^{n} + {b}^{m} reducible with b or n/m odd"));
                }
            }
        }
    }
    Ok(result)
}

/// Grid for the `x^(2^r t) + b^(2^r)` characterization.
#[derive(Debug, Clone, Copy)]
pub struct SophieGermainGrid {
    pub t_max: u32,
    pub r_max: u32,
    pub b_max: u32,
    pub n_max: u32,
}

impl Default for SophieGermainGrid {
    fn default() -> Self {
        Self {
            t_max: 6,
            r_max: 3,
            b_max: 20,
            n_max: oracle::MAX_DEGREE,
        }
    }
}

fn is_twice_square(b: u32) -> bool {
    b.is_multiple_of(2) && nth_root_exact(&BigInt::from(b / 2), 2).is_some()
}

/// `x^t - 2d x^(t/2) + 2d^2` and `x^t + 2d x^(t/2) + 2d^2`, assembled from
/// monomials independently of the certificate builder.
fn displayed_pair(t: usize, d: &BigInt) -> (IntPoly, IntPoly) {
    let lead = IntPoly::monomial(BigInt::from(1), t);
    let middle = IntPoly::monomial(BigInt::from(2) * d, t / 2);
    let constant = IntPoly::constant(BigInt::from(2) * d * d);
    let base = &lead + &constant;
    (&base - &middle, &base + &middle)
}

/// For `b` with property P, `x^(2^r t) + b^(2^r)` is reducible exactly when
/// `t` is even, `r = 1` and `b = 2 d^2`; in that case the certificate from
/// [`factor_once`] is the pair `x^t -+ 2d x^(t/2) + 2d^2`.
pub fn check_sophie_germain_characterization(
    grid: SophieGermainGrid,
    trial_bound: u64,
    cache: &OracleCache,
) -> Result<LemmaResult, CellError> {
    let mut result = LemmaResult {
        name: "x^(2^r t) + b^(2^r) reducible <=> t even, r = 1, b = 2d^2".into(),
        checked: 0,
        counterexamples: Vec::new(),
    };
    for r in 1..=grid.r_max {
        let m = 1u32 << r;
        for t in 1..=grid.t_max {
            let n = m * t;
            if n > grid.n_max || n < 2 {
                continue;
            }
            for b in 2..=grid.b_max {
                let bb = BigInt::from(b);
                if !arith::has_property_p(&bb, n, trial_bound)? {
                    continue;
                }
                result.checked += 1;
                let a = -bb.pow(m);
                let predicted = t % 2 == 0 && r == 1 && is_twice_square(b);
                let observed = cache.reducible(n, &a)?;
                if predicted != observed {
                    result.counterexamples.push(format!(
                        "x^{n} + {b}^{m}: predicted {}, oracle {}",
                        decision(predicted),
                        decision(observed)
                    ));
                    continue;
                }
                if predicted {
                    let d = nth_root_exact(&BigInt::from(b / 2), 2).expect("b = 2d^2");
                    let verdict = decide_with_bound(n, &a, trial_bound)?;
                    let cert = factor_once(n, &a, &verdict)?;
                    let (lo, hi) = displayed_pair(t as usize, &d);
                    let got: Vec<&IntPoly> = cert.polys().collect();
                    if verdict.constructive_witness() != Some(&Witness::SophieGermain { b: d.clone() })
                        || got != vec![&lo, &hi]
                    {
                        result
                            .counterexamples
                            .push(format!("x^{n} + {b}^{m}: certificate is not the displayed split"));
                    }
                }
            }
        }
    }
    Ok(result)
}

/// For binomials `g = x^m - c` with an Eisenstein witness and a Selmer
/// parity witness, `g(x^2) = x^(2m) - c` must be oracle-irreducible.
pub fn check_selmer_soundness(
    m_max: u32,
    c_max: i64,
    trial_bound: u64,
    cache: &OracleCache,
) -> Result<LemmaResult, CellError> {
    let mut result = LemmaResult {
        name: "Selmer parity certificate soundness".into(),
        checked: 0,
        counterexamples: Vec::new(),
    };
    for m in 2..=m_max {
        if 2 * m > oracle::MAX_DEGREE {
            break;
        }
        for c in (-c_max..=c_max).filter(|c| c.abs() >= 2) {
            let c = BigInt::from(c);
            if eisenstein_witness_with_bound(m, &c, trial_bound)?.is_none() {
                continue;
            }
            let g = IntPoly::binomial(m as usize, &c);
            let Some(k) = selmer_parity_certificate(&g) else { continue };
            result.checked += 1;
            if cache.reducible(2 * m, &c)? {
                result
                    .counterexamples
                    .push(format!("g = {g} has k = {k} but g(x^2) is reducible"));
            }
        }
    }
    Ok(result)
}

fn run_lemmas(config: &SweepConfig, cache: &OracleCache, errors: &mut Vec<String>) -> Vec<LemmaResult> {
    let ns = config.n_min..=config.n_max;
    let a_max = config.a_max.max(config.a_min.abs());
    let bound = config.trial_bound;
    let grid = SophieGermainGrid {
        n_max: config.n_max,
        ..Default::default()
    };
    let checks: Vec<Result<LemmaResult, CellError>> = vec![
        check_lemma_gcd(ns.clone(), a_max, bound, cache),
        check_corollary_even(ns.clone(), a_max, bound, cache),
        check_sophie_germain_characterization(grid, bound, cache),
        check_selmer_soundness(5.min(config.n_max / 2), a_max, bound, cache),
    ];
    checks
        .into_iter()
        .filter_map(|r| r.map_err(|e| errors.push(e.to_string())).ok())
        .collect()
}

/// Runs the full grid and every lemma check.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, SweepError> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let cache = OracleCache::default();
    let cells = config.cells();

    let outcomes: Vec<Result<Option<Mismatch>, String>> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(n, a)| {
                check_cell(n, &BigInt::from(a), config.trial_bound, &cache)
                    .map_err(|e| format!("n={n} a={a}: {e}"))
            })
            .collect()
    });

    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(Some(m)) => mismatches.push(m),
            Ok(None) => {}
            Err(e) => errors.push(e),
        }
    }

    let lemma_results = pool.install(|| run_lemmas(config, &cache, &mut errors));

    Ok(SweepReport {
        n_min: config.n_min,
        n_max: config.n_max,
        a_min: config.a_min,
        a_max: config.a_max,
        cells: cells.len(),
        mismatches,
        lemma_results,
        errors,
        elapsed: start.elapsed().as_secs_f64(),
    })
}
