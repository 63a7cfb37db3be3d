//! Cyclotomic polynomials by exact division, and their homogenized scaled
//! forms `b^deg * Phi(x^k / b)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IntPoly, PolyError};
use crate::arith::{divisors, totient};

fn cache() -> &'static RwLock<HashMap<u32, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
///
/// Results are memoized process-wide. Concurrent fills of the same entry
/// compute identical values, so the race is harmless.
pub fn cyclotomic(n: u32) -> IntPoly {
    assert!(n >= 1, "cyclotomic: n must be positive");
    if let Some(hit) = cache().read().unwrap().get(&n) {
        return hit.clone();
    }

    let mut result = IntPoly::binomial(n as usize, &BigInt::one());
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic(d);
        result = result
            .div_exact(&phi_d)
            .expect("cyclotomic divisor is nonzero")
            .unwrap_or_else(|| panic!("Phi_{d} does not divide the running quotient for n = {n}"));
    }
    debug_assert_eq!(result.degree(), Some(totient(n) as usize));

    cache().write().unwrap().entry(n).or_insert(result).clone()
}

/// `b^(2^r * phi(d)) * Phi_{2^(r+1) d}(x^k / b)` as an integer polynomial of
/// degree `k * 2^r * phi(d)`, for odd `d`.
///
/// The coefficient of `y^i` in `Phi` becomes `c_i * b^(deg - i)` on `x^(k i)`;
/// each one is checked to be integral.
pub fn scaled_cyclotomic(d: u32, b: &BigInt, k: u32, r: u32) -> Result<IntPoly, PolyError> {
    if b.is_zero() {
        return Err(PolyError::Domain("scaled cyclotomic needs b != 0".into()));
    }
    if d == 0 || d.is_even() {
        return Err(PolyError::Domain(format!("scaled cyclotomic needs odd d, got {d}")));
    }
    if k == 0 {
        return Err(PolyError::Domain("scaled cyclotomic needs k >= 1".into()));
    }
    let index = (1u32 << (r + 1)) * d;
    let phi = cyclotomic(index);
    let deg = phi.degree().expect("cyclotomic is nonzero");
    debug_assert_eq!(deg, (1usize << r) * totient(d) as usize);

    let scale = b.pow(deg as u32);
    let mut coeffs = Vec::with_capacity(phi.coeffs().len());
    for (i, c) in phi.coeffs().iter().enumerate() {
        let numerator = c * &scale;
        let (q, rem) = numerator.div_rem(&b.pow(i as u32));
        if !rem.is_zero() {
            return Err(PolyError::NonIntegral(format!(
                "coefficient {i} of b^{deg} Phi_{index}(x^{k}/b) with b = {b}"
            )));
        }
        coeffs.push(q);
    }
    Ok(IntPoly::new(coeffs).substitute_power(k as usize))
}
