//! Binary fixed-point helpers: an integer `v` stands for `v / 2^bits`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

const GUARD_BITS: u32 = 64;

/// `sum_k (-1)^k / ((2k+1) x^(2k+1))` scaled by `2^bits`.
fn atan_inv(x: u32, bits: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = (BigInt::one() << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !term.is_zero() {
        let contribution = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += contribution;
        } else {
            sum -= contribution;
        }
        term /= &x2;
        k += 1;
    }
    sum
}

/// pi at `bits` fractional bits (Machin's formula).
pub fn pi(bits: u32) -> BigInt {
    let work = bits + GUARD_BITS;
    let v = BigInt::from(16) * atan_inv(5, work) - BigInt::from(4) * atan_inv(239, work);
    v >> GUARD_BITS
}

/// `(cos(pi * num / den), sin(pi * num / den))` at `bits` fractional bits.
pub fn cos_sin_pi_fraction(num: u64, den: u64, bits: u32) -> (BigInt, BigInt) {
    assert!(den > 0);
    // Reduce to an angle in [0, pi/2] and restore signs afterwards.
    let num = num % (2 * den);
    let (num, sin_sign) = if num > den { (2 * den - num, -1) } else { (num, 1) };
    let (num, cos_sign) = if 2 * num > den { (den - num, -1) } else { (num, 1) };

    let work = bits + GUARD_BITS;
    let theta = pi(work) * BigInt::from(num) / BigInt::from(den);
    let one = BigInt::one() << work;

    // Taylor series; terms shrink geometrically for theta <= pi/2.
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut term = one;
    let mut k = 0u64;
    while !term.is_zero() {
        // term = theta^k / k!
        if k.is_multiple_of(4) {
            cos += &term;
        } else if k % 4 == 2 {
            cos -= &term;
        } else if k % 4 == 1 {
            sin += &term;
        } else {
            sin -= &term;
        }
        term = ((&term * &theta) >> work) / BigInt::from(k + 1);
        k += 1;
    }
    (
        BigInt::from(cos_sign) * (cos >> GUARD_BITS),
        BigInt::from(sin_sign) * (sin >> GUARD_BITS),
    )
}

/// `floor(|a|^(p/q) * 2^bits)`.
pub fn root_power(a: &BigInt, p: u32, q: u32, bits: u32) -> BigInt {
    let scaled = a.abs().pow(p) << (q as u64 * bits as u64);
    scaled.nth_root(q)
}

/// Rounds to the nearest integer and returns the distance in fixed units.
pub fn round_fixed(v: &BigInt, bits: u32) -> (BigInt, BigInt) {
    let half = BigInt::one() << (bits - 1);
    let rounded = (v + &half) >> bits;
    let distance = (v - (&rounded << bits)).abs();
    (rounded, distance)
}
