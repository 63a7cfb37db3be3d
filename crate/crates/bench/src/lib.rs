//! Shared inputs for the criterion benches.

use capelli_core::BigInt;

/// `(n, a)` cells of the symmetric grid `[2, n_max] x [-a_max, a_max] \ {0}`.
pub fn grid(n_max: u32, a_max: i64) -> Vec<(u32, BigInt)> {
    (2..=n_max)
        .flat_map(|n| (-a_max..=a_max).filter(|&a| a != 0).map(move |a| (n, BigInt::from(a))))
        .collect()
}
