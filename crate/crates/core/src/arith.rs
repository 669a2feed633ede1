//! Small integer helpers shared across modules.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(n: u64, what: &str) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::shape(format!("{what} must be prime, got {n}")))
    }
}

/// `m!` as an exact integer; errors past `u64`.
pub fn factorial(m: u32) -> Result<u64> {
    (1..=m as u64).try_fold(1u64, |acc, k| {
        acc.checked_mul(k)
            .ok_or_else(|| Error::Overflow(format!("{m}! does not fit in 64 bits")))
    })
}

/// `m! mod n` without forming `m!`.
pub fn factorial_mod(m: u32, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    (1..=m as u64).fold(1u64, |acc, k| ((acc as u128 * (k % n) as u128) % n as u128) as u64)
}
