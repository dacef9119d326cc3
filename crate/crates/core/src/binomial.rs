//! Binomial coefficients modulo a prime, by base-`p` digit products.
//!
//! The generalized convention is total: `binom(a, b) = 0` whenever `b < 0`,
//! `a < 0` or `b > a`.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Base-`p` expansion of a non-negative integer, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicDigits {
    value: u64,
    base: u32,
    digits: Vec<u32>,
}

impl PadicDigits {
    pub fn new(value: u64, base: u32) -> Result<Self> {
        PrimeField::new(base)?;
        let mut digits = Vec::new();
        let mut v = value;
        while v > 0 {
            digits.push((v % base as u64) as u32);
            v /= base as u64;
        }
        Ok(Self { value, base, digits })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits `n_0, n_1, ...`; empty for zero.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn reconstruct(&self) -> u64 {
        self.digits.iter().rev().fold(0u64, |acc, &d| acc * self.base as u64 + d as u64)
    }
}

/// `binom(a, b) mod p` for `0 <= a, b < p`.
fn small_binom(f: PrimeField, a: u32, b: u32) -> u32 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let (mut num, mut den) = (1u32, 1u32);
    for i in 0..b {
        num = f.mul(num, a - i);
        den = f.mul(den, i + 1);
    }
    // den is a product of integers < p, hence a unit.
    f.mul(num, f.inv(den).expect("unit denominator"))
}

/// `binom(n, m)` in `f` under the generalized convention.
pub fn binom_in(f: PrimeField, n: i64, m: i64) -> u32 {
    if m < 0 || n < 0 || m > n {
        return 0;
    }
    let p = f.p() as i64;
    let (mut n, mut m) = (n, m);
    let mut acc = 1u32;
    while m > 0 {
        let (nd, md) = ((n % p) as u32, (m % p) as u32);
        if md > nd {
            return 0;
        }
        acc = f.mul(acc, small_binom(f, nd, md));
        n /= p;
        m /= p;
    }
    acc
}

/// `binom(n, m) mod p` under the generalized convention.
pub fn binom_mod_p(n: i64, m: i64, p: u32) -> Result<u32> {
    let f = PrimeField::new(p).map_err(|_| Error::NotPrime(p as u64))?;
    Ok(binom_in(f, n, m))
}
