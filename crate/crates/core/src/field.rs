//! Prime fields and prime powers.
//!
//! Scalars of `F_p` are plain `u32` residues in `[0, p)`. All matrix entries in
//! this crate live in `F_p`, never in a proper extension `F_q`: the prime power
//! `q` only enters through index arithmetic.

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary integer to its representative in `[0, p)`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `(-1)^e` as an element of `F_p` (always 1 in characteristic 2).
    pub fn sign(&self, e: i64) -> u32 {
        if e.rem_euclid(2) == 0 {
            1 % self.p
        } else {
            self.neg(1)
        }
    }

    /// Signed representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

/// `q = p^r` with `p` prime and `r >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u32,
    r: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u32, r: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("prime power exponent must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(r).ok_or_else(|| Error::InvalidParameter(format!("{p}^{r} overflows")))?;
        Ok(Self { p, r, q })
    }

    /// Factors `q` as `p^r`.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let mut p = 2u64;
        while q % p != 0 {
            p += 1;
        }
        let mut rest = q;
        let mut r = 0;
        while rest % p == 0 {
            rest /= p;
            r += 1;
        }
        if rest != 1 || p > u32::MAX as u64 {
            return Err(Error::NotPrimePower(q));
        }
        Self::new(p as u32, r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q - 1`, the spacing between members of a class.
    pub fn step(&self) -> i64 {
        self.q as i64 - 1
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
}
