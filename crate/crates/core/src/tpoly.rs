//! Dense univariate polynomials in `t` over `F_p`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ring::Ring;

/// A polynomial in `t` with coefficients in `F_p`, stored in ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and `coeffs().last()` is the leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl TPoly {
    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::monomial(p, c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(p: u32, c: u32, e: usize) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero(p);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Self { p, coeffs }
    }

    /// `t^e`.
    pub fn t_pow(p: u32, e: usize) -> Self {
        Self::monomial(p, 1, e)
    }

    /// Builds from ascending coefficients given as arbitrary integers.
    pub fn from_ints(p: u32, coeffs: &[i64]) -> Self {
        let f = PrimeField::new(p).expect("characteristic must be prime");
        Self::from_residues(p, coeffs.iter().map(|&c| f.reduce(c)).collect())
    }

    /// Builds from ascending residues; entries are reduced mod `p`.
    pub fn from_residues(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut out = Self { p, coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("characteristic is prime by construction")
    }

    /// Ascending coefficients, empty for zero.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The `t`-adic valuation, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::CharacteristicMismatch(self.p, other.p));
        }
        Ok(())
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "characteristic mismatch");
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_impl(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i);
            let mut b = other.coeff(i);
            if negate && b != 0 {
                b = p - b;
            }
            let s = a + b;
            coeffs.push(if s >= p { s - p } else { s });
        }
        let mut out = Self { p, coeffs };
        out.trim();
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        // Single-term operands are common (matrix entries are c * t^e).
        if self.coeffs.len() == 1 || other.coeffs.len() == 1 {
            let (mono, poly) = if self.coeffs.len() == 1 { (self, other) } else { (other, self) };
            return poly.scale(mono.coeffs[0]);
        }
        if let (Some(v), Some(w)) = (self.single_term(), other.single_term()) {
            return Self::monomial(p, (v.1 as u64 * w.1 as u64 % p as u64) as u32, v.0 + w.0);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut acc = vec![0u64; n];
        if p < (1 << 16) {
            // (p-1)^2 < 2^32, so u64 accumulators cannot overflow for any
            // realistic length.
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                    *slot += a * b as u64;
                }
            }
            let coeffs = acc.into_iter().map(|v| (v % p as u64) as u32).collect();
            let mut out = Self { p, coeffs };
            out.trim();
            out
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (slot, &b) in acc[i..].iter_mut().zip(&other.coeffs) {
                    *slot = (*slot + a as u64 * b as u64) % p as u64;
                }
            }
            Self::from_residues(p, acc.into_iter().map(|v| v as u32).collect())
        }
    }

    /// `Some((e, c))` when the polynomial is `c * t^e`.
    pub fn single_term(&self) -> Option<(usize, u32)> {
        let v = self.valuation()?;
        if v + 1 == self.coeffs.len() {
            Some((v, self.coeffs[v]))
        } else {
            None
        }
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let c = c as u64 % p;
        if c == 0 {
            return Self::zero(self.p);
        }
        Self { p: self.p, coeffs: self.coeffs.iter().map(|&a| (a as u64 * c % p) as u32).collect() }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let mut coeffs = vec![0; e];
        coeffs.extend_from_slice(&self.coeffs);
        Self { p: self.p, coeffs }
    }

    /// Divides by `t^e`; the caller guarantees `e <= valuation`.
    pub fn unshift(&self, e: usize) -> Self {
        debug_assert!(self.valuation().map_or(true, |v| v >= e));
        Self { p: self.p, coeffs: self.coeffs.get(e..).unwrap_or(&[]).to_vec() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field();
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading()).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[i] = qc;
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                if d != 0 {
                    rem[i + k] = f.sub(rem[i + k], f.mul(qc, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_residues(p, quot), Self::from_residues(p, rem)))
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field().inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor. `gcd(f, 0) = monic(f)`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Evaluates at an element of `F_p`.
    pub fn eval(&self, x: u32) -> u32 {
        let f = self.field();
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// True when this is the `p`-th power of a polynomial, i.e. only exponents
    /// divisible by `p` occur (Frobenius is the identity on `F_p`).
    pub fn is_pth_power(&self) -> bool {
        let p = self.p as usize;
        self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0)
    }

    /// The `p`-th root of a `p`-th power.
    pub fn pth_root(&self) -> Option<Self> {
        if !self.is_pth_power() {
            return None;
        }
        let p = self.p as usize;
        Some(Self::from_residues(self.p, self.coeffs.iter().step_by(p).copied().collect()))
    }

    /// Coefficients as signed representatives, for display and tests.
    pub fn signed_coeffs(&self) -> Vec<i64> {
        let f = self.field();
        self.coeffs.iter().map(|&c| f.signed(c)).collect()
    }
}

impl Ring for TPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p)
    }
    fn one_like(&self) -> Self {
        Self::one(self.p)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.add_impl(rhs, false)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.add_impl(rhs, true)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        Self::zero(self.p).add_impl(self, true)
    }
    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.p, n.rem_euclid(self.p as i64) as u32)
    }
}

impl std::ops::Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        Ring::add(self, rhs)
    }
}

impl std::ops::Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        Ring::sub(self, rhs)
    }
}

impl std::ops::Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        Ring::mul(self, rhs)
    }
}

impl std::ops::Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        Ring::neg(self)
    }
}

impl PartialOrd for TPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TPoly {
    /// Degree first, then coefficients from the top; only used to make
    /// collections deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = self.field();
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let s = field.signed(c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly[F_{}]({})", self.p, self)
    }
}
