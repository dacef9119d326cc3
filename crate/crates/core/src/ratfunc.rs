//! Rational functions in `t` over `F_p`, kept in lowest terms.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};
use crate::tpoly::TPoly;

/// `numerator / denominator` with the denominator monic and coprime to the
/// numerator. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if num.p() != den.p() {
            return Err(Error::CharacteristicMismatch(num.p(), den.p()));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: TPoly, den: TPoly) -> Self {
        let p = num.p();
        if num.is_zero() {
            return Self { num, den: TPoly::one(p) };
        }
        // Powers of t are by far the most common common factor here.
        let shared_t = num.valuation().unwrap().min(den.valuation().unwrap());
        let (mut num, mut den) = (num.unshift(shared_t), den.unshift(shared_t));
        if !den.is_constant() {
            let g = num.gcd(&den).expect("same characteristic");
            if !g.is_one() {
                num = num.exact_div(&g).unwrap().expect("gcd divides");
                den = den.exact_div(&g).unwrap().expect("gcd divides");
            }
        }
        let lead = den.leading();
        if lead != 1 {
            let inv = den.field().inv(lead).unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Self { num, den }
    }

    pub fn zero(p: u32) -> Self {
        Self { num: TPoly::zero(p), den: TPoly::one(p) }
    }

    pub fn one(p: u32) -> Self {
        Self { num: TPoly::one(p), den: TPoly::one(p) }
    }

    pub fn from_poly(num: TPoly) -> Self {
        let p = num.p();
        Self { num, den: TPoly::one(p) }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::from_poly(TPoly::constant(p, c))
    }

    /// `c * t^e` for any integer exponent.
    pub fn monomial(p: u32, c: u32, e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(TPoly::monomial(p, c, e as usize))
        } else if c % p == 0 {
            Self::zero(p)
        } else {
            Self { num: TPoly::constant(p, c), den: TPoly::t_pow(p, e.unsigned_abs() as usize) }
        }
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this represents, if the denominator is 1.
    pub fn to_poly(&self) -> Option<TPoly> {
        if self.is_polynomial() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// `v_t(num) - v_t(den)`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let v = self.num.valuation()? as i64;
        Some(v - self.den.valuation().unwrap() as i64)
    }

    /// Multiplies by `t^e` for any integer `e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        if e > 0 {
            Self::normalized(self.num.shift(e as usize), self.den.clone())
        } else {
            Self::normalized(self.num.clone(), self.den.shift(e.unsigned_abs() as usize))
        }
    }

    /// True if this is a `p`-th power in `F_p(t)`.
    pub fn is_pth_power(&self) -> bool {
        self.num.is_pth_power() && self.den.is_pth_power()
    }

    pub fn pth_root(&self) -> Option<Self> {
        Some(Self::normalized(self.num.pth_root()?, self.den.pth_root()?))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if self.p() != rhs.p() {
            return Err(Error::CharacteristicMismatch(self.p(), rhs.p()));
        }
        rhs.inv().map(|r| self.mul(&r)).ok_or(Error::DivisionByZero)
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero(self.p())
    }
    fn one_like(&self) -> Self {
        Self::one(self.p())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&rhs.den))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_int(&self, n: i64) -> Self {
        Self::from_poly(self.num.from_int(n))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
}

impl From<TPoly> for RatFunc {
    fn from(p: TPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &TPoly| {
            if p.single_term().is_some() {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[F_{}]({})", self.p(), self)
    }
}
