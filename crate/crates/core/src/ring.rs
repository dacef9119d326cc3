//! Minimal ring/field abstractions shared by the generic matrix and
//! polynomial code.
//!
//! Elements carry their own context (the characteristic), so the additive and
//! multiplicative identities are produced from an existing element.

use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The image of the integer `n` under `Z -> R`.
    fn from_int(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}
