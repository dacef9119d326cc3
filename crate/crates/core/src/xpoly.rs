//! Univariate polynomials in the eigenvalue variable `X`.
//!
//! [`XPoly`] has coefficients in `F_p[t]` and is what characteristic and
//! minimal polynomials are returned as. [`RatXPoly`] has coefficients in
//! `F_p(t)` and is used internally wherever Euclid's algorithm is needed.

use std::fmt;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ring::{Field, Ring};
use crate::tpoly::TPoly;

/// Polynomial in `X` over a ring `R`, ascending coefficients, no trailing zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

pub type XPoly = Poly<TPoly>;
pub type RatXPoly = Poly<RatFunc>;

impl<R: Ring> Poly<R> {
    /// Builds from ascending coefficients; `proto` supplies the coefficient ring
    /// context when `coeffs` is empty.
    pub fn new(coeffs: Vec<R>, proto: &R) -> Self {
        let mut out = Self { coeffs, zero: proto.zero_like() };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(proto: &R) -> Self {
        Self { coeffs: Vec::new(), zero: proto.zero_like() }
    }

    pub fn one(proto: &R) -> Self {
        Self::constant(proto.one_like())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c.clone()], &c)
    }

    /// The variable `X`.
    pub fn x(proto: &R) -> Self {
        Self::new(vec![proto.zero_like(), proto.one_like()], proto)
    }

    /// `X^e`.
    pub fn x_pow(proto: &R, e: usize) -> Self {
        let mut coeffs = vec![proto.zero_like(); e + 1];
        coeffs[e] = proto.one_like();
        Self::new(coeffs, proto)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn coeff_proto(&self) -> &R {
        &self.zero
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplicity of the root `X = 0`; `None` for the zero polynomial.
    pub fn x_adic_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Splits `f = X^m * g` with `g(0) != 0`.
    pub fn split_x_power(&self) -> Option<(usize, Self)> {
        let m = self.x_adic_order()?;
        Some((m, Self { coeffs: self.coeffs[m..].to_vec(), zero: self.zero.clone() }))
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), proto)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), &self.zero)
    }

    /// Formal derivative in `X`.
    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul(&c.from_int(i as i64))).collect();
        Self::new(coeffs, &self.zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(self.zero.clone(), |acc, c| acc.mul(x).add(c))
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.zero)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect(), &self.zero)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect(), &self.zero)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out, &self.zero)
    }
    fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), &self.zero)
    }
    fn from_int(&self, n: i64) -> Self {
        Self::constant(self.zero.from_int(n))
    }
}

impl<F: Field> Poly<F> {
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((self.zero_like(), self.clone()));
        }
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            if rem[i + dd].is_zero() {
                continue;
            }
            let qc = rem[i + dd].mul(&lead_inv);
            for (k, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + k] = rem[i + k].sub(&qc.mul(d));
                }
            }
            quot[i] = qc;
        }
        rem.truncate(dd);
        Ok((Self::new(quot, &self.zero), Self::new(rem, &self.zero)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).div_rem(&g).expect("gcd is nonzero");
        q.monic()
    }
}

impl XPoly {
    /// Lifts to coefficients in `F_p(t)`.
    pub fn to_rat(&self) -> RatXPoly {
        let proto = RatFunc::zero(self.zero.p());
        self.map(&proto, |c| RatFunc::from_poly(c.clone()))
    }

    pub fn p(&self) -> u32 {
        self.zero.p()
    }

    /// Sign normalization used for reporting: multiplies by `(-1)^deg` so that
    /// `det(M - X) ` becomes `det(X - M)`.
    pub fn to_monic_sign(&self) -> Self {
        match self.degree() {
            Some(d) if d % 2 == 1 => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact quotient in `F_p[t][X]`, `None` if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.to_rat().div_rem(&divisor.to_rat())?;
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(RatXPoly::to_integral(&q))
    }
}

impl RatXPoly {
    /// Converts back to `F_p[t]` coefficients when all denominators are 1.
    pub fn to_integral(&self) -> Option<XPoly> {
        let proto = TPoly::zero(self.zero.p());
        let coeffs: Option<Vec<TPoly>> = self.coeffs.iter().map(|c| c.to_poly()).collect();
        Some(Poly::new(coeffs?, &proto))
    }

    /// Clears denominators and removes the content, giving a primitive
    /// polynomial over `F_p[t]` with monic (in `t`) leading coefficient.
    pub fn primitive_part(&self) -> XPoly {
        let p = self.zero.p();
        let proto = TPoly::zero(p);
        if self.is_zero() {
            return XPoly::zero(&proto);
        }
        let mut lcm_den = TPoly::one(p);
        for c in &self.coeffs {
            let d = c.denominator();
            let g = lcm_den.gcd(d).unwrap();
            lcm_den = lcm_den.mul(&d.exact_div(&g).unwrap().unwrap());
        }
        let mut ints: Vec<TPoly> = self
            .coeffs
            .iter()
            .map(|c| {
                let f = lcm_den.exact_div(c.denominator()).unwrap().unwrap();
                c.numerator().mul(&f)
            })
            .collect();
        let mut content = TPoly::zero(p);
        for c in &ints {
            content = content.gcd(c).unwrap();
        }
        for c in ints.iter_mut() {
            *c = c.exact_div(&content).unwrap().unwrap();
        }
        let out = XPoly::new(ints, &proto);
        let lead = out.leading().leading();
        let inv = lead_inverse(p, lead);
        out.scale(&TPoly::constant(p, inv))
    }
}

fn lead_inverse(p: u32, c: u32) -> u32 {
    crate::field::PrimeField::new(p).unwrap().inv(c).expect("nonzero")
}

/// True iff `f` has no repeated root over an algebraic closure of `F_p(t)`:
/// the `X`-derivative is nonzero and `gcd(f, f')` is a unit.
pub fn is_separable_squarefree(f: &XPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("separability"));
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    let g = f.to_rat().gcd(&d.to_rat());
    Ok(g.degree() == Some(0))
}

/// True iff some irreducible factor of `f` over `F_p(t)` is inseparable, i.e.
/// a polynomial in `X^p`. Such a factor has a single root of multiplicity
/// `p^e` over the closure.
pub fn has_inseparable_factor(f: &XPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("factorization"));
    }
    Ok(inseparable_part(&f.to_rat().monic()))
}

fn inseparable_part(f: &RatXPoly) -> bool {
    let p = f.zero.p() as usize;
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    // Peel off every separable factor whose multiplicity is prime to p.
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).unwrap().0;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        c = c.div_rem(&y).unwrap().0;
        w = y;
    }
    // What remains has zero derivative: c(X) = c1(X^p).
    if c.degree().unwrap_or(0) == 0 {
        return false;
    }
    debug_assert!(c.derivative().is_zero());
    let c = c.monic();
    let mut root_coeffs = Vec::new();
    for (i, a) in c.coeffs.iter().enumerate() {
        if i % p != 0 {
            continue;
        }
        match a.pth_root() {
            Some(r) => root_coeffs.push(r),
            // Coefficient outside F_p(t^p): an inseparable irreducible factor.
            None => return true,
        }
    }
    inseparable_part(&RatXPoly::new(root_coeffs, &f.zero))
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-') && !s[1..].contains([' ', '/']);
            if negative {
                s.remove(0);
            }
            let compound = s.contains(' ') || s.contains('/');
            let body = match (e, s.as_str(), compound) {
                (0, _, _) => s.clone(),
                (_, "1", _) => String::new(),
                (_, _, true) => format!("({s})"),
                _ => s.clone(),
            };
            let xpart = match e {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            };
            if first {
                write!(f, "{}{}{}", if negative { "-" } else { "" }, body, xpart)?;
            } else {
                write!(f, " {} {}{}", if negative { '-' } else { '+' }, body, xpart)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}
