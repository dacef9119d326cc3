//! `t`-adic Newton polygons and the slopes of roots they encode.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::xpoly::XPoly;

pub type Rational = Ratio<i64>;

/// Valuation of a group of roots: a finite rational slope, or the bucket of
/// zero roots (which have no slope).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlopeValue {
    Finite(Rational),
    Infinite,
}

/// A slope together with the number of roots (with multiplicity) having it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NewtonSlope {
    pub value: SlopeValue,
    pub multiplicity: usize,
}

impl NewtonSlope {
    pub fn finite(slope: Rational, multiplicity: usize) -> Self {
        Self { value: SlopeValue::Finite(slope), multiplicity }
    }

    pub fn infinite(multiplicity: usize) -> Self {
        Self { value: SlopeValue::Infinite, multiplicity }
    }

    pub fn is_infinite(&self) -> bool {
        self.value == SlopeValue::Infinite
    }

    pub fn slope(&self) -> Option<Rational> {
        match self.value {
            SlopeValue::Finite(s) => Some(s),
            SlopeValue::Infinite => None,
        }
    }
}

impl fmt::Display for NewtonSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            SlopeValue::Infinite => write!(f, "inf:{}", self.multiplicity),
            SlopeValue::Finite(s) => write!(f, "{}:{}", s, self.multiplicity),
        }
    }
}

/// Slopes of the roots of `f`: the zero roots in one infinite bucket (listed
/// first, if any), then finite slopes in ascending order.
pub fn newton_slopes(f: &XPoly) -> Result<Vec<NewtonSlope>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("Newton polygon"));
    }
    let vals: Vec<Option<i64>> = f.coeffs().iter().map(|c| c.valuation().map(|v| v as i64)).collect();
    Ok(slopes_from_valuations(&vals))
}

/// Same as [`newton_slopes`] from the coefficient valuations alone
/// (ascending in `X`, `None` for a zero coefficient). The top entry must be
/// `Some`.
pub fn slopes_from_valuations(vals: &[Option<i64>]) -> Vec<NewtonSlope> {
    let mut out = Vec::new();
    let zero_roots = vals.iter().position(|v| v.is_some()).unwrap_or(0);
    if zero_roots > 0 {
        out.push(NewtonSlope::infinite(zero_roots));
    }
    let pts: Vec<(i64, i64)> =
        vals.iter().enumerate().skip(zero_roots).filter_map(|(i, v)| v.map(|v| (i as i64, v))).collect();
    // Lower convex hull, left to right, dropping collinear points.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut finite: Vec<NewtonSlope> = hull
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            NewtonSlope::finite(Rational::new(-dy, dx), dx as usize)
        })
        .collect();
    finite.sort_by_key(|s| s.value);
    out.extend(finite);
    out
}

/// Number of roots with valuation exactly `alpha` (zero roots never count).
pub fn count_with_slope(slopes: &[NewtonSlope], alpha: Rational) -> usize {
    slopes.iter().filter(|s| s.value == SlopeValue::Finite(alpha)).map(|s| s.multiplicity).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpoly::TPoly;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn unit_root() {
        let f = XPoly::new(vec![TPoly::from_ints(3, &[-1]), TPoly::one(3)], &TPoly::zero(3));
        assert_eq!(newton_slopes(&f).unwrap(), vec![NewtonSlope::finite(r(0, 1), 1)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(newton_slopes(&XPoly::zero(&TPoly::zero(2))).is_err());
    }

    #[test]
    fn fractional_slope() {
        // X^2 - t^5
        let p = 2;
        let f = XPoly::new(vec![TPoly::t_pow(p, 5), TPoly::zero(p), TPoly::one(p)], &TPoly::zero(p));
        assert_eq!(newton_slopes(&f).unwrap(), vec![NewtonSlope::finite(r(5, 2), 2)]);
    }

    #[test]
    fn collinear_points_merge() {
        // (X - t)(X - t)(X - t^3) style valuations: 5, 2, 1, 0 -> hull (0,5),(1,2)?,(3,0)
        let s = slopes_from_valuations(&[Some(5), Some(2), Some(1), Some(0)]);
        assert_eq!(s, vec![NewtonSlope::finite(r(1, 1), 2), NewtonSlope::finite(r(3, 1), 1)]);
        let s = slopes_from_valuations(&[None, None, Some(4), None, Some(0)]);
        assert_eq!(s, vec![NewtonSlope::infinite(2), NewtonSlope::finite(r(2, 1), 2)]);
    }
}
