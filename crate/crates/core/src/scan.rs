//! Slope multiplicities `d(k, α)` across weights.
//!
//! Every block of `U_t` has the form `C · diag(t^(e_b))` with `C` constant,
//! so the sum of principal `s`-minors is `Σ_S det(C_S) t^(e(S))`. A column
//! with `e_b > A·s - L_{s-1}` for every `s` (`L` summing the smallest
//! exponents) only enters terms of valuation above `A·s`, which cannot
//! touch the Newton polygon below slope `A`. Dropping such columns leaves
//! every root of slope `<= A` in place.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use crate::charpoly::char_poly_auto;
use crate::error::{Error, Result};
use crate::field::PrimePower;
use crate::hecke::{class_matrix, descriptors, WeightInstance};
use crate::matrix::TMatrix;
use crate::newton::{count_with_slope, newton_slopes, NewtonSlope, Rational, SlopeValue};
use crate::spectral::merge_slopes;

/// Common `t`-exponent of each column, `None` for a zero column; `None`
/// overall if some column mixes exponents.
pub fn column_exponents(m: &TMatrix) -> Option<Vec<Option<usize>>> {
    (0..m.cols())
        .map(|c| {
            let mut e = None;
            for r in 0..m.rows() {
                let x = m.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let (d, _) = x.single_term()?;
                match e {
                    None => e = Some(d),
                    Some(prev) if prev != d => return None,
                    _ => {}
                }
            }
            Some(e)
        })
        .collect()
}

/// Indices of the columns that can influence roots of slope `<= bound`.
pub fn slope_window(exps: &[Option<usize>], bound: Rational) -> Vec<usize> {
    let (num, den) = (*bound.numer() as i128, *bound.denom() as i128);
    let mut sorted: Vec<i128> = exps.iter().flatten().map(|&e| e as i128).collect();
    sorted.sort_unstable();
    // cap·den = max over s of (A·s - L_{s-1})·den
    let mut cap: Option<i128> = None;
    let mut partial = 0i128;
    for (s, &e) in sorted.iter().enumerate() {
        let v = num * (s as i128 + 1) - den * partial;
        cap = Some(cap.map_or(v, |c| c.max(v)));
        partial += e;
    }
    let Some(cap) = cap else { return Vec::new() };
    exps.iter().enumerate().filter(|(_, e)| e.is_some_and(|e| e as i128 * den <= cap)).map(|(i, _)| i).collect()
}

/// Finite slopes `<= bound` of `det(M - X Id)`, with multiplicity.
pub fn slopes_up_to(m: &TMatrix, bound: Rational) -> Result<Vec<NewtonSlope>> {
    let sub = match column_exponents(m) {
        Some(exps) => {
            let keep = slope_window(&exps, bound);
            m.select(&keep, &keep)
        }
        None => m.clone(),
    };
    if sub.rows() == 0 {
        return Ok(Vec::new());
    }
    let cp = char_poly_auto(&sub)?;
    Ok(newton_slopes(&cp)?.into_iter().filter(|s| matches!(s.value, SlopeValue::Finite(v) if v <= bound)).collect())
}

/// Finite slopes `<= bound` of `U_t` on all of weight `k`.
pub fn weight_slopes_up_to(inst: &WeightInstance, bound: Rational) -> Result<Vec<NewtonSlope>> {
    let mut all = Vec::new();
    for d in descriptors(inst) {
        all.extend(slopes_up_to(&class_matrix(inst, &d), bound)?);
    }
    Ok(merge_slopes(all))
}

/// `d(k, α)`: roots of the weight-`k` characteristic polynomial with
/// valuation exactly `α`. Zero roots never count.
pub fn slope_multiplicity(k: i64, alpha: Rational, q: PrimePower) -> Result<usize> {
    let inst = WeightInstance::new(q, k, None)?;
    Ok(count_with_slope(&weight_slopes_up_to(&inst, alpha)?, alpha))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSlopes {
    pub k: i64,
    pub slopes: Vec<NewtonSlope>,
}

impl WeightSlopes {
    pub fn d(&self, alpha: Rational) -> usize {
        count_with_slope(&self.slopes, alpha)
    }
}

/// Behaviour of `d(·, α)` over the eligible weights `k >= 2α + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaSummary {
    pub alpha: Rational,
    /// `p^(n-1)` for the least integer `n >= max(α, 1)`.
    pub modulus: u64,
    pub values: Vec<(i64, usize)>,
    /// Residue classes mod `modulus` on which `d` is not constant, with their
    /// `(k, d)` pairs.
    pub violations: Vec<(i64, Vec<(i64, usize)>)>,
    /// Least power of `p` modulo which `d` is constant on classes.
    pub period: u64,
}

impl AlphaSummary {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct `d` values per residue modulo `m`.
    pub fn by_residue(&self, m: u64) -> BTreeMap<i64, BTreeSet<usize>> {
        let mut out: BTreeMap<i64, BTreeSet<usize>> = BTreeMap::new();
        for &(k, d) in &self.values {
            out.entry(k.rem_euclid(m as i64)).or_default().insert(d);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub q: PrimePower,
    pub k_range: (i64, i64),
    pub alpha_max: Rational,
    pub weights: Vec<WeightSlopes>,
    pub alphas: Vec<AlphaSummary>,
}

impl ScanReport {
    pub fn d(&self, k: i64, alpha: Rational) -> Option<usize> {
        self.weights.iter().find(|w| w.k == k).map(|w| w.d(alpha))
    }

    pub fn summary(&self, alpha: Rational) -> Option<&AlphaSummary> {
        self.alphas.iter().find(|a| a.alpha == alpha)
    }
}

fn constant_modulo(values: &[(i64, usize)], m: u64) -> Vec<(i64, Vec<(i64, usize)>)> {
    let mut classes: BTreeMap<i64, Vec<(i64, usize)>> = BTreeMap::new();
    for &(k, d) in values {
        classes.entry(k.rem_euclid(m as i64)).or_default().push((k, d));
    }
    classes.into_iter().filter(|(_, v)| v.iter().any(|&(_, d)| d != v[0].1)).collect()
}

fn summarize(p: u64, alpha: Rational, weights: &[WeightSlopes]) -> AlphaSummary {
    let values: Vec<(i64, usize)> =
        weights.iter().filter(|w| Rational::from_integer(w.k) >= alpha * 2 + 2).map(|w| (w.k, w.d(alpha))).collect();
    let n = alpha.ceil().to_integer().max(1);
    let modulus = p.pow((n - 1) as u32);
    let violations = constant_modulo(&values, modulus);
    let span = values.last().map(|l| l.0 - values[0].0).unwrap_or(0).max(0) as u64;
    let mut period = 1u64;
    while !constant_modulo(&values, period).is_empty() && period <= span {
        period *= p;
    }
    AlphaSummary { alpha, modulus, values, violations, period }
}

/// Computes `d(k, α)` for every weight in range and every slope `α <=
/// alpha_max` that occurs (plus those in `track`), and tests constancy on
/// residue classes.
pub fn gm_conjecture_scan(
    q: PrimePower,
    k_range: RangeInclusive<i64>,
    alpha_max: Rational,
    track: &[Rational],
) -> Result<ScanReport> {
    if *k_range.start() < 2 || k_range.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "weight range {}..{} must be non-empty and start at 2 or above",
            k_range.start(),
            k_range.end()
        )));
    }
    let mut weights = Vec::new();
    for k in k_range.clone() {
        let inst = WeightInstance::new(q, k, None)?;
        weights.push(WeightSlopes { k, slopes: weight_slopes_up_to(&inst, alpha_max)? });
    }
    let mut alphas: BTreeSet<Rational> =
        weights.iter().flat_map(|w| w.slopes.iter().filter_map(|s| s.slope())).collect();
    alphas.extend(track.iter().copied().filter(|a| *a <= alpha_max));
    let p = q.p() as u64;
    let alphas = alphas.into_iter().map(|a| summarize(p, a, &weights)).collect();
    Ok(ScanReport { q, k_range: (*k_range.start(), *k_range.end()), alpha_max, weights, alphas })
}
