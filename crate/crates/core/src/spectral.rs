//! Per-block spectral data of `U_t`: characteristic polynomials, slopes and
//! diagonalizability verdicts.

use crate::charpoly::{char_poly_auto, min_poly};
use crate::error::{Error, Result};
use crate::hecke::{class_matrix, descriptors, gamma0_classes, BlockDescriptor, WeightInstance};
use crate::matrix::TMatrix;
use crate::newton::{newton_slopes, NewtonSlope, Rational, SlopeValue};
use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::tpoly::TPoly;
use crate::xpoly::{has_inseparable_factor, is_separable_squarefree, RatXPoly, XPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeConvention {
    /// Eigenvalues of the operator scaled by `t^(k-m)`; newforms have slope `k/2`.
    Normalized,
    /// Unscaled eigenvalues; slopes shifted by `m - k`.
    Typed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagReason {
    SeparableMinpoly,
    InseparableEigenvalue,
    RepeatedRootMinpoly,
}

impl DiagReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagReason::SeparableMinpoly => "separable-minpoly",
            DiagReason::InseparableEigenvalue => "inseparable-eigenvalue",
            DiagReason::RepeatedRootMinpoly => "repeated-root-minpoly",
        }
    }
}

/// Diagonalizability over `C_∞`, decided by squarefreeness of the minimal
/// polynomial over an algebraic closure of `F_p(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagVerdict {
    pub diagonalizable: bool,
    pub reason: DiagReason,
    pub min_poly: XPoly,
}

impl DiagVerdict {
    pub fn from_min_poly(min_poly: XPoly) -> Result<Self> {
        let diagonalizable = is_separable_squarefree(&min_poly)?;
        let reason = if diagonalizable {
            DiagReason::SeparableMinpoly
        } else if has_inseparable_factor(&min_poly)? {
            DiagReason::InseparableEigenvalue
        } else {
            DiagReason::RepeatedRootMinpoly
        };
        Ok(Self { diagonalizable, reason, min_poly })
    }
}

pub fn diag_verdict(m: &TMatrix) -> Result<DiagVerdict> {
    DiagVerdict::from_min_poly(min_poly(m)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub descriptor: BlockDescriptor,
    pub char_poly: XPoly,
    pub slopes: Vec<NewtonSlope>,
    /// `None` when the block exceeds the minimal-polynomial size limit.
    pub verdict: Option<DiagVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralReport {
    pub instance: WeightInstance,
    pub blocks: Vec<BlockReport>,
    /// Combined verdict over the `Γ₀` classes (those of type `m` if given);
    /// `None` when there are none or a selected block was skipped.
    pub gamma0_verdict: Option<DiagVerdict>,
    pub convention: SlopeConvention,
}

impl SpectralReport {
    /// All slopes of the full operator, merged and sorted.
    pub fn all_slopes(&self) -> Vec<NewtonSlope> {
        merge_slopes(self.blocks.iter().flat_map(|b| b.slopes.iter().copied()))
    }

    pub fn gamma0_blocks(&self) -> impl Iterator<Item = &BlockReport> {
        let sel = gamma0_classes(self.instance.k, self.instance.q, self.instance.m).unwrap_or_default();
        self.blocks.iter().filter(move |b| sel.contains(&b.descriptor.j))
    }
}

/// Sums multiplicities of equal slopes; the infinite bucket comes last.
pub fn merge_slopes(slopes: impl IntoIterator<Item = NewtonSlope>) -> Vec<NewtonSlope> {
    let mut map = std::collections::BTreeMap::<SlopeValue, usize>::new();
    for s in slopes {
        *map.entry(s.value).or_default() += s.multiplicity;
    }
    map.into_iter().map(|(value, multiplicity)| NewtonSlope { value, multiplicity }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Blocks larger than this get no minimal polynomial.
    pub min_poly_limit: usize,
    /// Analyze only the `Γ₀` classes selected by the instance.
    pub gamma0_only: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { min_poly_limit: 24, gamma0_only: false }
    }
}

pub fn analyze(inst: &WeightInstance) -> Result<SpectralReport> {
    analyze_with(inst, &AnalyzeOptions::default())
}

pub fn analyze_with(inst: &WeightInstance, opts: &AnalyzeOptions) -> Result<SpectralReport> {
    let selected = gamma0_classes(inst.k, inst.q, inst.m)?;
    let mut blocks = Vec::new();
    for desc in descriptors(inst) {
        if opts.gamma0_only && !selected.contains(&desc.j) {
            continue;
        }
        let m = class_matrix(inst, &desc);
        let char_poly = char_poly_auto(&m)?;
        let slopes = newton_slopes(&char_poly)?;
        let verdict = if desc.size <= opts.min_poly_limit { Some(diag_verdict(&m)?) } else { None };
        blocks.push(BlockReport { descriptor: desc, char_poly, slopes, verdict });
    }
    let gamma0_verdict = combine_verdicts(blocks.iter().filter(|b| selected.contains(&b.descriptor.j)))?;
    Ok(SpectralReport { instance: *inst, blocks, gamma0_verdict, convention: SlopeConvention::Normalized })
}

/// A direct sum is diagonalizable iff each summand is; its minimal
/// polynomial is the lcm of theirs.
fn combine_verdicts<'a>(blocks: impl Iterator<Item = &'a BlockReport>) -> Result<Option<DiagVerdict>> {
    let mut acc: Option<RatXPoly> = None;
    for b in blocks {
        let Some(v) = &b.verdict else { return Ok(None) };
        let f = v.min_poly.to_rat();
        acc = Some(match acc {
            None => f,
            Some(a) => a.lcm(&f),
        });
    }
    match acc {
        None => Ok(None),
        Some(f) => {
            let f = f
                .to_integral()
                .ok_or_else(|| Error::InvalidParameter("combined minimal polynomial is not integral".into()))?;
            Ok(Some(DiagVerdict::from_min_poly(f)?))
        }
    }
}

/// Shifts a finite slope by an integer.
pub fn shift_slope(s: NewtonSlope, by: i64) -> NewtonSlope {
    match s.value {
        SlopeValue::Finite(v) => NewtonSlope::finite(v + Rational::from_integer(by), s.multiplicity),
        SlopeValue::Infinite => s,
    }
}

/// Converts a normalized report to the typed convention (finite slopes
/// shifted by `m - k`).
pub fn denormalize_slopes(report: &SpectralReport) -> Result<SpectralReport> {
    if report.convention == SlopeConvention::Typed {
        return Err(Error::AlreadyDenormalized);
    }
    let shift = report.instance.require_m()? - report.instance.k;
    let mut out = report.clone();
    for b in &mut out.blocks {
        b.slopes = b.slopes.iter().map(|&s| shift_slope(s, shift)).collect();
    }
    out.convention = SlopeConvention::Typed;
    Ok(out)
}

/// Roots of a linear factor `c0 + c1 X` with `c1 = ±1`, i.e. `-c0/c1`.
pub fn linear_root(f: &XPoly) -> Option<TPoly> {
    if f.degree() != Some(1) {
        return None;
    }
    let c1 = f.coeff(1);
    let rc = RatFunc::from_poly(f.coeff(0)).checked_div(&RatFunc::from_poly(c1)).ok()?;
    rc.neg().to_poly()
}
