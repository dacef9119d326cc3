//! Command-line surface: argument parsing, validation, and the pretty, JSON
//! and CSV renderings of every report.
//!
//! JSON layout (stable keys, deterministic order):
//! - `TPoly`: ascending residues in `[0, p)`, `[]` for zero.
//! - `XPoly`: ascending array of `TPoly` arrays.
//! - slope: `{"num","den","mult"}`, or `{"inf":true,"mult"}` for zero roots.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::PrimePower;
use crate::hecke::{block_matrix, block_weight, natural_ut_matrix, BlockDescriptor, WeightInstance};
use crate::matrix::TMatrix;
use crate::newold::{new_old_split, old_eigen_from_split, NewOldSplit};
use crate::newton::{NewtonSlope, Rational, SlopeValue};
use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::scan::{gm_conjecture_scan, AlphaSummary, ScanReport, WeightSlopes};
use crate::spectral::{
    analyze_with, denormalize_slopes, AnalyzeOptions, BlockReport, DiagReason, DiagVerdict, SlopeConvention,
    SpectralReport,
};
use crate::tpoly::TPoly;
use crate::verify::run_verify;
use crate::xpoly::XPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Matrix,
    Charpoly,
    Slopes,
    Diag,
    Split,
    Scan,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SlopeArg {
    #[default]
    Normalized,
    Typed,
}

/// `40`, `8..98` or `8..=98`; both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: i64,
    pub hi: i64,
}

impl KRange {
    pub fn single(&self) -> Option<i64> {
        (self.lo == self.hi).then_some(self.lo)
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let int = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad weight {x:?}: {e}"));
        match s.split_once("..") {
            None => {
                let k = int(s)?;
                Ok(Self { lo: k, hi: k })
            }
            Some((a, b)) => {
                let (lo, hi) = (int(a)?, int(b.strip_prefix('=').unwrap_or(b))?);
                if lo > hi {
                    return Err(format!("empty weight range {lo}..{hi}"));
                }
                Ok(Self { lo, hi })
            }
        }
    }
}

/// Parses `5/2` or `8`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let int = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("bad rational {s:?}: {e}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d == 0 {
                return Err(format!("bad rational {s:?}: zero denominator"));
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "atkin", about = "The Atkin operator U_t on Drinfeld cusp forms of level t")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Field size, a prime power.
    #[arg(long)]
    pub q: Option<u64>,
    /// Weight, or an inclusive range `lo..hi` for `scan`.
    #[arg(long)]
    pub k: Option<KRange>,
    /// Type.
    #[arg(long)]
    pub m: Option<i64>,
    /// Class index of a block `M(j, n, q)`.
    #[arg(long)]
    pub j: Option<i64>,
    /// Size of a block `M(j, n, q)`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Print the constant matrix without its column powers of `t`.
    #[arg(long)]
    pub coeffs: bool,
    #[arg(long, value_parser = parse_rational)]
    pub alpha_max: Option<Rational>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t)]
    pub slopes: SlopeArg,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Slopes to report in a scan even where `d = 0`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    pub track: Vec<Rational>,
}

/// Text produced by a command and whether it counts as success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub text: String,
    pub success: bool,
}

/// Either one block `M(j, n, q)` or a whole weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Block { j: i64, n: usize, inst: WeightInstance },
    Weight(WeightInstance),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl RunConfig {
    fn name(&self) -> &'static str {
        match self.command {
            Command::Matrix => "matrix",
            Command::Charpoly => "charpoly",
            Command::Slopes => "slopes",
            Command::Diag => "diag",
            Command::Split => "split",
            Command::Scan => "scan",
            Command::Verify => "verify",
        }
    }

    fn require_q(&self) -> Result<PrimePower> {
        let q = self.q.ok_or_else(|| invalid(format!("{} requires --q", self.name())))?;
        PrimePower::from_q(q)
    }

    fn single_k(&self) -> Result<Option<i64>> {
        match self.k {
            None => Ok(None),
            Some(r) => r
                .single()
                .map(Some)
                .ok_or_else(|| invalid(format!("{} takes a single weight, not a range", self.name()))),
        }
    }

    /// Resolves `--j/--n` or `--k` into a target, checking that they agree.
    fn target(&self) -> Result<Target> {
        let q = self.require_q()?;
        let k = self.single_k()?;
        match (self.j, self.n) {
            (Some(j), Some(n)) => {
                if j < 0 || j >= q.step().max(1) {
                    return Err(invalid(format!("--j must lie in [0, {}]", q.step().max(1) - 1)));
                }
                if n == 0 {
                    return Err(invalid("--n must be positive"));
                }
                let kb = block_weight(j, n, q);
                if k.is_some_and(|k| k != kb) {
                    return Err(invalid(format!("--k disagrees with the block weight {kb}")));
                }
                let m = self.m.unwrap_or(j + 1);
                if (kb - 2 * m).rem_euclid(q.step()) != 0 {
                    return Err(invalid(format!("--m must satisfy k ≡ 2m mod q-1 (k = {kb})")));
                }
                Ok(Target::Block { j, n, inst: WeightInstance::new(q, kb, Some(m))? })
            }
            (None, None) => {
                let k = k.ok_or_else(|| invalid(format!("{} requires --k or both --j and --n", self.name())))?;
                Ok(Target::Weight(WeightInstance::new(q, k, self.m)?))
            }
            _ => Err(invalid("--j and --n must be given together")),
        }
    }

    fn validate(&self) -> Result<()> {
        let reject = |present: bool, flag: &str| -> Result<()> {
            if present {
                Err(invalid(format!("{flag} does not apply to {}", self.name())))
            } else {
                Ok(())
            }
        };
        match self.command {
            Command::Verify => {
                reject(self.q.is_some(), "--q")?;
                reject(self.k.is_some(), "--k")?;
            }
            Command::Scan => {
                reject(self.j.is_some() || self.n.is_some(), "--j/--n")?;
                if self.k.is_none() {
                    return Err(invalid("scan requires --k lo..hi"));
                }
                if self.alpha_max.is_none() {
                    return Err(invalid("scan requires --alpha-max"));
                }
            }
            Command::Split => {
                reject(self.j.is_some() || self.n.is_some(), "--j/--n")?;
                if self.m.is_none() {
                    return Err(invalid("split requires --m"));
                }
            }
            _ => {}
        }
        if self.command != Command::Matrix {
            reject(self.coeffs, "--coeffs")?;
        }
        if self.command != Command::Scan {
            reject(self.alpha_max.is_some(), "--alpha-max")?;
            reject(!self.track.is_empty(), "--track")?;
        }
        if self.format == OutputFormat::Csv && !matches!(self.command, Command::Scan | Command::Matrix) {
            return Err(invalid("--format csv is only available for matrix and scan"));
        }
        if self.slopes == SlopeArg::Typed && self.command == Command::Scan {
            return Err(invalid("scan reports normalized slopes only"));
        }
        Ok(())
    }
}

/// Validates the configuration and runs the command.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let ok = |text: String| Ok(RunOutput { text, success: true });
    match cfg.command {
        Command::Matrix => ok(matrix_command(cfg)?),
        Command::Charpoly | Command::Slopes | Command::Diag => {
            let report = spectral_for(cfg)?;
            ok(match cfg.format {
                OutputFormat::Json => emit_json(&spectral_to_json(&report)),
                _ => match cfg.command {
                    Command::Charpoly => pretty_charpoly(&report),
                    Command::Slopes => pretty_slopes(&report),
                    _ => pretty_diag(&report),
                },
            })
        }
        Command::Split => {
            let q = cfg.require_q()?;
            let k = cfg.single_k()?.ok_or_else(|| invalid("split requires --k"))?;
            let split = new_old_split(&WeightInstance::new(q, k, cfg.m)?)?;
            ok(match cfg.format {
                OutputFormat::Json => emit_json(&split_to_json(&split)),
                _ => pretty_split(&split),
            })
        }
        Command::Scan => {
            let q = cfg.require_q()?;
            let r = cfg.k.expect("validated");
            let alpha_max = cfg.alpha_max.expect("validated");
            let report = gm_conjecture_scan(q, r.lo..=r.hi, alpha_max, &cfg.track)?;
            ok(match cfg.format {
                OutputFormat::Json => emit_json(&scan_to_json(&report)),
                OutputFormat::Csv => scan_csv(&report, &cfg.track),
                OutputFormat::Pretty => pretty_scan(&report),
            })
        }
        Command::Verify => {
            let report = run_verify();
            let text = match cfg.format {
                OutputFormat::Json => emit_json(&json!({
                    "passed": report.passed(),
                    "failed": report.failed(),
                    "checks": report.outcomes.iter().map(|o| json!({
                        "group": o.group, "name": o.name, "passed": o.passed, "detail": o.detail,
                    })).collect::<Vec<_>>(),
                })),
                _ => format!("{report}\n"),
            };
            Ok(RunOutput { text, success: report.all_pass() })
        }
    }
}

fn spectral_for(cfg: &RunConfig) -> Result<SpectralReport> {
    let opts = AnalyzeOptions {
        min_poly_limit: if cfg.command == Command::Diag { AnalyzeOptions::default().min_poly_limit } else { 0 },
        gamma0_only: false,
    };
    let (inst, only) = match cfg.target()? {
        Target::Block { j, inst, .. } => (inst, Some(j)),
        Target::Weight(inst) => (inst, None),
    };
    let mut report = analyze_with(&inst, &opts)?;
    if let Some(j) = only {
        report.blocks.retain(|b| b.descriptor.j == j);
    }
    if cfg.slopes == SlopeArg::Typed {
        report = denormalize_slopes(&report)?;
    }
    Ok(report)
}

// ---- matrix ----

fn matrix_command(cfg: &RunConfig) -> Result<String> {
    let (m, label) = match cfg.target()? {
        Target::Block { j, n, inst } => {
            (block_matrix(j, n, inst.q, !cfg.coeffs)?, format!("M({j},{n},{})", inst.q.q()))
        }
        Target::Weight(inst) => {
            let m = natural_ut_matrix(&inst);
            let m = if cfg.coeffs {
                let exps: Vec<usize> = (1..=inst.dim_single_cusp()).collect();
                m.strip_column_powers(&exps).ok_or_else(|| invalid("column powers of t do not divide"))?
            } else {
                m
            };
            (m, format!("U_t at q={} k={}", inst.q.q(), inst.k))
        }
    };
    Ok(match cfg.format {
        OutputFormat::Json => emit_json(&json!({
            "label": label,
            "rows": (0..m.rows()).map(|i| m.row(i).iter().map(tpoly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => {
            let mut s = String::new();
            for i in 0..m.rows() {
                let cells: Vec<String> = m.row(i).iter().map(csv_cell).collect();
                let _ = writeln!(s, "{}", cells.join(","));
            }
            s
        }
        OutputFormat::Pretty => format!("{label}\n{}", pretty_matrix(&m)),
    })
}

fn csv_cell(c: &TPoly) -> String {
    match c.degree() {
        None => "0".into(),
        Some(0) => c.field().signed(c.coeff(0)).to_string(),
        Some(_) => format!("\"{c}\""),
    }
}

/// Grid with `-1` shown for `p - 1` when `p > 2`.
pub fn pretty_matrix(m: &TMatrix) -> String {
    let cells: Vec<String> = m.entries().iter().map(|c| c.to_string()).collect();
    let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut s = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = (0..m.cols()).map(|j| format!("{:>width$}", cells[i * m.cols() + j])).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

// ---- pretty spectral output ----

fn block_header(b: &BlockReport) -> String {
    let d = &b.descriptor;
    format!("j={} size={}{}", d.j, d.size, if d.is_gamma0 { " gamma0" } else { "" })
}

/// `X^a (X^2 - t^k)^b (rest)`, pulling out the factors every block shares.
pub fn factored(f: &XPoly, k: i64) -> String {
    let p = f.p();
    let zero = TPoly::zero(p);
    let Some((a, mut rest)) = f.split_x_power() else { return "0".into() };
    let mut sign = "";
    if rest.leading() != TPoly::one(p) {
        rest = rest.scale(&TPoly::one(p).neg());
        sign = "-";
    }
    let mut newf = XPoly::x_pow(&zero, 2);
    newf = newf.sub(&XPoly::constant(TPoly::t_pow(p, k as usize)));
    let mut b = 0;
    while rest.degree().unwrap_or(0) >= 2 {
        match rest.exact_div(&newf) {
            Ok(Some(r)) => {
                rest = r;
                b += 1;
            }
            _ => break,
        }
    }
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("X".to_string()),
        a => parts.push(format!("X^{a}")),
    }
    if rest.degree().unwrap_or(0) > 0 {
        parts.push(format!("({rest})"));
    }
    match b {
        0 => {}
        1 => parts.push(format!("(X^2 - t^{k})")),
        b => parts.push(format!("(X^2 - t^{k})^{b}")),
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    format!("{sign}{}", parts.join(""))
}

fn pretty_charpoly(r: &SpectralReport) -> String {
    let mut s = format!("q={} k={}\n", r.instance.q.q(), r.instance.k);
    for b in &r.blocks {
        let _ = writeln!(s, "{}: {}", block_header(b), factored(&b.char_poly, r.instance.k));
    }
    s
}

fn slope_list(slopes: &[NewtonSlope]) -> String {
    slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn convention_str(c: SlopeConvention) -> &'static str {
    match c {
        SlopeConvention::Normalized => "normalized",
        SlopeConvention::Typed => "typed",
    }
}

fn pretty_slopes(r: &SpectralReport) -> String {
    let mut s = format!(
        "q={} k={} slopes ({}; slope:multiplicity)\n",
        r.instance.q.q(),
        r.instance.k,
        convention_str(r.convention)
    );
    for b in &r.blocks {
        let _ = writeln!(s, "{}: {}", block_header(b), slope_list(&b.slopes));
    }
    s
}

fn pretty_verdict(v: &DiagVerdict) -> String {
    format!(
        "{} ({}), min poly {}",
        if v.diagonalizable { "diagonalizable" } else { "not diagonalizable" },
        v.reason.as_str(),
        v.min_poly
    )
}

fn pretty_diag(r: &SpectralReport) -> String {
    let mut s = format!("q={} k={}\n", r.instance.q.q(), r.instance.k);
    for b in &r.blocks {
        let v = b.verdict.as_ref().map(pretty_verdict).unwrap_or_else(|| "skipped (block too large)".into());
        let _ = writeln!(s, "{}: {v}", block_header(b));
    }
    if let Some(v) = &r.gamma0_verdict {
        let _ = writeln!(s, "gamma0: {}", pretty_verdict(v));
    }
    s
}

fn ratfunc_str(c: &RatFunc) -> String {
    match c.to_poly() {
        Some(p) => p.to_string(),
        None => format!("({})/({})", c.numerator(), c.denominator()),
    }
}

fn pretty_split(sp: &NewOldSplit) -> String {
    let inst = &sp.instance;
    let mut s = format!(
        "q={} k={} m={} class j={} size={}\nker Tr = {}, ker Tr' = {}, new = {}, old = {}\n",
        inst.q.q(),
        inst.k,
        inst.m.unwrap_or_default(),
        sp.descriptor.j,
        sp.descriptor.size,
        sp.ker_trace_dim,
        sp.ker_twisted_trace_dim,
        sp.new_dim(),
        sp.old_dim()
    );
    for (i, v) in sp.new_space.iter().enumerate() {
        let terms: Vec<String> = v
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| format!("({})chi_{idx}", ratfunc_str(c)))
            .collect();
        let _ = writeln!(s, "new[{i}] = {}", terms.join(" + "));
    }
    let _ = writeln!(s, "U^2 = t^k on new: {}", sp.new_square_is_t_k());
    let _ = writeln!(s, "old quotient char poly: {}", sp.old_quotient_char_poly);
    for e in old_eigen_from_split(sp) {
        let ev = e.eigenvalue.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "old factor {} (mult {}), eigenvalue {ev}", e.factor, e.multiplicity);
    }
    s
}

fn pretty_scan(r: &ScanReport) -> String {
    let mut s = format!("q={} k={}..{} alpha<={}\n", r.q.q(), r.k_range.0, r.k_range.1, r.alpha_max);
    for a in &r.alphas {
        let eligible = a.values.first().map(|v| v.0);
        let _ = writeln!(
            s,
            "alpha={} modulus={} period={} {}{}",
            a.alpha,
            a.modulus,
            a.period,
            if a.holds() { "constant on classes" } else { "NOT constant on classes" },
            eligible.map(|k| format!(" (k>={k})")).unwrap_or_default()
        );
        for (res, ds) in a.by_residue(a.period) {
            let ds: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "  k ≡ {res} mod {}: d = {}", a.period, ds.join("/"));
        }
        for (res, pairs) in &a.violations {
            let pairs: Vec<String> = pairs.iter().map(|(k, d)| format!("{k}:{d}")).collect();
            let _ = writeln!(s, "  violation mod {}: class {res} has {}", a.modulus, pairs.join(" "));
        }
    }
    s
}

/// Rows `(q, k, alpha_num, alpha_den, d)` for `d > 0`, plus zero rows for
/// tracked slopes.
pub fn scan_csv(r: &ScanReport, track: &[Rational]) -> String {
    let mut s = String::from("q,k,alpha_num,alpha_den,d\n");
    for w in &r.weights {
        for a in &r.alphas {
            let d = w.d(a.alpha);
            if d > 0 || track.contains(&a.alpha) {
                let _ = writeln!(s, "{},{},{},{},{d}", r.q.q(), w.k, a.alpha.numer(), a.alpha.denom());
            }
        }
    }
    s
}

// ---- JSON ----

/// Pretty-printed JSON followed by a newline.
pub fn emit_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn parse_err(what: &str) -> Error {
    Error::Parse(format!("malformed or missing {what}"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(key))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(what))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what))
}

pub fn tpoly_to_json(t: &TPoly) -> Value {
    json!(t.coeffs())
}

pub fn tpoly_from_json(p: u32, v: &Value) -> Result<TPoly> {
    let coeffs = as_array(v, "polynomial")?
        .iter()
        .map(|c| match c.as_u64() {
            Some(c) if c < p as u64 => Ok(c as u32),
            _ => Err(parse_err("residue")),
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(TPoly::from_residues(p, coeffs))
}

pub fn xpoly_to_json(f: &XPoly) -> Value {
    Value::Array(f.coeffs().iter().map(tpoly_to_json).collect())
}

pub fn xpoly_from_json(p: u32, v: &Value) -> Result<XPoly> {
    let coeffs = as_array(v, "X-polynomial")?.iter().map(|c| tpoly_from_json(p, c)).collect::<Result<Vec<_>>>()?;
    Ok(XPoly::new(coeffs, &TPoly::zero(p)))
}

fn rational_to_json(r: Rational) -> Value {
    json!({"num": r.numer(), "den": r.denom()})
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    let den = as_i64(get(v, "den")?, "den")?;
    if den == 0 {
        return Err(parse_err("den"));
    }
    Ok(Rational::new(as_i64(get(v, "num")?, "num")?, den))
}

pub fn slope_to_json(s: &NewtonSlope) -> Value {
    match s.value {
        SlopeValue::Infinite => json!({"inf": true, "mult": s.multiplicity}),
        SlopeValue::Finite(r) => json!({"num": r.numer(), "den": r.denom(), "mult": s.multiplicity}),
    }
}

pub fn slope_from_json(v: &Value) -> Result<NewtonSlope> {
    let mult = as_i64(get(v, "mult")?, "mult")? as usize;
    if v.get("inf").and_then(Value::as_bool) == Some(true) {
        return Ok(NewtonSlope::infinite(mult));
    }
    Ok(NewtonSlope::finite(rational_from_json(v)?, mult))
}

fn slopes_from_json(v: &Value) -> Result<Vec<NewtonSlope>> {
    as_array(v, "slopes")?.iter().map(slope_from_json).collect()
}

fn verdict_to_json(v: &DiagVerdict) -> Value {
    json!({
        "diagonalizable": v.diagonalizable,
        "reason": v.reason.as_str(),
        "min_poly": xpoly_to_json(&v.min_poly),
    })
}

fn verdict_from_json(p: u32, v: &Value) -> Result<Option<DiagVerdict>> {
    if v.is_null() {
        return Ok(None);
    }
    let reason = match get(v, "reason")?.as_str() {
        Some("separable-minpoly") => DiagReason::SeparableMinpoly,
        Some("inseparable-eigenvalue") => DiagReason::InseparableEigenvalue,
        Some("repeated-root-minpoly") => DiagReason::RepeatedRootMinpoly,
        _ => return Err(parse_err("reason")),
    };
    Ok(Some(DiagVerdict {
        diagonalizable: get(v, "diagonalizable")?.as_bool().ok_or_else(|| parse_err("diagonalizable"))?,
        reason,
        min_poly: xpoly_from_json(p, get(v, "min_poly")?)?,
    }))
}

fn instance_to_json(inst: &WeightInstance) -> Value {
    json!({"q": inst.q.q(), "k": inst.k, "m": inst.m})
}

fn instance_from_json(v: &Value) -> Result<WeightInstance> {
    let q = PrimePower::from_q(get(v, "q")?.as_u64().ok_or_else(|| parse_err("q"))?)?;
    let m = match get(v, "m")? {
        Value::Null => None,
        m => Some(as_i64(m, "m")?),
    };
    WeightInstance::new(q, as_i64(get(v, "k")?, "k")?, m)
}

pub fn spectral_to_json(r: &SpectralReport) -> Value {
    let mut blocks: Vec<&BlockReport> = r.blocks.iter().collect();
    blocks.sort_by_key(|b| b.descriptor.j);
    json!({
        "instance": instance_to_json(&r.instance),
        "convention": convention_str(r.convention),
        "blocks": blocks.iter().map(|b| json!({
            "j": b.descriptor.j,
            "size": b.descriptor.size,
            "members": b.descriptor.member_indices,
            "gamma0": b.descriptor.is_gamma0,
            "char_poly": xpoly_to_json(&b.char_poly),
            "slopes": b.slopes.iter().map(slope_to_json).collect::<Vec<_>>(),
            "verdict": b.verdict.as_ref().map(verdict_to_json),
        })).collect::<Vec<_>>(),
        "gamma0_verdict": r.gamma0_verdict.as_ref().map(verdict_to_json),
    })
}

/// Inverse of [`spectral_to_json`]; descriptors are rebuilt from `(j, k, q)`
/// and must match the stored members.
pub fn spectral_from_json(v: &Value) -> Result<SpectralReport> {
    let instance = instance_from_json(get(v, "instance")?)?;
    let p = instance.p();
    let convention = match get(v, "convention")?.as_str() {
        Some("normalized") => SlopeConvention::Normalized,
        Some("typed") => SlopeConvention::Typed,
        _ => return Err(parse_err("convention")),
    };
    let mut blocks = Vec::new();
    for b in as_array(get(v, "blocks")?, "blocks")? {
        let descriptor = BlockDescriptor::new(as_i64(get(b, "j")?, "j")?, instance.k, instance.q)?;
        let members: Vec<i64> =
            as_array(get(b, "members")?, "members")?.iter().map(|x| as_i64(x, "member")).collect::<Result<_>>()?;
        if members != descriptor.member_indices {
            return Err(parse_err("members"));
        }
        blocks.push(BlockReport {
            descriptor,
            char_poly: xpoly_from_json(p, get(b, "char_poly")?)?,
            slopes: slopes_from_json(get(b, "slopes")?)?,
            verdict: verdict_from_json(p, get(b, "verdict")?)?,
        });
    }
    Ok(SpectralReport {
        instance,
        blocks,
        gamma0_verdict: verdict_from_json(p, get(v, "gamma0_verdict")?)?,
        convention,
    })
}

pub fn scan_to_json(r: &ScanReport) -> Value {
    let pairs = |v: &[(i64, usize)]| v.iter().map(|(k, d)| json!([k, d])).collect::<Vec<_>>();
    json!({
        "q": r.q.q(),
        "k_min": r.k_range.0,
        "k_max": r.k_range.1,
        "alpha_max": rational_to_json(r.alpha_max),
        "weights": r.weights.iter().map(|w| json!({
            "k": w.k,
            "slopes": w.slopes.iter().map(slope_to_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "alphas": r.alphas.iter().map(|a| json!({
            "alpha": rational_to_json(a.alpha),
            "modulus": a.modulus,
            "period": a.period,
            "values": pairs(&a.values),
            "violations": a.violations.iter().map(|(res, v)| json!({"residue": res, "values": pairs(v)})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn pairs_from_json(v: &Value) -> Result<Vec<(i64, usize)>> {
    as_array(v, "values")?
        .iter()
        .map(|x| match x.as_array().map(|a| a.as_slice()) {
            Some([k, d]) => Ok((as_i64(k, "k")?, as_i64(d, "d")? as usize)),
            _ => Err(parse_err("(k, d) pair")),
        })
        .collect()
}

/// Inverse of [`scan_to_json`].
pub fn scan_from_json(v: &Value) -> Result<ScanReport> {
    let q = PrimePower::from_q(get(v, "q")?.as_u64().ok_or_else(|| parse_err("q"))?)?;
    let weights = as_array(get(v, "weights")?, "weights")?
        .iter()
        .map(|w| Ok(WeightSlopes { k: as_i64(get(w, "k")?, "k")?, slopes: slopes_from_json(get(w, "slopes")?)? }))
        .collect::<Result<Vec<_>>>()?;
    let alphas = as_array(get(v, "alphas")?, "alphas")?
        .iter()
        .map(|a| {
            Ok(AlphaSummary {
                alpha: rational_from_json(get(a, "alpha")?)?,
                modulus: get(a, "modulus")?.as_u64().ok_or_else(|| parse_err("modulus"))?,
                period: get(a, "period")?.as_u64().ok_or_else(|| parse_err("period"))?,
                values: pairs_from_json(get(a, "values")?)?,
                violations: as_array(get(a, "violations")?, "violations")?
                    .iter()
                    .map(|x| Ok((as_i64(get(x, "residue")?, "residue")?, pairs_from_json(get(x, "values")?)?)))
                    .collect::<Result<Vec<_>>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        q,
        k_range: (as_i64(get(v, "k_min")?, "k_min")?, as_i64(get(v, "k_max")?, "k_max")?),
        alpha_max: rational_from_json(get(v, "alpha_max")?)?,
        weights,
        alphas,
    })
}

fn ratfunc_to_json(c: &RatFunc) -> Value {
    json!({"num": tpoly_to_json(c.numerator()), "den": tpoly_to_json(c.denominator())})
}

pub fn split_to_json(sp: &NewOldSplit) -> Value {
    json!({
        "instance": instance_to_json(&sp.instance),
        "j": sp.descriptor.j,
        "members": sp.descriptor.member_indices,
        "ker_trace_dim": sp.ker_trace_dim,
        "ker_twisted_trace_dim": sp.ker_twisted_trace_dim,
        "new_dim": sp.new_dim(),
        "old_dim": sp.old_dim(),
        "new_space": sp.new_space.iter().map(|v| v.coords().iter().map(ratfunc_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "new_square_is_t_k": sp.new_square_is_t_k(),
        "old_quotient_char_poly": xpoly_to_json(&sp.old_quotient_char_poly),
        "old_eigenvalues": old_eigen_from_split(sp).iter().map(|e| json!({
            "factor": xpoly_to_json(&e.factor),
            "mult": e.multiplicity,
            "eigenvalue": e.eigenvalue.as_ref().map(tpoly_to_json),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("atkin").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn json_encodings() {
        assert_eq!(slope_to_json(&NewtonSlope::finite(Rational::new(5, 2), 2)), json!({"num":5,"den":2,"mult":2}));
        assert_eq!(slope_to_json(&NewtonSlope::infinite(1)), json!({"inf":true,"mult":1}));
        assert_eq!(tpoly_to_json(&TPoly::zero(3)), json!([]));
        assert_eq!(tpoly_to_json(&TPoly::t_pow(3, 4)), json!([0, 0, 0, 0, 1]));
    }

    #[test]
    fn parses_ranges_and_rationals() {
        assert_eq!("8..98".parse::<KRange>().unwrap(), KRange { lo: 8, hi: 98 });
        assert_eq!("8..=98".parse::<KRange>().unwrap(), KRange { lo: 8, hi: 98 });
        assert_eq!("40".parse::<KRange>().unwrap().single(), Some(40));
        assert!("9..8".parse::<KRange>().is_err());
        assert_eq!(parse_rational("5/2").unwrap(), Rational::new(5, 2));
        assert!(parse_rational("1/0").is_err());
        let c = cfg(&["scan", "--q", "2", "--k", "8..20", "--alpha-max", "5/2", "--track", "3,5/2"]);
        assert_eq!(c.track, vec![Rational::from_integer(3), Rational::new(5, 2)]);
    }

    #[test]
    fn validation_names_the_precondition() {
        let msg = |args: &[&str]| run(&cfg(args)).unwrap_err().to_string();
        assert!(msg(&["matrix", "--j", "3", "--n", "5"]).contains("--q"));
        assert!(msg(&["matrix", "--q", "8", "--j", "3"]).contains("together"));
        assert!(msg(&["split", "--q", "9", "--k", "40"]).contains("--m"));
        assert!(msg(&["scan", "--q", "2", "--k", "8..20"]).contains("--alpha-max"));
        assert!(msg(&["charpoly", "--q", "2", "--k", "8..20"]).contains("single weight"));
        assert!(msg(&["diag", "--q", "6", "--k", "8"]).contains("prime power"));
        assert!(msg(&["slopes", "--q", "9", "--k", "40", "--slopes", "typed"]).contains("type m"));
    }

    #[test]
    fn matrix_grid() {
        let out = run(&cfg(&["matrix", "--q", "9", "--j", "3", "--n", "5", "--coeffs"])).unwrap();
        assert_eq!(
            out.text,
            "M(3,5,9)\n 1 -1  0 -1  0\n 0  0  0 -1  0\n 0  0 -1  0  0\n 0 -1  0  0  0\n-1  0  0  0  0\n"
        );
    }

    #[test]
    fn charpoly_is_factored() {
        let out = run(&cfg(&["charpoly", "--q", "3", "--j", "1", "--n", "4"])).unwrap();
        assert!(out.text.contains("X(X + t^4 + t^2)(X^2 - t^10)"), "{}", out.text);
    }

    #[test]
    fn spectral_round_trip_and_determinism() {
        let c = cfg(&["diag", "--q", "9", "--k", "40", "--m", "4", "--format", "json"]);
        let a = run(&c).unwrap().text;
        assert_eq!(a, run(&c).unwrap().text);
        let v: Value = serde_json::from_str(&a).unwrap();
        let back = spectral_from_json(&v).unwrap();
        assert_eq!(emit_json(&spectral_to_json(&back)), a);
        let inst = WeightInstance::new(PrimePower::from_q(9).unwrap(), 40, Some(4)).unwrap();
        assert_eq!(back, analyze_with(&inst, &AnalyzeOptions::default()).unwrap());
    }

    #[test]
    fn scan_round_trip_and_csv() {
        let q = PrimePower::from_q(2).unwrap();
        let track = [Rational::from_integer(3)];
        let r = gm_conjecture_scan(q, 8..=16, Rational::from_integer(4), &track).unwrap();
        let back = scan_from_json(&serde_json::from_str(&emit_json(&scan_to_json(&r))).unwrap()).unwrap();
        assert_eq!(back, r);
        let csv = scan_csv(&r, &track);
        assert!(csv.starts_with("q,k,alpha_num,alpha_den,d\n"));
        assert!(csv.lines().skip(1).all(|l| !l.ends_with(",0") || l.contains(",3,1,")));
        assert_eq!(csv.lines().filter(|l| l.contains(",3,1,")).count(), 9);
    }
}
