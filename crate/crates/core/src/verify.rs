//! Self-check suite behind the `verify` command: golden matrices,
//! polynomials, eigen-data and slope patterns, plus the structural
//! invariants of every block.

use std::fmt;

use crate::charpoly::{char_poly, min_poly};
use crate::error::Result;
use crate::field::PrimePower;
use crate::hecke::{
    block_matrix, block_weight, class_size, gamma0_classes, BlockDescriptor, CocycleVector, WeightInstance,
};
use crate::matrix::TMatrix;
use crate::newold::{new_old_split, old_eigen_from_split};
use crate::newton::{count_with_slope, newton_slopes, NewtonSlope, Rational};
use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::scan::slope_multiplicity;
use crate::spectral::{analyze_with, AnalyzeOptions, DiagReason};
use crate::symmetry::{check_theorem_shape, verify_symmetries, ShapeClass};
use crate::tpoly::TPoly;
use crate::xpoly::{is_separable_squarefree, XPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub group: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    fn record(
        &mut self,
        group: &'static str,
        name: impl Into<String>,
        outcome: Result<std::result::Result<(), String>>,
    ) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(why)) => (false, why),
            Err(e) => (false, e.to_string()),
        };
        self.outcomes.push(CheckOutcome { group, name: name.into(), passed, detail });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            write!(f, "{tag} [{}] {}", o.group, o.name)?;
            if !o.detail.is_empty() {
                write!(f, ": {}", o.detail)?;
            }
            writeln!(f)?;
        }
        write!(f, "{} passed, {} failed", self.passed(), self.failed())
    }
}

fn expect(ok: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn pq(q: u64) -> PrimePower {
    PrimePower::from_q(q).expect("prime power")
}

type Golden = (i64, usize, &'static [&'static [i64]]);

const M358: &[&[i64]] = &[&[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0]];
const M688: &[&[i64]] = &[
    &[1, 1, 1, 1, 1, 1, 1, 0],
    &[0, 0, 0, 0, 0, 0, 1, 0],
    &[0, 0, 0, 0, 0, 1, 0, 0],
    &[0, 0, 0, 0, 1, 0, 0, 0],
    &[0, 0, 0, 1, 0, 0, 0, 0],
    &[0, 0, 1, 0, 0, 0, 0, 0],
    &[0, 1, 0, 0, 0, 0, 0, 0],
    &[1, 0, 0, 0, 0, 0, 0, 0],
];
const M359: &[&[i64]] =
    &[&[1, -1, 0, -1, 0], &[0, 0, 0, -1, 0], &[0, 0, -1, 0, 0], &[0, -1, 0, 0, 0], &[-1, 0, 0, 0, 0]];
const M04: &[&[i64]] = &[&[1, 0, 0, 0], &[1, 0, 1, 1], &[1, 1, 0, 1], &[1, 0, 0, 0]];
const M06: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0],
    &[1, 0, 0, 0, 1, 1],
    &[1, 0, 0, 1, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 0, 0, 1],
    &[1, 0, 0, 0, 0, 0],
];
const M052: &[&[i64]] = &[&[1, 0, 0, 0, 0], &[1, 1, 0, 0, 1], &[1, 0, 1, 0, 1], &[1, 1, 0, 0, 1], &[1, 0, 0, 0, 0]];
const M074: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0, 0],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 0, 0, 0, 1, 0, 1],
    &[1, 0, 0, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 0, 0, 0, 0, 0, 0],
];
const M063: &[&[i64]] = &[
    &[1, 0, 0, 0, 0, 0],
    &[1, 1, 0, 0, 0, -1],
    &[1, 0, 0, 1, 0, -1],
    &[1, 0, 1, 0, 0, -1],
    &[1, 1, 0, 0, 0, -1],
    &[1, 0, 0, 0, 0, 0],
];

/// `M(0, 12, 9)`: first column of ones, last column `-1` on rows 2..11, an
/// extra `1` at (2, 2) and the antidiagonal on rows 3..11.
fn m0129() -> Vec<Vec<i64>> {
    let n = 12;
    (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| match (a, b) {
                    (_, 1) => 1,
                    (1, _) | (12, _) => 0,
                    (_, 12) => -1,
                    (2, 2) => 1,
                    (a, b) if a >= 3 && a + b == n + 1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn const_matrix(p: u32, rows: &[Vec<i64>]) -> TMatrix {
    let cells = rows.iter().map(|r| r.iter().map(|&c| TPoly::from_ints(p, &[c])).collect()).collect();
    TMatrix::from_rows(cells, &TPoly::zero(p)).expect("rectangular")
}

fn golden_block(j: i64, n: usize, q: u64, rows: &[Vec<i64>]) -> Result<std::result::Result<(), String>> {
    let qq = pq(q);
    let got = block_matrix(j, n, qq, false)?;
    let want = const_matrix(qq.p(), rows);
    Ok(expect(got == want, || format!("got\n{got}\nwant\n{want}")))
}

/// Matrix from `(coefficient, t-exponent)` cells.
fn monomial_matrix(p: u32, rows: &[Vec<(i64, usize)>]) -> TMatrix {
    let f = crate::field::PrimeField::new(p).expect("prime");
    let cells = rows.iter().map(|r| r.iter().map(|&(c, e)| TPoly::monomial(p, f.reduce(c), e)).collect()).collect();
    TMatrix::from_rows(cells, &TPoly::zero(p)).expect("rectangular")
}

fn m14qt(q: u64) -> Vec<Vec<(i64, usize)>> {
    let s = (q - 1) as usize;
    let (e1, e2, e3, e4) = (2, 2 + s, 2 + 2 * s, 2 + 3 * s);
    vec![
        vec![(2, e1), (-2, e2), (-2, e3), (1, e4)],
        vec![(1, e1), (-1, e2), (-2, e3), (1, e4)],
        vec![(0, 0), (-1, e2), (0, 0), (0, 0)],
        vec![(-1, e1), (0, 0), (0, 0), (0, 0)],
    ]
}

fn xp(p: u32, coeffs: &[&[i64]]) -> XPoly {
    XPoly::new(coeffs.iter().map(|c| TPoly::from_ints(p, c)).collect(), &TPoly::zero(p))
}

/// `X - λ` with `λ = c t^e`.
fn linear(p: u32, c: i64, e: usize) -> XPoly {
    let mut lam = vec![0i64; e + 1];
    lam[e] = -c;
    xp(p, &[&lam, &[1]])
}

fn x2_minus_tk(p: u32, k: usize) -> XPoly {
    let mut c = vec![0i64; k + 1];
    c[k] = -1;
    xp(p, &[&c, &[0], &[1]])
}

fn printed_matrices(rep: &mut VerifyReport) {
    let owned = |rows: &[&[i64]]| rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>();
    let fixed: [(Golden, u64); 7] = [
        ((3, 5, M358), 8),
        ((6, 8, M688), 8),
        ((3, 5, M359), 9),
        ((0, 5, M052), 2),
        ((0, 7, M074), 4),
        ((0, 6, M063), 3),
        ((0, 4, M04), 2),
    ];
    for ((j, n, rows), q) in fixed {
        rep.record("matrices", format!("M({j},{n},{q})"), golden_block(j, n, q, &owned(rows)));
    }
    for q in [4, 8, 16] {
        rep.record("matrices", format!("M(0,4,{q})"), golden_block(0, 4, q, &owned(M04)));
        rep.record("matrices", format!("M(0,6,{q})"), golden_block(0, 6, q, &owned(M06)));
    }
    rep.record("matrices", "M(0,12,9)", golden_block(0, 12, 9, &m0129()));
    for q in [3, 4, 5] {
        let outcome = (|| {
            let qq = pq(q);
            let got = block_matrix(1, 4, qq, true)?;
            let want = monomial_matrix(qq.p(), &m14qt(q));
            Ok(expect(got == want, || format!("got\n{got}\nwant\n{want}")))
        })();
        rep.record("matrices", format!("M(1,4,{q},t)"), outcome);
    }
    let outcome = (|| {
        let got = block_matrix(3, 5, pq(9), true)?;
        let want = monomial_matrix(
            3,
            &[
                vec![(1, 4), (-1, 12), (0, 0), (-1, 28), (0, 0)],
                vec![(0, 0), (0, 0), (0, 0), (-1, 28), (0, 0)],
                vec![(0, 0), (0, 0), (-1, 20), (0, 0), (0, 0)],
                vec![(0, 0), (-1, 12), (0, 0), (0, 0), (0, 0)],
                vec![(-1, 4), (0, 0), (0, 0), (0, 0), (0, 0)],
            ],
        );
        Ok(expect(got == want, || format!("got\n{got}\nwant\n{want}")))
    })();
    rep.record("matrices", "M(3,5,9,t)", outcome);
}

fn rf(p: u32, c: &[i64]) -> RatFunc {
    RatFunc::from_poly(TPoly::from_ints(p, c))
}

fn poly_with(p: u32, terms: &[(i64, usize)]) -> Vec<i64> {
    let _ = p;
    let len = terms.iter().map(|t| t.1).max().unwrap_or(0) + 1;
    let mut v = vec![0i64; len];
    for &(c, e) in terms {
        v[e] += c;
    }
    v
}

fn q9_k40(rep: &mut VerifyReport) {
    let outcome = (|| {
        let q = pq(9);
        let inst = WeightInstance::new(q, 40, Some(4))?;
        let desc = BlockDescriptor::new(3, 40, q)?;
        if desc.member_indices != [3, 11, 19, 27, 35] {
            return Ok(Err(format!("members {:?}", desc.member_indices)));
        }
        let m = block_matrix(3, 5, q, true)?;
        let cp = char_poly(&m)?;
        // -X (X - t^4)(X - t^20)(X + t^20)^2
        let want = xp(3, &[&[0], &[-1]]).mul(&linear(3, 1, 4)).mul(&linear(3, 1, 20)).mul(&linear(3, -1, 20).pow(2));
        if cp != want {
            return Ok(Err(format!("char poly {cp}")));
        }
        let split = new_old_split(&inst)?;
        let p = 3;
        let chi = CocycleVector::from_terms(
            inst,
            &[
                (3, rf(p, &poly_with(p, &[(1, 24), (1, 16)]))),
                (11, rf(p, &poly_with(p, &[(1, 24), (1, 8)]))),
                (27, rf(p, &poly_with(p, &[(1, 0), (1, 16)]))),
                (35, rf(p, &poly_with(p, &[(1, 0), (1, 8)]))),
            ],
        )?;
        let chi_prime = CocycleVector::from_terms(
            inst,
            &[
                (3, rf(p, &poly_with(p, &[(1, 24), (-1, 16)]))),
                (11, rf(p, &poly_with(p, &[(1, 24), (-1, 8)]))),
                (27, rf(p, &poly_with(p, &[(1, 0), (-1, 16)]))),
                (35, rf(p, &poly_with(p, &[(1, 0), (-1, 8)]))),
            ],
        )?;
        let chi19 = CocycleVector::basis(inst, 19)?;
        let u = m.to_rat();
        for (name, v, lam) in [("chi", &chi, -1i64), ("chi'", &chi_prime, 1), ("chi_19", &chi19, -1)] {
            if !split.contains(v)? {
                return Ok(Err(format!("{name} is not in the new space")));
            }
            let coords = v.restrict(&desc);
            let image = u.mul_vec(&coords)?;
            let scaled: Vec<RatFunc> =
                coords.iter().map(|c| c.mul(&RatFunc::monomial(p, if lam < 0 { 2 } else { 1 }, 20))).collect();
            if image != scaled {
                return Ok(Err(format!("{name} is not an eigenvector for {lam}·t^20")));
            }
        }
        if split.new_dim() != 3 {
            return Ok(Err(format!("new space has dimension {}", split.new_dim())));
        }
        let old = old_eigen_from_split(&split);
        let eig: Vec<Option<TPoly>> = old.iter().map(|o| o.eigenvalue.clone()).collect();
        Ok(expect(eig == vec![Some(TPoly::zero(3)), Some(TPoly::t_pow(3, 4))], || format!("old eigenvalues {eig:?}")))
    })();
    rep.record("example", "q=9 k=40 m=4 class C_3", outcome);
}

fn m14_polys(rep: &mut VerifyReport) {
    for q in [3u64, 4, 5, 7, 8, 9] {
        let outcome = (|| {
            let qq = pq(q);
            let p = qq.p();
            let k = 4 + 3 * (q as usize - 1);
            let m = block_matrix(1, 4, qq, true)?;
            let mut mid = vec![0i64; q as usize + 2];
            mid[q as usize + 1] += 1;
            mid[2] -= 2;
            let want = xp(p, &[&[0], &[1]]).mul(&xp(p, &[&mid, &[1]])).mul(&x2_minus_tk(p, k));
            let cp = char_poly(&m)?;
            if cp != want {
                return Ok(Err(format!("char poly {cp}")));
            }
            let slopes = newton_slopes(&cp)?;
            // 2t^2 vanishes in characteristic 2, leaving the root t^(q+1)
            let low = if p == 2 { q as i64 + 1 } else { 2 };
            let two = count_with_slope(&slopes, Rational::from_integer(low));
            let half = count_with_slope(&slopes, Rational::new(k as i64, 2));
            if two != 1 || half != 2 {
                return Ok(Err(format!("slopes {slopes:?}")));
            }
            let sep = is_separable_squarefree(&min_poly(&m)?)?;
            if sep != (p != 2) {
                return Ok(Err(format!("diagonalizable = {sep}")));
            }
            let inst = WeightInstance::new(qq, k as i64, Some(2))?;
            let old = old_eigen_from_split(&new_old_split(&inst)?);
            let mut lam = vec![0i64; q as usize + 2];
            lam[2] += 2;
            lam[q as usize + 1] -= 1;
            let want_eig = TPoly::from_ints(p, &lam);
            Ok(expect(old.iter().any(|o| o.eigenvalue.as_ref() == Some(&want_eig)), || format!("old part {old:?}")))
        })();
        rep.record("example", format!("M(1,4,{q},t) spectrum"), outcome);
    }
}

fn families(rep: &mut VerifyReport) {
    for q in [3u64, 4, 5, 7, 8, 9, 16] {
        let outcome = (|| {
            let qq = pq(q);
            let p = qq.p();
            for j in 1..(q as i64 - 1) {
                for n in 2..=(j as usize + 1) {
                    let shape = check_theorem_shape(j, n, qq)?;
                    if shape.class != ShapeClass::Antidiagonal || !shape.matches() {
                        return Ok(Err(format!("M({j},{n},{q}) is not antidiagonal")));
                    }
                    let k = block_weight(j, n, qq) as usize;
                    let mut want = x2_minus_tk(p, k).pow((n / 2) as u32);
                    if n % 2 == 1 {
                        let f = qq.field();
                        let mut c = vec![0i64; k / 2 + 1];
                        c[k / 2] = f.signed(f.sign(j + 2));
                        want = want.mul(&xp(p, &[&c, &[-1]]));
                    }
                    let got = char_poly(&block_matrix(j, n, qq, true)?)?;
                    if got != want {
                        return Ok(Err(format!("M({j},{n},{q},t) char poly {got}")));
                    }
                }
            }
            Ok(Ok(()))
        })();
        rep.record("families", format!("antidiagonal blocks, q={q}"), outcome);
    }
    for q in [2u64, 3, 4, 5, 8, 9] {
        let outcome = (|| {
            let qq = pq(q);
            for n in 2..=(q as usize + 2) {
                let shape = check_theorem_shape(0, n, qq)?;
                if shape.class != ShapeClass::J0 || !shape.matches() {
                    return Ok(Err(format!("M(0,{n},{q}) deviates at {:?}", shape.deviations)));
                }
                let k = block_weight(0, n, qq);
                let m = block_matrix(0, n, qq, true)?;
                let slopes = newton_slopes(&char_poly(&m)?)?;
                let want = vec![
                    NewtonSlope::infinite(1),
                    NewtonSlope::finite(Rational::from_integer(1), 1),
                    NewtonSlope::finite(Rational::new(k, 2), n - 2),
                ];
                let got = crate::spectral::merge_slopes(slopes);
                let want = crate::spectral::merge_slopes(want.into_iter().filter(|s| s.multiplicity > 0));
                if got != want {
                    return Ok(Err(format!("M(0,{n},{q},t) slopes {got:?}")));
                }
                let diag = is_separable_squarefree(&min_poly(&m)?)?;
                if diag != (q % 2 == 1 || n <= 3) {
                    return Ok(Err(format!("M(0,{n},{q},t) diagonalizable = {diag}")));
                }
            }
            Ok(Ok(()))
        })();
        rep.record("families", format!("j=0 blocks, q={q}"), outcome);
    }
    for q in [8u64, 9] {
        for j in [2i64, 4, 6] {
            let outcome = (|| {
                let qq = pq(q);
                let p = qq.p();
                let n = j as usize + 2;
                let shape = check_theorem_shape(j, n, qq)?;
                if shape.class != ShapeClass::JPlus2 || !shape.matches() {
                    return Ok(Err(format!("deviations {:?}", shape.deviations)));
                }
                let k = block_weight(j, n, qq) as usize;
                let mut xtj = vec![0i64; j as usize + 2];
                xtj[j as usize + 1] = -1;
                let want = xp(p, &[&[0], &xtj, &[1]]).mul(&x2_minus_tk(p, k).pow((n as u32 - 2) / 2));
                let got = char_poly(&block_matrix(j, n, qq, true)?)?;
                Ok(expect(got == want, || format!("char poly {got}")))
            })();
            rep.record("families", format!("M({j},{},{q},t) eigenvalues", j + 2), outcome);
        }
    }
}

fn symmetries(rep: &mut VerifyReport) {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let outcome = (|| {
            let qq = pq(q);
            for j in 0..(q as i64 - 1) {
                for n in 1..=12 {
                    let r = verify_symmetries(j, n, qq)?;
                    if !r.all_pass() {
                        let bad: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
                        return Ok(Err(format!("M({j},{n},{q}): {bad:?}")));
                    }
                }
            }
            Ok(Ok(()))
        })();
        rep.record("symmetry", format!("all blocks, q={q}, n<=12"), outcome);
    }
}

fn non_diagonalizable(rep: &mut VerifyReport) {
    for q in [2u64, 4, 8] {
        let outcome = (|| {
            let qq = pq(q);
            let opts = AnalyzeOptions { gamma0_only: true, ..AnalyzeOptions::default() };
            let mut k = q as i64 + 3;
            while k <= 4 * q as i64 + 1 {
                let r = analyze_with(&WeightInstance::new(qq, k, None)?, &opts)?;
                let Some(v) = &r.gamma0_verdict else {
                    return Ok(Err(format!("k={k}: no verdict")));
                };
                let fractional =
                    r.gamma0_blocks().any(|b| b.slopes.iter().any(|s| s.slope() == Some(Rational::new(k, 2))));
                if v.diagonalizable || !(v.reason == DiagReason::InseparableEigenvalue || fractional) {
                    return Ok(Err(format!("k={k}: {:?}", v.reason)));
                }
                k += 2;
            }
            Ok(Ok(()))
        })();
        rep.record("diagonalizability", format!("odd weights, q={q}"), outcome);
    }
}

/// `(α, lowest weight, modulus, [(residue, d)], default d)`.
type SlopePattern = (Rational, i64, i64, &'static [(i64, usize)], usize);

pub(crate) fn slope_patterns() -> [SlopePattern; 3] {
    [
        (Rational::from_integer(4), 8, 8, &[(4, 1), (0, 3)], 0),
        (Rational::new(5, 2), 8, 4, &[(1, 2)], 0),
        (Rational::from_integer(8), 18, 16, &[(0, 5), (8, 1)], 0),
    ]
}

fn slope_data(rep: &mut VerifyReport) {
    for (alpha, lo, modulus, table, default) in slope_patterns() {
        let outcome = (|| {
            for k in lo..=98 {
                let want = table.iter().find(|(r, _)| k.rem_euclid(modulus) == *r).map(|x| x.1).unwrap_or(default);
                let got = slope_multiplicity(k, alpha, pq(2))?;
                if got != want {
                    return Ok(Err(format!("d({k},{alpha}) = {got}, expected {want}")));
                }
            }
            Ok(Ok(()))
        })();
        rep.record("slopes", format!("d(k,{alpha}) for q=2, {lo}<=k<=98"), outcome);
    }
}

fn bookkeeping(rep: &mut VerifyReport) {
    let outcome = (|| {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let qq = pq(q);
            for k in 2..=60 {
                let total: usize = (0..qq.step()).map(|j| class_size(j, k, qq)).sum::<Result<usize>>()?;
                if total != (k - 1) as usize {
                    return Ok(Err(format!("q={q} k={k}: classes sum to {total}")));
                }
                let g = gamma0_classes(k, qq, None)?;
                if q % 2 == 1 && g.len() == 2 {
                    let (a, b) = (class_size(g[0], k, qq)?, class_size(g[1], k, qq)?);
                    if a.abs_diff(b) != 1 {
                        return Ok(Err(format!("q={q} k={k}: Γ₀ classes of sizes {a}, {b}")));
                    }
                }
            }
        }
        Ok(Ok(()))
    })();
    rep.record("dimensions", "class sizes for q<=9, k<=60", outcome);
}

/// Runs the whole suite.
pub fn run_verify() -> VerifyReport {
    let mut rep = VerifyReport::default();
    printed_matrices(&mut rep);
    q9_k40(&mut rep);
    m14_polys(&mut rep);
    families(&mut rep);
    symmetries(&mut rep);
    non_diagonalizable(&mut rep);
    slope_data(&mut rep);
    bookkeeping(&mut rep);
    rep
}
