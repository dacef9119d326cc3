//! Characteristic polynomials over `F_p[t]` by evaluation at points of a
//! finite extension `GF(p^d)` and interpolation.
//!
//! Every coefficient of the characteristic polynomial has `F_p`
//! coefficients, so its value at `θ^p` is the `p`-th power of its value at
//! `θ`: one Hessenberg reduction per Frobenius orbit suffices.

use crate::error::{Error, Result};
use crate::matrix::TMatrix;
use crate::tpoly::TPoly;
use crate::xpoly::XPoly;

const ZERO: u32 = u32::MAX;
const MAX_FIELD: u64 = 1 << 20;

/// `GF(p^d)` in logarithmic representation: an element is `log_g(a)` for a
/// fixed primitive `g`, or [`ZERO`]. Addition goes through Zech logarithms.
pub(crate) struct Gf {
    p: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    minus_one: u32,
}

impl Gf {
    /// Smallest field `GF(p^d)` with at least `points` nonzero elements.
    pub(crate) fn with_points(p: u32, points: usize) -> Result<Self> {
        let mut d = 1u32;
        let mut size = p as u64;
        while size - 1 < points as u64 {
            d += 1;
            size *= p as u64;
            if size > MAX_FIELD {
                return Err(Error::InvalidParameter(format!(
                    "{points} evaluation points exceed the extension-field cap"
                )));
            }
        }
        Ok(Self::new(p, d))
    }

    fn new(p: u32, d: u32) -> Self {
        let size = (p as u64).pow(d) as usize;
        let order = (size - 1) as u32;
        // Encodings are base-p integers, digit i = coefficient of x^i.
        let step = |enc: usize, low: &[u32]| -> usize {
            let mut digits: Vec<u32> = (0..d).map(|i| ((enc / (p as usize).pow(i)) % p as usize) as u32).collect();
            let top = digits[d as usize - 1];
            for i in (1..d as usize).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for i in 0..d as usize {
                digits[i] = (digits[i] + (p - low[i]) * top) % p;
            }
            digits.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
        };
        let mut exp = vec![0u32; order as usize];
        // Search for a primitive polynomial x^d + Σ low_i x^i.
        'search: for cand in 1..size {
            let low: Vec<u32> = (0..d).map(|i| ((cand / (p as usize).pow(i)) % p as usize) as u32).collect();
            if low[0] == 0 {
                continue;
            }
            let mut enc = 1usize;
            for (i, slot) in exp.iter_mut().enumerate() {
                if i > 0 && enc == 1 {
                    continue 'search;
                }
                *slot = enc as u32;
                enc = step(enc, &low);
            }
            if enc == 1 {
                break;
            }
        }
        let mut log = vec![ZERO; size];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        // zech[n] = log(1 + g^n)
        let zech = exp
            .iter()
            .map(|&e| {
                let e = e as usize;
                let c0 = (e % p as usize + 1) % p as usize;
                log[e - e % p as usize + c0]
            })
            .collect();
        let minus_one = if p == 2 { 0 } else { order / 2 };
        Self { p, order, exp, log, zech, minus_one }
    }

    pub(crate) fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let s = a as u64 + b as u64;
        (s % self.order as u64) as u32
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        let diff = if b >= a { b - a } else { b + self.order - a };
        let z = self.zech[diff as usize];
        if z == ZERO {
            ZERO
        } else {
            self.mul(a, z)
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        match a {
            ZERO => None,
            0 => Some(0),
            _ => Some(self.order - a),
        }
    }

    /// `a^e` for `e` of either sign.
    pub(crate) fn pow(&self, a: u32, e: i64) -> u32 {
        if a == ZERO {
            return if e == 0 { 0 } else { ZERO };
        }
        ((a as i64 * e).rem_euclid(self.order as i64)) as u32
    }

    pub(crate) fn from_fp(&self, c: u32) -> u32 {
        self.log[(c % self.p) as usize]
    }

    /// The residue in `F_p`, if `a` lies in the prime field.
    pub(crate) fn to_fp(&self, a: u32) -> Option<u32> {
        if a == ZERO {
            return Some(0);
        }
        let e = self.exp[a as usize];
        (e < self.p).then_some(e)
    }

    pub(crate) fn eval(&self, f: &TPoly, theta: u32) -> u32 {
        f.coeffs().iter().rev().fold(ZERO, |acc, &c| self.add(self.mul(acc, theta), self.from_fp(c)))
    }
}

/// Monic `det(x I - A)` over the field, ascending, via Hessenberg form.
pub(crate) fn hessenberg_char_poly(gf: &Gf, mut h: Vec<Vec<u32>>) -> Vec<u32> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&r| h[r][c] != ZERO) else { continue };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let pivot_inv = gf.inv(h[c + 1][c]).expect("nonzero pivot");
        for i in c + 2..n {
            if h[i][c] == ZERO {
                continue;
            }
            let u = gf.mul(h[i][c], pivot_inv);
            let nu = gf.neg(u);
            let (top, rest) = h.split_at_mut(i);
            let src = &top[c + 1];
            for (x, &y) in rest[0].iter_mut().zip(src.iter()).skip(c) {
                if y != ZERO {
                    *x = gf.add(*x, gf.mul(nu, y));
                }
            }
            for row in h.iter_mut() {
                let y = row[i];
                if y != ZERO {
                    row[c + 1] = gf.add(row[c + 1], gf.mul(u, y));
                }
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_i (Π sub-diagonal) h_{m-i,m} p_{m-i-1}
    let mut polys: Vec<Vec<u32>> = vec![vec![0]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![ZERO; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = gf.add(next[i + 1], c);
            next[i] = gf.sub(next[i], gf.mul(h[m][m], c));
        }
        let mut t = 0u32;
        for i in 1..=m {
            t = gf.mul(t, h[m - i + 1][m - i]);
            if t == ZERO {
                break;
            }
            let f = gf.mul(t, h[m - i][m]);
            if f == ZERO {
                continue;
            }
            for (k, &c) in polys[m - i].iter().enumerate() {
                next[k] = gf.sub(next[k], gf.mul(f, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Bounds `(low, high)` on the `t`-degrees of the sum of principal `s`-minors
/// for `s = 0..=n`; `None` when that sum is provably zero.
pub(crate) fn minor_degree_bounds(m: &TMatrix) -> Vec<Option<(usize, usize)>> {
    let n = m.rows();
    let collect = |by_col: bool| -> (Vec<usize>, Vec<usize>) {
        let mut hi = Vec::new();
        let mut lo = Vec::new();
        for x in 0..n {
            let line: Vec<&TPoly> = (0..n).map(|y| if by_col { m.get(y, x) } else { m.get(x, y) }).collect();
            let degs: Vec<usize> = line.iter().filter_map(|e| e.degree()).collect();
            let vals: Vec<usize> = line.iter().filter_map(|e| e.valuation()).collect();
            if let (Some(&h), Some(&l)) = (degs.iter().max(), vals.iter().min()) {
                hi.push(h);
                lo.push(l);
            }
        }
        hi.sort_unstable_by(|a, b| b.cmp(a));
        lo.sort_unstable();
        (hi, lo)
    };
    let (col_hi, col_lo) = collect(true);
    let (row_hi, row_lo) = collect(false);
    let usable = col_hi.len().min(row_hi.len());
    (0..=n)
        .map(|s| {
            if s > usable {
                return None;
            }
            let hi = col_hi[..s].iter().sum::<usize>().min(row_hi[..s].iter().sum());
            let lo = col_lo[..s].iter().sum::<usize>().max(row_lo[..s].iter().sum());
            (lo <= hi).then_some((lo, hi))
        })
        .collect()
}

/// Newton interpolation: coefficients (in `GF`) of the polynomial of degree
/// `< xs.len()` through the given points.
fn interpolate(gf: &Gf, xs: &[u32], ys: &[u32]) -> Vec<u32> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = gf.sub(dd[i], dd[i - 1]);
            let den = gf.sub(xs[i], xs[i - level]);
            dd[i] = gf.mul(num, gf.inv(den).expect("distinct points"));
        }
    }
    let mut out = vec![ZERO; n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + dd[i]
        let shift = gf.neg(xs[i]);
        let mut next = vec![ZERO; n];
        for k in 0..n {
            if out[k] == ZERO {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = gf.add(next[k + 1], out[k]);
            }
            next[k] = gf.add(next[k], gf.mul(out[k], shift));
        }
        next[0] = gf.add(next[0], dd[i]);
        out = next;
    }
    out
}

/// `det(M - X I)` by evaluation at Frobenius-orbit representatives in an
/// extension field and per-coefficient interpolation.
pub fn char_poly_modular(m: &TMatrix) -> Result<XPoly> {
    let n = m.require_square()?;
    let p = m.p();
    let zero = TPoly::zero(p);
    if n == 0 {
        return Ok(XPoly::one(&zero));
    }
    let bounds = minor_degree_bounds(m);
    let needed = bounds.iter().flatten().map(|(lo, hi)| hi - lo + 1).max().unwrap_or(1);
    let gf = Gf::with_points(p, needed)?;

    // Points and, per point, the monic char poly values.
    let mut xs: Vec<u32> = Vec::with_capacity(needed);
    let mut vals: Vec<Vec<u32>> = Vec::with_capacity(needed);
    let mut seen = vec![false; gf.order() as usize];
    let mut rep = 0u32;
    while xs.len() < needed {
        while seen[rep as usize] {
            rep += 1;
        }
        let h: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| gf.eval(m.get(i, j), rep)).collect()).collect();
        let cp = hessenberg_char_poly(&gf, h);
        let mut x = rep;
        let mut frob = 1i64;
        while !seen[x as usize] && xs.len() < needed {
            seen[x as usize] = true;
            xs.push(x);
            vals.push(cp.iter().map(|&c| gf.pow(c, frob)).collect());
            x = gf.pow(x, p as i64);
            frob *= p as i64;
            frob %= gf.order() as i64;
        }
    }

    // Coefficient of X^(n-s) in the monic polynomial is (-1)^s E_s.
    let sign_n = if n % 2 == 0 { 1 } else { p - 1 };
    let mut coeffs = vec![zero.clone(); n + 1];
    for (s, b) in bounds.iter().enumerate() {
        let Some((lo, hi)) = *b else { continue };
        let count = hi - lo + 1;
        let ys: Vec<u32> = (0..count).map(|i| gf.mul(vals[i][n - s], gf.pow(xs[i], -(lo as i64)))).collect();
        let g = interpolate(&gf, &xs[..count], &ys);
        let mut res = vec![0u32; hi + 1];
        for (i, &c) in g.iter().enumerate() {
            res[lo + i] = gf
                .to_fp(c)
                .ok_or_else(|| Error::InvalidParameter("interpolated coefficient left the prime field".into()))?;
        }
        coeffs[n - s] = TPoly::from_residues(p, res).scale(sign_n);
    }
    Ok(XPoly::new(coeffs, &zero))
}
