//! Characteristic and minimal polynomials.
//!
//! The characteristic polynomial is computed with Berkowitz's division-free
//! algorithm, so over `F_p[t]` every intermediate value stays a polynomial.
//! The minimal polynomial is the lcm of the Krylov minimal polynomials of the
//! standard basis vectors, computed over `F_p(t)`.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, TMatrix};
use crate::ratfunc::RatFunc;
use crate::ring::{Field, Ring};
use crate::tpoly::TPoly;
use crate::xpoly::{Poly, RatXPoly, XPoly};

/// `det(X·Id - A)` over any commutative ring, returned in ascending powers of
/// `X` (monic).
pub fn berkowitz<R: Ring>(a: &Matrix<R>) -> Result<Poly<R>> {
    let n = a.require_square()?;
    let proto = a.proto().clone();
    let one = proto.one_like();
    // Coefficients of the current characteristic polynomial, highest power first.
    let mut chi: Vec<R> = vec![one.clone()];
    for r in 0..n {
        // Leading principal r x r block A_r, column R = A[0..r][r],
        // row C = A[r][0..r], corner a = A[r][r].
        let corner = a.get(r, r).clone();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(one.clone());
        toeplitz.push(corner.neg());
        let mut v: Vec<R> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for step in 0..r {
            // C · A_r^step · R
            let dot = (0..r).fold(proto.zero_like(), |acc, i| {
                let c = a.get(r, i);
                if c.is_zero() || v[i].is_zero() {
                    acc
                } else {
                    acc.add(&c.mul(&v[i]))
                }
            });
            toeplitz.push(dot.neg());
            if step + 1 < r {
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(proto.zero_like(), |acc, k| {
                            let e = a.get(i, k);
                            if e.is_zero() || v[k].is_zero() {
                                acc
                            } else {
                                acc.add(&e.mul(&v[k]))
                            }
                        })
                    })
                    .collect();
            }
        }
        // New coefficients = lower-triangular Toeplitz (r+2 x r+1) times chi.
        let next: Vec<R> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(proto.zero_like(), |acc, j| {
                    let (tc, c) = (&toeplitz[i - j], &chi[j]);
                    if tc.is_zero() || c.is_zero() {
                        acc
                    } else {
                        acc.add(&tc.mul(c))
                    }
                })
            })
            .collect();
        chi = next;
    }
    chi.reverse();
    Ok(Poly::new(chi, &proto))
}

/// `det(M - X·Id)`, degree `n` with leading coefficient `(-1)^n`.
pub fn char_poly(m: &TMatrix) -> Result<XPoly> {
    let n = m.require_square()?;
    let monic = berkowitz(m)?;
    Ok(if n % 2 == 1 { monic.neg() } else { monic })
}

/// `det(M - X·Id)` over `F_p(t)`.
pub fn char_poly_rat(m: &Matrix<RatFunc>) -> Result<RatXPoly> {
    let n = m.require_square()?;
    let monic = berkowitz(m)?;
    Ok(if n % 2 == 1 { monic.neg() } else { monic })
}

/// Evaluates a polynomial at a square matrix (Horner).
pub fn eval_at_matrix<R: Ring>(f: &Poly<R>, m: &Matrix<R>) -> Result<Matrix<R>> {
    let n = m.require_square()?;
    let proto = m.proto().clone();
    let mut acc = Matrix::zeros(n, n, &proto);
    let id = Matrix::identity(n, &proto);
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(m)?.add(&id.scale(c))?;
    }
    Ok(acc)
}

/// Minimal polynomial of `v` under `m`, monic over `F_p(t)`.
fn krylov_min_poly(m: &Matrix<RatFunc>, v: Vec<RatFunc>) -> RatXPoly {
    let n = m.rows();
    let p = m.proto().p();
    let zero = RatFunc::zero(p);
    // Echelon rows: (vector with pivot normalized to 1, pivot index,
    // combination of Krylov powers producing that vector).
    let mut basis: Vec<(Vec<RatFunc>, usize, Vec<RatFunc>)> = Vec::new();
    let mut w = v;
    for d in 0..=n {
        let mut comb = vec![zero.clone(); n + 1];
        comb[d] = RatFunc::one(p);
        let mut reduced = w.clone();
        for (row, piv, rc) in &basis {
            let f = reduced[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in reduced.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        match reduced.iter().position(|e| !e.is_zero()) {
            None => {
                comb.truncate(d + 1);
                return RatXPoly::new(comb, &zero);
            }
            Some(piv) => {
                let inv = reduced[piv].inv().unwrap();
                let row: Vec<RatFunc> = reduced.iter().map(|e| e.mul(&inv)).collect();
                let rc: Vec<RatFunc> = comb.iter().map(|e| e.mul(&inv)).collect();
                basis.push((row, piv, rc));
            }
        }
        w = m.mul_vec(&w).expect("square matrix");
    }
    unreachable!("Krylov sequence of length n+1 is always dependent")
}

/// Minimal polynomial over `F_p(t)`, monic in `X`.
///
/// The matrix is integral over `F_p[t]`, so the minimal polynomial has
/// polynomial coefficients and is returned as an [`XPoly`].
pub fn min_poly(m: &TMatrix) -> Result<XPoly> {
    let n = m.require_square()?;
    let p = m.p();
    let mr = m.to_rat();
    let mut acc = RatXPoly::one(&RatFunc::zero(p));
    for i in 0..n {
        let mut e = vec![RatFunc::zero(p); n];
        e[i] = RatFunc::one(p);
        let f = krylov_min_poly(&mr, e);
        acc = acc.lcm(&f);
    }
    acc.to_integral().ok_or_else(|| Error::InvalidParameter("minimal polynomial is not integral".into()))
}

/// Minimal polynomial of a matrix over `F_p(t)`, monic.
pub fn min_poly_rat(m: &Matrix<RatFunc>) -> Result<RatXPoly> {
    let n = m.require_square()?;
    let p = m.proto().p();
    let mut acc = RatXPoly::one(&RatFunc::zero(p));
    for i in 0..n {
        let mut e = vec![RatFunc::zero(p); n];
        e[i] = RatFunc::one(p);
        acc = acc.lcm(&krylov_min_poly(m, e));
    }
    Ok(acc)
}

/// Size above which [`char_poly_auto`] switches to evaluation/interpolation.
pub const MODULAR_THRESHOLD: usize = 12;

/// `det(M - X·Id)`, by Berkowitz for small matrices and by
/// [`crate::gfext::char_poly_modular`] otherwise.
pub fn char_poly_auto(m: &TMatrix) -> Result<XPoly> {
    if m.require_square()? <= MODULAR_THRESHOLD {
        char_poly(m)
    } else {
        crate::gfext::char_poly_modular(m)
    }
}

/// Divides `f` by `X - root` repeatedly; returns the multiplicity.
pub fn root_multiplicity(f: &XPoly, root: &TPoly) -> usize {
    let lin = XPoly::new(vec![root.neg(), root.one_like()], root);
    let mut g = f.clone();
    let mut k = 0;
    while !g.is_zero() {
        match g.exact_div(&lin) {
            Ok(Some(q)) => {
                g = q;
                k += 1;
            }
            _ => break,
        }
    }
    k
}
