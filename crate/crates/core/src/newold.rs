//! The Fricke involution, the two trace maps to level one, and the split of a
//! `Γ₀` class into its new part `Ker Tr ∩ Ker Tr'` and the quotient by it.

use crate::charpoly::{char_poly_auto, char_poly_rat};
use crate::error::{Error, Result};
use crate::hecke::{class_matrix, gamma0_classes, natural_ut_matrix, BlockDescriptor, CocycleVector, WeightInstance};
use crate::matrix::{RMatrix, TMatrix};
use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::tpoly::TPoly;
use crate::xpoly::XPoly;

fn sign_m(p: u32, m: i64) -> u32 {
    crate::field::PrimeField::new(p).map(|f| f.sign(m)).unwrap_or(1)
}

/// Fricke matrix on `χ_0, ..., χ_{k-2}`: `χ_i ↦ (-1)^m t^(i+1+m-k) χ_{k-2-i}`.
pub fn fricke_matrix(inst: &WeightInstance) -> Result<RMatrix> {
    let m = inst.require_m()?;
    let p = inst.p();
    let dim = inst.dim_single_cusp();
    let s = sign_m(p, m);
    let k = inst.k;
    Ok(RMatrix::from_fn(dim, dim, &RatFunc::zero(p), |r, c| {
        if r + c == dim - 1 {
            RatFunc::monomial(p, s, c as i64 + 1 + m - k)
        } else {
            RatFunc::zero(p)
        }
    }))
}

/// Integral form of the Fricke matrix: `(F_int, e)` with `F = t^(-e) F_int`,
/// `e = k - m - 1`.
pub fn fricke_integral(inst: &WeightInstance) -> Result<(TMatrix, i64)> {
    let m = inst.require_m()?;
    let p = inst.p();
    let dim = inst.dim_single_cusp();
    let s = sign_m(p, m);
    let f = TMatrix::from_fn(dim, dim, &TPoly::zero(p), |r, c| {
        if r + c == dim - 1 {
            TPoly::monomial(p, s, c)
        } else {
            TPoly::zero(p)
        }
    });
    Ok((f, inst.k - m - 1))
}

/// `(Tr, Tr')` on `χ_0, ..., χ_{k-2}`, with `Tr = Id + t^(-m) U F` and
/// `Tr' = F + t^(m-k) U` for the normalized `U`.
pub fn trace_matrices(inst: &WeightInstance) -> Result<(RMatrix, RMatrix)> {
    let m = inst.require_m()?;
    let p = inst.p();
    let u = natural_ut_matrix(inst).to_rat();
    let f = fricke_matrix(inst)?;
    let dim = inst.dim_single_cusp();
    // F has one entry per column, so U F is a scaled column permutation.
    let uf = RMatrix::from_fn(dim, dim, &RatFunc::zero(p), |r, c| u.get(r, dim - 1 - c).mul(f.get(dim - 1 - c, c)));
    let tr = RMatrix::identity(dim, &RatFunc::zero(p)).add(&uf.scale(&RatFunc::monomial(p, 1, -m)))?;
    let trp = f.add(&u.scale(&RatFunc::monomial(p, 1, m - inst.k)))?;
    Ok((tr, trp))
}

/// The new/old decomposition of the `Γ₀` class of type `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewOldSplit {
    pub instance: WeightInstance,
    pub descriptor: BlockDescriptor,
    /// Normalized `U_t` on the class.
    pub ut: TMatrix,
    pub fricke: RMatrix,
    pub trace: RMatrix,
    pub twisted_trace: RMatrix,
    pub ker_trace_dim: usize,
    pub ker_twisted_trace_dim: usize,
    pub new_space: Vec<CocycleVector>,
    /// `U_t` on `new_space`, in that basis.
    pub new_restriction: RMatrix,
    /// `det(U - X Id)` induced on the class modulo `new_space`.
    pub old_quotient_char_poly: XPoly,
}

impl NewOldSplit {
    pub fn new_dim(&self) -> usize {
        self.new_space.len()
    }

    pub fn old_dim(&self) -> usize {
        self.descriptor.size - self.new_dim()
    }

    /// Whether `v` lies in the new space.
    pub fn contains(&self, v: &CocycleVector) -> Result<bool> {
        let coords = v.restrict(&self.descriptor);
        let outside =
            v.coords().iter().enumerate().any(|(i, c)| !c.is_zero() && self.descriptor.position(i as i64).is_none());
        if outside {
            return Ok(false);
        }
        Ok(self.basis_matrix().solve(&coords)?.is_some())
    }

    /// `U_t² = t^k` on the new space.
    pub fn new_square_is_t_k(&self) -> bool {
        let p = self.instance.p();
        let d = self.new_dim();
        let sq = self.new_restriction.mul(&self.new_restriction).expect("square");
        sq == RMatrix::identity(d, &RatFunc::zero(p)).scale(&RatFunc::monomial(p, 1, self.instance.k))
    }

    fn basis_matrix(&self) -> RMatrix {
        let p = self.instance.p();
        let cols: Vec<Vec<RatFunc>> = self.new_space.iter().map(|v| v.restrict(&self.descriptor)).collect();
        RMatrix::from_fn(self.descriptor.size, cols.len(), &RatFunc::zero(p), |r, c| cols[c][r].clone())
    }
}

/// Scales a nonzero vector over `F_p(t)` to a primitive polynomial vector
/// whose last nonzero coordinate has a monic leading coefficient.
fn primitive_vector(v: &[RatFunc]) -> Vec<RatFunc> {
    let p = v[0].p();
    let mut den = TPoly::one(p);
    for c in v {
        let d = c.denominator();
        let g = den.gcd(d).expect("same characteristic");
        den = den.mul(&d.exact_div(&g).expect("same characteristic").expect("divides"));
    }
    let polys: Vec<TPoly> =
        v.iter().map(|c| c.mul(&RatFunc::from_poly(den.clone())).to_poly().expect("cleared")).collect();
    let mut content = TPoly::zero(p);
    for c in &polys {
        content = content.gcd(c).expect("same characteristic");
    }
    let lead = polys.iter().rev().find(|c| !c.is_zero()).map(|c| c.leading()).unwrap_or(1);
    let scale = RatFunc::new(TPoly::one(p), content.scale(lead)).expect("nonzero content");
    polys.into_iter().map(|c| RatFunc::from_poly(c).mul(&scale)).collect()
}

pub fn new_old_split(inst: &WeightInstance) -> Result<NewOldSplit> {
    let m = inst.require_m()?;
    let j = *gamma0_classes(inst.k, inst.q, Some(m))?
        .first()
        .ok_or_else(|| Error::InvalidParameter(format!("no Γ₀ class of type m = {m} at weight k = {}", inst.k)))?;
    let desc = BlockDescriptor::new(j, inst.k, inst.q)?;
    let p = inst.p();
    let idx: Vec<usize> = desc.member_indices.iter().map(|&i| i as usize).collect();
    let n = idx.len();

    let ut = class_matrix(inst, &desc);
    let fricke = fricke_matrix(inst)?.select(&idx, &idx);
    let (tr_full, trp_full) = trace_matrices(inst)?;
    let trace = tr_full.select(&idx, &idx);
    let twisted_trace = trp_full.select(&idx, &idx);

    let stacked = RMatrix::from_fn(2 * n, n, &RatFunc::zero(p), |r, c| {
        if r < n {
            trace.get(r, c).clone()
        } else {
            twisted_trace.get(r - n, c).clone()
        }
    });
    let kernel: Vec<Vec<RatFunc>> = stacked.kernel().iter().map(|v| primitive_vector(v)).collect();
    let d = kernel.len();
    let ker_trace_dim = n - trace.rank();
    let ker_twisted_trace_dim = n - twisted_trace.rank();

    let basis = RMatrix::from_fn(n, d, &RatFunc::zero(p), |r, c| kernel[c][r].clone());
    let u = ut.to_rat();
    let mut restriction = RMatrix::zeros(d, d, &RatFunc::zero(p));
    for (c, v) in kernel.iter().enumerate() {
        let image = u.mul_vec(v)?;
        let coords = basis.solve(&image)?.ok_or(Error::UnstableNewSpace)?;
        for (r, x) in coords.into_iter().enumerate() {
            restriction.set(r, c, x);
        }
    }

    let full = char_poly_auto(&ut)?.to_rat();
    let new_part = char_poly_rat(&restriction)?;
    let (quot, rem) = full.div_rem(&new_part)?;
    if !rem.is_zero() {
        return Err(Error::UnstableNewSpace);
    }
    let old_quotient_char_poly =
        quot.to_integral().ok_or_else(|| Error::InvalidParameter("old quotient polynomial is not integral".into()))?;

    let new_space = kernel
        .iter()
        .map(|v| {
            let terms: Vec<(i64, RatFunc)> =
                desc.member_indices.iter().zip(v.iter()).map(|(&i, c)| (i, c.clone())).collect();
            CocycleVector::from_terms(*inst, &terms)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(NewOldSplit {
        instance: *inst,
        descriptor: desc,
        ut,
        fricke,
        trace,
        twisted_trace,
        ker_trace_dim,
        ker_twisted_trace_dim,
        new_space,
        new_restriction: restriction,
        old_quotient_char_poly,
    })
}

/// An eigenvalue factor of the old quotient with its multiplicity; the
/// eigenvalue itself is given when the factor is linear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OldEigen {
    pub factor: XPoly,
    pub multiplicity: usize,
    pub eigenvalue: Option<TPoly>,
}

/// Splits the old quotient polynomial into `X^s` and the remaining factor.
pub fn old_eigen_from_split(split: &NewOldSplit) -> Vec<OldEigen> {
    let f = &split.old_quotient_char_poly;
    let p = split.instance.p();
    let zero = TPoly::zero(p);
    let mut out = Vec::new();
    let Some((s, rest)) = f.split_x_power() else { return out };
    if s > 0 {
        out.push(OldEigen { factor: XPoly::x(&zero), multiplicity: s, eigenvalue: Some(zero.clone()) });
    }
    if rest.degree().unwrap_or(0) > 0 {
        // det(Q - X) has leading coefficient ±1; make the factor monic.
        let rest = if rest.leading() == TPoly::one(p) { rest } else { rest.neg() };
        let eigenvalue = crate::spectral::linear_root(&rest);
        out.push(OldEigen { factor: rest, multiplicity: 1, eigenvalue });
    }
    out
}

pub fn old_eigen_extract(inst: &WeightInstance) -> Result<Vec<OldEigen>> {
    Ok(old_eigen_from_split(&new_old_split(inst)?))
}
