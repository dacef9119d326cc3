//! The `U_t` operator on the cocycle basis `χ_0, ..., χ_{k-2}` of weight-`k`
//! cusp forms for `Γ₁(t)`, its classes modulo `q - 1`, and the block matrices
//! `M(j, n, q, t)`.
//!
//! All operators are normalized: entries never depend on the type `m`.

use crate::binomial::binom_in;
use crate::error::{Error, Result};
use crate::field::PrimePower;
use crate::matrix::TMatrix;
use crate::ratfunc::RatFunc;
use crate::ring::Ring;
use crate::tpoly::TPoly;

/// A weight `k`, an optional type `m`, and the field size `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightInstance {
    pub q: PrimePower,
    pub k: i64,
    pub m: Option<i64>,
}

impl WeightInstance {
    pub fn new(q: PrimePower, k: i64, m: Option<i64>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("weight k = {k} must be at least 2")));
        }
        Ok(Self { q, k, m })
    }

    pub fn p(&self) -> u32 {
        self.q.p()
    }

    /// `k - 1`, the number of basis cocycles.
    pub fn dim_single_cusp(&self) -> usize {
        (self.k - 1) as usize
    }

    /// `k - 3`, or 0 when `k = 2`.
    pub fn dim_double_cusp(&self) -> usize {
        (self.k - 3).max(0) as usize
    }

    pub fn require_m(&self) -> Result<i64> {
        self.m.ok_or_else(|| Error::InvalidParameter("the type m is required".into()))
    }
}

/// One class `C_j = {χ_j, χ_{j+(q-1)}, ...}` at a given weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub j: i64,
    pub size: usize,
    pub member_indices: Vec<i64>,
    pub is_gamma0: bool,
    /// Members lying in `[1, k-3]`.
    pub double_cusp_range: Vec<i64>,
}

impl BlockDescriptor {
    pub fn new(j: i64, k: i64, q: PrimePower) -> Result<Self> {
        let size = class_size(j, k, q)?;
        let member_indices: Vec<i64> = (0..size as i64).map(|h| j + h * q.step()).collect();
        let double_cusp_range = member_indices.iter().copied().filter(|&i| i >= 1 && i <= k - 3).collect();
        Ok(Self { j, size, member_indices, is_gamma0: (k - 2 * j - 2).rem_euclid(q.step()) == 0, double_cusp_range })
    }

    /// Position of basis index `i` within the class, if it is a member.
    pub fn position(&self, i: i64) -> Option<usize> {
        self.member_indices.iter().position(|&x| x == i)
    }
}

/// A vector in the span of `χ_0, ..., χ_{k-2}`, coordinates over `F_p(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleVector {
    instance: WeightInstance,
    coords: Vec<RatFunc>,
}

impl CocycleVector {
    pub fn new(instance: WeightInstance, coords: Vec<RatFunc>) -> Result<Self> {
        if coords.len() != instance.dim_single_cusp() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a space of dimension {}",
                coords.len(),
                instance.dim_single_cusp()
            )));
        }
        Ok(Self { instance, coords })
    }

    /// The basis cocycle `χ_i`.
    pub fn basis(instance: WeightInstance, i: i64) -> Result<Self> {
        let dim = instance.dim_single_cusp();
        if i < 0 || i as usize >= dim {
            return Err(Error::IndexOutOfRange(format!("χ_{i} with k = {}", instance.k)));
        }
        let p = instance.p();
        let coords = (0..dim).map(|x| if x == i as usize { RatFunc::one(p) } else { RatFunc::zero(p) }).collect();
        Ok(Self { instance, coords })
    }

    /// Builds `Σ c_i χ_i` from sparse `(index, coefficient)` pairs.
    pub fn from_terms(instance: WeightInstance, terms: &[(i64, RatFunc)]) -> Result<Self> {
        let mut v = Self::basis(instance, 0)?;
        v.coords[0] = RatFunc::zero(instance.p());
        for (i, c) in terms {
            if *i < 0 || *i as usize >= v.coords.len() {
                return Err(Error::IndexOutOfRange(format!("χ_{i} with k = {}", instance.k)));
            }
            v.coords[*i as usize] = v.coords[*i as usize].add(c);
        }
        Ok(v)
    }

    pub fn instance(&self) -> &WeightInstance {
        &self.instance
    }

    pub fn coords(&self) -> &[RatFunc] {
        &self.coords
    }

    /// Coordinates restricted to the members of a class, in member order.
    pub fn restrict(&self, desc: &BlockDescriptor) -> Vec<RatFunc> {
        desc.member_indices.iter().map(|&i| self.coords[i as usize].clone()).collect()
    }
}

/// `|C_j|`: the largest `n` with `j + (n-1)(q-1) <= k - 2`, or 0 if `j > k - 2`.
pub fn class_size(j: i64, k: i64, q: PrimePower) -> Result<usize> {
    if j < 0 || j > q.step() - 1 {
        return Err(Error::IndexOutOfRange(format!("class j = {j} outside [0, {}]", q.step() - 1)));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("weight k = {k} must be at least 2")));
    }
    if j > k - 2 {
        return Ok(0);
    }
    Ok(((k - 2 - j) / q.step() + 1) as usize)
}

/// Classes `j` in `[0, q-2]` with `k ≡ 2j + 2 (mod q-1)`. With a type `m`,
/// only the class `j ≡ m - 1`, and nothing unless `k ≡ 2m (mod q-1)`.
pub fn gamma0_classes(k: i64, q: PrimePower, m: Option<i64>) -> Result<Vec<i64>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("weight k = {k} must be at least 2")));
    }
    let s = q.step();
    let all: Vec<i64> = (0..s).filter(|&j| (k - 2 * j - 2).rem_euclid(s) == 0).collect();
    Ok(match m {
        None => all,
        Some(m) => {
            if (k - 2 * m).rem_euclid(s) != 0 {
                Vec::new()
            } else {
                all.into_iter().filter(|&j| (j - m + 1).rem_euclid(s) == 0).collect()
            }
        }
    })
}

/// Coefficient (in `F_p`, without its `t`-power) of `χ_i` in `U_t(χ_src)` at
/// weight `k`. The `t`-power is always `t^(src+1)`.
pub fn ut_coefficient(k: i64, q: PrimePower, i: i64, src: i64) -> u32 {
    let f = q.field();
    let s = q.step();
    if i < 0 || src < 0 || i > k - 2 || src > k - 2 || (i - src).rem_euclid(s) != 0 {
        return 0;
    }
    let top = k - 2 - i;
    if i == src {
        // -(-t)^(src+1) binom(k-2-src, src)
        return f.neg(f.mul(f.sign(src + 1), binom_in(f, top, src)));
    }
    let first = binom_in(f, top, src - i);
    let second = f.mul(f.sign(src + 1), binom_in(f, top, src));
    f.neg(f.add(first, second))
}

fn check_block_args(j: i64, n: usize, q: PrimePower) -> Result<()> {
    if j < 0 || j > q.step() - 1 {
        return Err(Error::IndexOutOfRange(format!("class j = {j} outside [0, {}]", q.step() - 1)));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("block size n must be at least 1".into()));
    }
    Ok(())
}

/// The weight at which `C_j` has exactly `n` members and is a `Γ₀` class.
pub fn block_weight(j: i64, n: usize, q: PrimePower) -> i64 {
    2 * j + 2 + (n as i64 - 1) * q.step()
}

/// Entry `m_{a,b}` (1-based) of `M(j, n, q)` at `k = 2j + 2 + (n-1)(q-1)`.
pub fn block_coeff(a: usize, b: usize, j: i64, n: usize, q: PrimePower) -> Result<u32> {
    check_block_args(j, n, q)?;
    if a == 0 || b == 0 || a > n || b > n {
        return Err(Error::IndexOutOfRange(format!("({a}, {b}) in a {n}x{n} block")));
    }
    let f = q.field();
    let s = q.step();
    let (a, b, n) = (a as i64, b as i64, n as i64);
    let top = j + (n - a) * s;
    if a == b {
        return Ok(f.mul(f.sign(j + 2), binom_in(f, top, j + (a - 1) * s)));
    }
    let first = binom_in(f, top, j + (n - b) * s);
    let second = f.mul(f.sign(j + 1), binom_in(f, top, j + (b - 1) * s));
    Ok(f.neg(f.add(first, second)))
}

/// `t`-exponent carried by column `b` (1-based) of `M(j, n, q, t)`.
pub fn column_exponent(j: i64, b: usize, q: PrimePower) -> usize {
    (j + 1 + (b as i64 - 1) * q.step()) as usize
}

/// `M(j, n, q)` over `F_p` (`with_t = false`) or `M(j, n, q, t)`.
pub fn block_matrix(j: i64, n: usize, q: PrimePower, with_t: bool) -> Result<TMatrix> {
    check_block_args(j, n, q)?;
    let p = q.p();
    let mut rows = Vec::with_capacity(n);
    for a in 1..=n {
        let mut row = Vec::with_capacity(n);
        for b in 1..=n {
            let c = block_coeff(a, b, j, n, q)?;
            let e = if with_t { column_exponent(j, b, q) } else { 0 };
            row.push(TPoly::monomial(p, c, e));
        }
        rows.push(row);
    }
    TMatrix::from_rows(rows, &TPoly::zero(p))
}

/// Matrix of `U_t` on the class `C_j` at an arbitrary weight.
pub fn class_matrix(inst: &WeightInstance, desc: &BlockDescriptor) -> TMatrix {
    let p = inst.p();
    let idx = &desc.member_indices;
    TMatrix::from_fn(idx.len(), idx.len(), &TPoly::zero(p), |a, b| {
        let c = ut_coefficient(inst.k, inst.q, idx[a], idx[b]);
        TPoly::monomial(p, c, (idx[b] + 1) as usize)
    })
}

/// Non-empty classes at this weight, ordered by `j`.
pub fn descriptors(inst: &WeightInstance) -> Vec<BlockDescriptor> {
    (0..inst.q.step()).filter_map(|j| BlockDescriptor::new(j, inst.k, inst.q).ok()).filter(|d| d.size > 0).collect()
}

/// The full `(k-1) x (k-1)` matrix of `U_t` in the basis reordered class by
/// class, block diagonal, with the descriptors of its blocks.
pub fn full_ut_matrix(inst: &WeightInstance) -> (TMatrix, Vec<BlockDescriptor>) {
    let descs = descriptors(inst);
    let blocks: Vec<TMatrix> = descs.iter().map(|d| class_matrix(inst, d)).collect();
    (TMatrix::block_diagonal(&blocks, &TPoly::zero(inst.p())), descs)
}

/// The matrix of `U_t` in the natural order `χ_0, ..., χ_{k-2}`, filled from
/// the action on each basis element over every target index.
pub fn natural_ut_matrix(inst: &WeightInstance) -> TMatrix {
    let p = inst.p();
    let dim = inst.dim_single_cusp();
    TMatrix::from_fn(dim, dim, &TPoly::zero(p), |i, src| {
        let c = ut_coefficient(inst.k, inst.q, i as i64, src as i64);
        TPoly::monomial(p, c, src + 1)
    })
}

/// The block restricted to members in `[1, k-3]` (double cusp forms).
pub fn double_cusp_restriction(desc: &BlockDescriptor, m: &TMatrix) -> Result<TMatrix> {
    if m.rows() != desc.size || m.cols() != desc.size {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for a class of size {}",
            m.rows(),
            m.cols(),
            desc.size
        )));
    }
    let keep: Vec<usize> = desc.double_cusp_range.iter().filter_map(|&i| desc.position(i)).collect();
    Ok(m.select(&keep, &keep))
}
