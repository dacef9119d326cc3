//! Dense matrices over the crate's rings, and exact linear algebra over
//! `F_p(t)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ring::{Field, Ring};
use crate::tpoly::TPoly;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R: Ring> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
    zero: R,
}

pub type TMatrix = Matrix<TPoly>;
pub type RMatrix = Matrix<RatFunc>;

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, proto: &R) -> Self {
        Self { rows, cols, entries: vec![proto.zero_like(); rows * cols], zero: proto.zero_like() }
    }

    pub fn identity(n: usize, proto: &R) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>, proto: &R) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect(), zero: proto.zero_like() })
    }

    pub fn from_fn(rows: usize, cols: usize, proto: &R, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries, zero: proto.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn proto(&self) -> &R {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn map<S: Ring>(&self, proto: &S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            zero: proto.zero_like(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).add(other.get(i, j))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).sub(other.get(i, j))))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(&self.zero, |e| e.mul(c))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.zero.clone(), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect())
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diagonal(blocks: &[Self], proto: &R) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(n, n, proto);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form; returns the matrix and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = f.mul(m.get(r, j));
                    if !sub.is_zero() {
                        let v = m.get(i, j).sub(&sub);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = self.zero.one_like();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Solves `M x = b` for one solution, `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, &self.zero, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        let n = self.require_square()?;
        let aug = Self::from_fn(n, 2 * n, &self.zero, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.zero.one_like()
            } else {
                self.zero.clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(n, n, &self.zero, |i, j| r.get(i, n + j).clone())))
    }
}

impl TMatrix {
    pub fn to_rat(&self) -> RMatrix {
        self.map(&RatFunc::zero(self.zero.p()), |e| RatFunc::from_poly(e.clone()))
    }

    pub fn p(&self) -> u32 {
        self.zero.p()
    }

    /// Coefficient matrix of a matrix whose column `b` is a scalar multiple of
    /// `t^{exps[b]}`; `None` if some entry is not of that form.
    pub fn strip_column_powers(&self, exps: &[usize]) -> Option<TMatrix> {
        let p = self.p();
        let mut out = TMatrix::zeros(self.rows, self.cols, &TPoly::zero(p));
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let (deg, c) = e.single_term()?;
                if deg != exps[j] {
                    return None;
                }
                out.set(i, j, TPoly::constant(p, c));
            }
        }
        Some(out)
    }

    /// Entries as signed constants; `None` if some entry is non-constant.
    pub fn constant_entries(&self) -> Option<Vec<Vec<i64>>> {
        let f = crate::field::PrimeField::new(self.p()).unwrap();
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().map(|e| if e.is_constant() { Some(f.signed(e.coeff(0))) } else { None }).collect()
            })
            .collect()
    }
}

impl RMatrix {
    /// Converts back when every entry is a polynomial.
    pub fn to_poly(&self) -> Option<TMatrix> {
        let proto = TPoly::zero(self.zero.p());
        let entries: Option<Vec<TPoly>> = self.entries.iter().map(|e| e.to_poly()).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, entries: entries?, zero: proto })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j], width = width)).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(p: u32, c: &[i64]) -> RatFunc {
        RatFunc::from_poly(TPoly::from_ints(p, c))
    }

    #[test]
    fn kernel_and_solve() {
        let p = 5;
        let z = RatFunc::zero(p);
        // rows (1, t, t^2), (t, t^2, t^3): rank 1
        let m = RMatrix::from_rows(
            vec![
                vec![rf(p, &[1]), rf(p, &[0, 1]), rf(p, &[0, 0, 1])],
                vec![rf(p, &[0, 1]), rf(p, &[0, 0, 1]), rf(p, &[0, 0, 0, 1])],
            ],
            &z,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(|e| e.is_zero()));
        }
        let b = vec![rf(p, &[1]), rf(p, &[0, 1])];
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
        assert!(m.solve(&[rf(p, &[1]), rf(p, &[1])]).unwrap().is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let p = 3;
        let z = RatFunc::zero(p);
        let m =
            RMatrix::from_rows(vec![vec![rf(p, &[0, 1]), rf(p, &[1])], vec![rf(p, &[1]), rf(p, &[0])]], &z).unwrap();
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RMatrix::identity(2, &z));
    }
}
