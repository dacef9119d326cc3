//! Structural checks on the coefficient matrices `M(j, n, q)`: the
//! row/column symmetries every block satisfies, and the closed shapes of the
//! antidiagonal, `j = 0` and `n = j + 2` families.

use std::fmt;

use crate::binomial::binom_in;
use crate::error::Result;
use crate::field::{PrimeField, PrimePower};
use crate::hecke::block_coeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryId {
    Cols,
    DiagAntidiag,
    CentralCol,
    AntidiagLower,
    BelowAntidiag,
}

impl SymmetryId {
    pub const ALL: [SymmetryId; 5] = [
        SymmetryId::Cols,
        SymmetryId::DiagAntidiag,
        SymmetryId::CentralCol,
        SymmetryId::AntidiagLower,
        SymmetryId::BelowAntidiag,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SymmetryId::Cols => "cols",
            SymmetryId::DiagAntidiag => "diag-antidiag",
            SymmetryId::CentralCol => "central-col",
            SymmetryId::AntidiagLower => "antidiag-lower",
            SymmetryId::BelowAntidiag => "below-antidiag",
        }
    }
}

impl fmt::Display for SymmetryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one symmetry; `counterexample` is the first failing cell
/// (1-based row, column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryCheck {
    pub id: SymmetryId,
    pub passed: bool,
    pub counterexample: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub j: i64,
    pub n: usize,
    pub q: u64,
    pub checks: Vec<SymmetryCheck>,
}

impl SymmetryReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: SymmetryId) -> Option<&SymmetryCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Coefficient grid of `M(j, n, q)`, 1-based access.
struct Grid {
    n: usize,
    cells: Vec<u32>,
}

impl Grid {
    fn new(j: i64, n: usize, q: PrimePower) -> Result<Self> {
        let mut cells = Vec::with_capacity(n * n);
        for a in 1..=n {
            for b in 1..=n {
                cells.push(block_coeff(a, b, j, n, q)?);
            }
        }
        Ok(Self { n, cells })
    }

    fn at(&self, a: usize, b: usize) -> u32 {
        self.cells[(a - 1) * self.n + (b - 1)]
    }
}

fn first_failure(cells: impl IntoIterator<Item = (usize, usize, bool)>) -> SymmetryCheck {
    let bad = cells.into_iter().find(|&(_, _, ok)| !ok).map(|(a, b, _)| (a, b));
    SymmetryCheck { id: SymmetryId::Cols, passed: bad.is_none(), counterexample: bad }
}

/// First row index of the lower half: `n/2 + 1` for even `n`, `(n+3)/2` for odd.
fn lower_start(n: usize) -> usize {
    if n % 2 == 0 {
        n / 2 + 1
    } else {
        (n + 3) / 2
    }
}

pub fn verify_symmetries(j: i64, n: usize, q: PrimePower) -> Result<SymmetryReport> {
    let g = Grid::new(j, n, q)?;
    let f: PrimeField = q.field();
    let sigma = f.sign(j + 1);
    let unit = f.sign(j + 2);
    let s = q.step();
    let mut checks = Vec::new();

    let mut c = first_failure((1..=n).flat_map(|a| {
        let g = &g;
        (1..=n)
            .filter(move |&b| a != b && a != n + 1 - b)
            .map(move |b| (a, b, g.at(a, n + 1 - b) == f.mul(sigma, g.at(a, b))))
    }));
    c.id = SymmetryId::Cols;
    checks.push(c);

    let mut c = first_failure(
        (1..=n)
            .filter(|&a| a != n + 1 - a)
            .map(|a| (a, n + 1 - a, g.at(a, n + 1 - a) == f.mul(sigma, f.sub(g.at(a, a), 1 % f.p())))),
    );
    c.id = SymmetryId::DiagAntidiag;
    checks.push(c);

    let mut c = if n % 2 == 1 {
        let mid = (n + 1) / 2;
        let mut cells = vec![(mid, mid, g.at(mid, mid) == unit)];
        for a in (1..=n).filter(|&a| a != mid) {
            let top = j + (n - a) as i64 * s;
            let predicted = f.neg(f.mul(binom_in(f, top, j + (mid as i64 - 1) * s), f.add(1 % f.p(), sigma)));
            let ok = g.at(a, mid) == predicted && (a < (n + 3) / 2 || predicted == 0);
            cells.push((a, mid, ok));
        }
        first_failure(cells)
    } else {
        first_failure(std::iter::empty())
    };
    c.id = SymmetryId::CentralCol;
    checks.push(c);

    let mut c = first_failure((lower_start(n)..=n).map(|a| (a, n + 1 - a, g.at(a, n + 1 - a) == unit)));
    c.id = SymmetryId::AntidiagLower;
    checks.push(c);

    let half = n / 2;
    let mut c = first_failure((lower_start(n)..n).flat_map(|a| {
        let g = &g;
        (n + 2 - a..=half).map(move |b| (a, b, g.at(a, b) == 0))
    }));
    c.id = SymmetryId::BelowAntidiag;
    checks.push(c);

    Ok(SymmetryReport { j, n, q: q.q(), checks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    /// `n <= j + 1`.
    Antidiagonal,
    /// `j = 0`, `2 <= n <= q + 2`.
    J0,
    /// Even `j >= 2`, `n = j + 2`.
    JPlus2,
    Unclassified,
}

impl ShapeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShapeClass::Antidiagonal => "antidiagonal",
            ShapeClass::J0 => "j0-shape",
            ShapeClass::JPlus2 => "j+2-shape",
            ShapeClass::Unclassified => "unclassified",
        }
    }
}

/// Classification of a block together with the cells (1-based) where it
/// departs from the template of its class. Unclassified blocks are compared
/// against the nearest template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub j: i64,
    pub n: usize,
    pub q: u64,
    pub class: ShapeClass,
    pub deviations: Vec<(usize, usize)>,
}

impl ShapeReport {
    pub fn matches(&self) -> bool {
        self.class != ShapeClass::Unclassified && self.deviations.is_empty()
    }
}

pub fn classify_shape(j: i64, n: usize, q: PrimePower) -> ShapeClass {
    if n as i64 <= j + 1 {
        ShapeClass::Antidiagonal
    } else if j == 0 && n >= 2 && n as u64 <= q.q() + 2 {
        ShapeClass::J0
    } else if j >= 2 && j % 2 == 0 && n as i64 == j + 2 {
        ShapeClass::JPlus2
    } else {
        ShapeClass::Unclassified
    }
}

/// Predicted entry, or `None` where the template leaves the cell free.
fn template(class: ShapeClass, j: i64, n: usize, f: PrimeField, a: usize, b: usize) -> Option<u32> {
    let unit = f.sign(j + 2);
    let anti = b == n + 1 - a;
    match class {
        ShapeClass::Antidiagonal => Some(if anti { unit } else { 0 }),
        ShapeClass::J0 => Some(if b == 1 {
            1
        } else if a == 1 || a == n {
            0
        } else if b == n {
            f.neg(1)
        } else if anti {
            1
        } else {
            0
        }),
        ShapeClass::JPlus2 => {
            if a == 1 {
                match b {
                    1 => Some(1),
                    _ if b == n => Some(0),
                    _ => None,
                }
            } else {
                Some(if anti { unit } else { 0 })
            }
        }
        ShapeClass::Unclassified => None,
    }
}

pub fn check_theorem_shape(j: i64, n: usize, q: PrimePower) -> Result<ShapeReport> {
    let g = Grid::new(j, n, q)?;
    let f = q.field();
    let class = classify_shape(j, n, q);
    let reference = match class {
        ShapeClass::Unclassified if j == 0 => ShapeClass::J0,
        ShapeClass::Unclassified if n as i64 == j + 2 => ShapeClass::JPlus2,
        ShapeClass::Unclassified => ShapeClass::Antidiagonal,
        c => c,
    };
    let mut deviations = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if let Some(want) = template(reference, j, n, f, a, b) {
                if g.at(a, b) != want {
                    deviations.push((a, b));
                }
            }
        }
    }
    Ok(ShapeReport { j, n, q: q.q(), class, deviations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: u64) -> PrimePower {
        PrimePower::from_q(v).unwrap()
    }

    #[test]
    fn printed_blocks_are_symmetric() {
        for (j, n, qq) in [(3, 5, 8), (0, 6, 4), (6, 8, 8), (3, 5, 9), (0, 12, 9), (2, 1, 5)] {
            let r = verify_symmetries(j, n, q(qq)).unwrap();
            assert!(r.all_pass(), "{r:?}");
        }
    }

    #[test]
    fn shapes() {
        let r = check_theorem_shape(2, 3, q(4)).unwrap();
        assert_eq!(r.class, ShapeClass::Antidiagonal);
        assert!(r.matches());
        let r = check_theorem_shape(0, 7, q(4)).unwrap();
        assert_eq!(r.class, ShapeClass::Unclassified);
        assert!(r.deviations.contains(&(2, 2)));
        let r = check_theorem_shape(2, 4, q(5)).unwrap();
        assert_eq!(r.class, ShapeClass::JPlus2);
        assert!(r.matches(), "{r:?}");
        let r = check_theorem_shape(0, 6, q(4)).unwrap();
        assert_eq!(r.class, ShapeClass::J0);
        assert!(r.matches());
    }
}
