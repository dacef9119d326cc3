//! Exact computation of the Atkin `U_t` operator on Drinfeld cusp forms of
//! level `Γ₁(t)`: block matrices over `F_p[t]`, characteristic and minimal
//! polynomials, `t`-adic slopes, diagonalizability and the new/old split.

pub mod binomial;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod field;
pub mod gfext;
pub mod hecke;
pub mod matrix;
pub mod newold;
pub mod newton;
pub mod ratfunc;
pub mod ring;
pub mod scan;
pub mod spectral;
pub mod symmetry;
pub mod tpoly;
pub mod verify;
pub mod xpoly;

pub use error::{Error, Result};
pub use field::{PrimeField, PrimePower};
pub use matrix::{Matrix, RMatrix, TMatrix};
pub use newton::{newton_slopes, NewtonSlope, Rational, SlopeValue};
pub use ratfunc::RatFunc;
pub use ring::{Field, Ring};
pub use tpoly::TPoly;
pub use xpoly::{Poly, RatXPoly, XPoly};
