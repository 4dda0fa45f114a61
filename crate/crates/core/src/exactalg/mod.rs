//! Exact arithmetic: sparse polynomials in pair and triple variables,
//! determinants and Pfaffians over exact rings, truncated power series.

mod matrix;
mod poly;
mod series;
mod var;

pub use matrix::{ExactMatrix, Ring, COFACTOR_MAX_DIM};
pub use poly::{Coeff, Monomial, Poly, Polynomial, RationalPolynomial};
pub use series::{parse_z_poly, series_renormalize, two_sinh_half, PowerSeries};
pub use var::{sort_sign, y_canon, VarId};
