//! Exact polynomials and rational functions over the rationals.

mod det;
mod polynomial;
mod ratfunc;
mod unit_basis;

pub use det::{charpoly_integer, det_one_minus_u_m, det_one_minus_u_m_bareiss, poly_matrix_det};
pub use polynomial::Polynomial;
pub use ratfunc::{rf_normalize, RationalFunction};
pub use unit_basis::{cyclotomic, factor_unit_basis, mobius, totient, UnitFactoredForm};
