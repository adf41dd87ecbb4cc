//! Exact scalar arithmetic: Laurent polynomials in `q^{1/D}`, their
//! fraction field, and truncated bigraded series in `t`.

mod laurent;
mod ratfunc;
mod series;

pub use laurent::{quantum_binomial, quantum_factorial, quantum_integer, LaurentPoly};
pub use ratfunc::RatFunc;
pub use series::{series_from_rational, series_mul_tpoly, BiGradedSeries, TPoly};
