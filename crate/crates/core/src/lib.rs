//! Exact computation of Reshetikhin-Turaev quantum invariants of framed
//! oriented tangles, for arbitrary irreducible representations of the
//! finite-type simple Lie algebras, together with the graded homological
//! machinery needed for bigraded unknot Poincare series.
//!
//! Everything is computed over `Z[q^{1/D}, q^{-1/D}]` (exact integer
//! arithmetic; no floating point anywhere). The main layers:
//!
//! * [`exactalg`] - Laurent polynomials in `q^{1/D}`, their fraction field,
//!   and truncated bigraded series in `t`.
//! * [`cartan`] - Cartan matrices, weights, the symmetrized pairing, Weyl
//!   group combinatorics for the series A-G.
//! * [`repn`] - irreducible modules `V_lambda` as explicit sparse matrices,
//!   built from the contravariant form on divided-power monomials.
//! * [`braiding`] - the quasi-R-matrix on a tensor product and the braiding.
//! * [`rigidity`] - coevaluation, evaluation, quantum (co)trace, and the
//!   ribbon scalars for both ribbon elements.
//! * [`tangle`] - a slice-based tangle model with parser and validator.
//! * [`evaluator`] - composes slice operators into the invariant.
//! * [`homtor`] - minimal resolutions and bigraded Tor over finite graded
//!   local algebras; assembles the colored unknot series.

pub mod cartan;
pub mod braiding;
pub mod error;
pub mod evaluator;
pub mod exactalg;
pub mod homtor;
pub mod linalg;
pub mod repn;
pub mod rigidity;
pub mod tangle;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
