//! Mermin devices for GHZ and generalized Dicke states of three and four qubits.
//!
//! The crate is split along the lines of the analysis it reproduces:
//!
//! * [`pauli`]: exact algebra of Pauli tensor words and their linear combinations.
//! * [`state`]: GHZ, Dicke and exchange-symmetrized Dicke amplitude vectors.
//! * [`eigenops`]: commuting eigenoperator sets, the catalog of known rows and
//!   the polynomial identities between them.
//! * [`instructional`]: local instructional-set (hidden-variable) systems solved
//!   by exhaustive enumeration, with GF(2) parity certificates.
//! * [`bounds`]: Bell–Mermin operator expectations, their maximization over
//!   dichotomic measurement settings, and contour grids.

pub mod bounds;
pub mod eigenops;
mod error;
pub mod format;
pub mod instructional;
pub mod linalg;
pub mod optimize;
pub mod pauli;
pub mod state;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Tolerance for coefficient equality and zero-pruning in exact algebra.
pub const TOL_ALG: f64 = 1e-12;
