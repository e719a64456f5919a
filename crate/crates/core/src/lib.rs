//! Exact-arithmetic reconstruction and certification of the monodromy of
//! four families of elliptic surfaces over an elliptic base curve.
//!
//! The crate rebuilds the local monodromies of each family from their
//! vanishing-cycle data via Picard-Lefschetz transvections, checks the
//! embedded 7x7 monodromy matrices against the intersection form they must
//! preserve, takes exact logarithms through the Jordan-Chevalley
//! decomposition, closes the log-monodromies under the commutator bracket,
//! and identifies the resulting 14-dimensional Lie algebra as g2 through its
//! root system. Every step is exact rational arithmetic; the outcome is a
//! machine-readable certificate listing each verified identity.
//!
//! Modules:
//! - [`exact`]: rationals, dense matrices, polynomials, and the exact
//!   decision procedures (determinant, rank, solve, char/min polynomial).
//! - [`plmono`]: paired lattices, Picard-Lefschetz transvections, loop words.
//! - [`quasiuni`]: quasi-unipotent profiles, nilpotent log/exp,
//!   Jordan-Chevalley splitting, intersection-form preservation.
//! - [`liecore`]: bracket closure, adjoint actions, root decomposition,
//!   Killing form, rank-2 type identification.
//! - [`families`]: the embedded per-family constants plus Hodge bookkeeping
//!   and the transcendental-correction solver.
//! - [`certify`]: the end-to-end pipeline and report rendering.

pub mod certify;
pub mod error;
pub mod exact;
pub mod families;
pub mod liecore;
pub mod plmono;
pub mod quasiuni;

pub use error::{Error, Result};
pub use exact::{Rational, RationalMatrix, RationalPolynomial};

/// Crate version, embedded in every certificate.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
