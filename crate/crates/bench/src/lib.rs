//! Shared fixtures for the criterion benchmarks.

use monodromy_core::exact::RationalMatrix;
use monodromy_core::families::family_dataset;
use monodromy_core::quasiuni::{log_quasi, unipotency_profile};

/// The three log-monodromies of the first family, ready for closure
/// benchmarks.
pub fn family1_logs() -> (RationalMatrix, RationalMatrix, RationalMatrix) {
    let dataset = family_dataset(1).expect("family 1 exists");
    let identity = RationalMatrix::identity(7);
    let n_plus = &dataset.big_monodromies["M+"] - &identity;
    let n_minus = &dataset.big_monodromies["M-"] - &identity;
    let m_inf = &dataset.big_monodromies["Minf"];
    let profile = unipotency_profile(m_inf, 60).expect("quasi-unipotent");
    let n_inf = log_quasi(m_inf, &profile).expect("valid profile");
    (n_plus, n_minus, n_inf)
}
