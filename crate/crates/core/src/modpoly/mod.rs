//! Modular polynomials, isogeny predicates and the modular-pair search.

pub mod bounds;
pub mod construct;
pub mod isogeny;
pub mod pairs;

pub use bounds::{
    faltings_window, isogeny_height_drift, modular_pair_level_bound, pellarin_degree_bound, practical_degree_bound,
    FaltingsWindow,
};
pub use construct::{
    modular_polynomial, modular_polynomial_bounded, modular_polynomial_by_interpolation,
    modular_polynomial_by_q_expansion, sublattice_reps, ModularPolynomial, DEFAULT_N_MAX,
};
pub use isogeny::{is_isogenous, is_isogenous_int, phi_zero_test, ZeroTest};
pub use pairs::{modular_pair_search, modular_pair_search_with, ModularPairCertificate, ModularPairSearch};
