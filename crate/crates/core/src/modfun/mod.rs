//! The modular function `j`, class polynomials and singular moduli.

pub mod algebraic;
pub mod hilbert;
pub mod jeval;
pub mod series;
pub mod singular;

pub use algebraic::{AlgebraicNumber, AlgebraicRecord, Source};
pub use hilbert::{class_poly, hilbert_class_poly, hilbert_class_poly_report, ClassPolyReport, PrecisionPolicy};
pub use jeval::{j_eval, j_eval_eisenstein, j_eval_with, j_of_form, mobius, reduce_to_fundamental_domain};
pub use singular::{
    rational_singular_moduli, recognize_singular_modulus, singular_moduli, RationalSingularModulus, SingularModulus,
};
