//! Heights, root-of-unity tests and multiplicative relations.

pub mod bounds;
pub mod certificate;
pub mod factored;
pub mod find;
pub mod height;
pub mod lattice;

pub use bounds::{bound_lehmer, exponent_search_radius, liouville_separation_log2};
pub use certificate::{product_ball, verify_relation, Mode, MAX_VERIFY_BITS, RelationCertificate, Verification};
pub use factored::FactoredRational;
pub use find::{find_relation, find_relation_exact, is_minimal_dependent, is_minimal_dependent_exact};
pub use height::{is_root_of_unity, weil_height, weil_height_ball, HeightValue};
