//! Singular moduli, multiplicative relations among them, modular polynomials
//! and the local-tree separation algorithm.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod modfun;
pub mod modpoly;
pub mod nt;
pub mod poly;
pub mod qforms;
pub mod relations;
pub mod roots;
pub mod search;
pub mod trees;
pub(crate) mod serde_bigint;

pub use error::{Error, Result};
