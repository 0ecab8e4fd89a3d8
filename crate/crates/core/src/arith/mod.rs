//! Rigorous multiprecision arithmetic: magnitudes, real and complex balls,
//! and the elementary functions needed by the rest of the crate.

mod ball;
mod complex;
pub mod elementary;
mod mag;

pub use ball::{ldexp, mag_sqrt, RealBall};
pub use complex::BigComplex;
pub use mag::Mag;
