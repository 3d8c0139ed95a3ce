//! Exact symbolic engine for the tensor pairing of codimension-1 cycles.
//!
//! * [`poly`]: sparse homogeneous polynomials with big-integer coefficients.
//! * [`psi`]: the multilinear grid pairing and the divisor tensor product.
//! * [`cycles`]: integer combinations of polynomials, the biadditive and
//!   reduced pairings.
//! * [`chern`]: graded rational rings, the Chern class of `E (x) L`, and the
//!   degree-4 obstruction computation.
//! * [`fuzz`]: seeded random inputs and the property suites behind `verify`.

pub mod chern;
pub mod cycles;
pub mod error;
pub mod fuzz;
pub mod json;
pub mod parse;
pub mod poly;
pub mod psi;

pub use error::{Error, ParseError, Result};
