//! Sparse homogeneous polynomials over the `x`, `y` and `z` variable families.

mod monomial;
mod polynomial;
mod space;

pub use monomial::{lex_compare, Monomial};
pub(crate) use polynomial::TermAccumulator;
pub use polynomial::{Polynomial, DEFAULT_TERM_CAP};
pub use space::{Family, Var, VariableSpace};
