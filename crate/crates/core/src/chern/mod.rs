//! Characteristic classes: graded rings over the rationals, the Chern class
//! of a bundle twisted by a line, and the obstruction to extending the
//! pairing.

pub mod formula;
pub mod graded;
pub mod linalg;
pub mod obstruction;
pub mod symmetric;

pub use formula::{
    chern_tensor_formula, chern_tensor_oracle, hurewicz_pullback, pairing_pullback, pullback_matches_formula,
};
pub use graded::{rational, GradedClass, GradedRing, RingMap};
pub use obstruction::{obstruction_membership, obstruction_solve, Equation, Membership, Solution};
pub use symmetric::{expand_elementary, reduce_to_elementary};
