//! Finite fields, matrices over them, and their permutation actions.

pub mod field;
pub mod lemma4;
pub mod linear;
pub mod projective;

pub use field::FieldTable;
pub use linear::Matrix;
pub use projective::{pgl2, psl, psl2, sl, PointEnumeration, PointSet};
