//! Exact matrix Lie algebra engine.

pub mod algebra;
pub mod linalg;
pub mod matrix;
pub mod rational;

pub use algebra::{build_so, LieAlgebraData, Terms};
pub use linalg::{congruence_signature, nullspace, rank, Inertia, RowReducer};
pub use matrix::{SquareMatrix, SymmetricForm};
pub use rational::Rational;
