//! Exact linear algebra: matrices, canonical row echelon forms, subspaces.

mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::Subspace;
