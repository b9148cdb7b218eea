//! Exact graded linear algebra over ℚ: matrices, graded modules, chain
//! complexes and their homology, finite groups and their representations.

pub mod graded;
pub mod group;
pub mod homology;
pub mod matrix;
pub mod rep;
pub mod scalar;
pub mod sparse;
pub mod subspace;

pub use graded::{solve_kernel, GradedModule, LinearMap};
pub use group::FiniteGroup;
pub use homology::{homology, ChainComplex, Homology};
pub use matrix::{in_span, rank_of, same_span, Matrix, Rref};
pub use rep::{
    induced_on_homology, invariant_homology_check, invariant_subcomplex, GroupRepresentation,
    InvariantHomologyReport, InvariantHomologyRow,
};
pub use scalar::{factorial, format_scalar, one, parse_scalar, q, qr, sign, zero, Scalar};
pub use sparse::SparseVec;
pub use subspace::Subspace;
