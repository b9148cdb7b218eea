//! Shifted L∞ algebras and dg Lie algebras given by finite bracket tables.

pub mod algebra;
pub mod check;
pub mod equivariant;
pub mod filtration;
pub mod free_lie;
pub mod suspend;
pub mod tensor_alg;

pub use algebra::{Convention, SLInfinityAlgebra};
pub use check::{check_dglie_identities, check_filtration_law, check_jacobi, check_symmetry, default_jacobi_range, jacobiator};
pub use equivariant::{check_equivariance, fixed_subalgebra, fixed_subalgebra_with_span, invariant_basis, GSLInfinityAlgebra};
pub use filtration::{adapted_kernel, lcs_dim, lcs_filtration, nilpotent_quotient, positive_truncation, restrict_to_subspace};
pub use free_lie::{free_lie, split_terms, FreeLie};
pub use suspend::{as_shifted, desuspend, suspend};
pub use tensor_alg::{TensorElem, WordEchelon};

#[cfg(test)]
mod tests;
