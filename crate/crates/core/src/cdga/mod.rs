//! Finite commutative dg algebras, the tensor model `L ⊗ A`, and
//! Chevalley-Eilenberg cochains.

pub mod ce;
pub mod model;
pub mod tensor;

pub use ce::ce_cochains;
pub use model::{check_cdga, sphere_cohomology, CDGAModel};
pub use tensor::{connectivity_guard, tensor_model, tensor_model_equivariant, TensorModel};

#[cfg(test)]
mod tests;
