//! Exact-arithmetic engine for equivariant rational homotopy invariants of
//! Maurer-Cartan spaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`qlinalg`]: graded linear algebra over ℚ, finite groups and their
//!   representations, homology, invariants and coinvariants.
//! - [`liealg`]: shifted L∞ algebras (and dg Lie algebras) given by bracket
//!   tables, free graded Lie algebras, filtrations, group actions and
//!   fixed-point subalgebras.
//! - [`cdga`]: finite commutative dg algebras, the tensor model `L ⊗ A` and
//!   Chevalley-Eilenberg cochains.
//! - [`mc`]: Maurer-Cartan elements, twisting, homotopy groups of MC spaces
//!   and of their homotopy fixed points, Baker-Campbell-Hausdorff products.
//! - [`simpl`]: the bar model of `EG`, cellular abelian MC simplicial modules
//!   and exhaustive verification of the fixed-point retraction.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod cdga;
pub mod error;
pub mod examples;
pub mod liealg;
pub mod mc;
pub mod qlinalg;
pub mod report;
pub mod simpl;

pub use error::{Error, Result};
pub use qlinalg::{Scalar, SparseVec};
