//! Maurer-Cartan elements, twisting, and rational homotopy groups of MC
//! spaces, their homotopy fixed points and equivariant mapping spaces.

pub mod bch;
pub mod element;
pub mod pi;

pub use bch::{bch, bch_with};
pub use element::{curvature, twist, MCElement};
pub use pi::{homotopy_fixed_pi, homotopy_groups, homotopy_groups_at, mapping_space_pi, Pi1, PiGroup, PiReport};
