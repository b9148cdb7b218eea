//! Simplicial sets and modules: `EG`, the abelian Maurer-Cartan module, and
//! the homotopy fixed point retraction.

pub mod eg;
pub mod model;
pub mod retraction;
pub mod target;

pub use eg::{build_eg, EGComplex, Tuple, DEFAULT_MAX_CELLS};
pub use model::{abelian_mc_model, SimplicialQModule};
pub use retraction::{
    averaged_symmetrization, check_h, check_map, homotopy_h, homotopy_k, inclusion_i, monotone_maps, random_map,
    retraction_p, verify_retraction, Fault, GSimplicialMap, Homotopy, RetractionOptions, RetractionReport,
};
pub use target::{abelian_target, sign_character};

#[cfg(test)]
mod tests;
