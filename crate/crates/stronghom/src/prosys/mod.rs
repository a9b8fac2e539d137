//! Finite posets, multiindex chains, direct systems of cochain complexes
//! with strictly commuting bonding maps, their colimits and inverse cone
//! systems, and a simplicial-pair frontend for building concrete finite
//! instances.

mod multiindex;
mod poset;
mod simplicial;
mod system;

pub use multiindex::{chains, MultiIndex};
pub use poset::FinitePoset;
pub use simplicial::{induced_cochain_map, SimplicialComplex, SimplicialPair, VertexMap};
pub use system::{
    colimit_complex, inverse_cone_system, limit_cone_complex, validate_system, ConeSystem,
    DirectSystem, SystemReport,
};
