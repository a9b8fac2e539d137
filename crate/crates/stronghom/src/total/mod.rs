//! Truncated and normalized total complexes of an inverse cone system.
//!
//! For a direct system 𝐂* of cochain complexes over a finite poset and a
//! coefficient resolution, the dualized element cones assemble into the
//! total complex
//!
//! ```text
//!   T⁽ʳ⁾ₙ = ⊕_{s ≤ r} ⊕_{𝝀 = (λ₀ ≤ … ≤ λ_s)} Cone(C_{λ₀})_{n+s},
//!   d = ∂ + (−1)ⁿ δ,
//! ```
//!
//! where ∂ acts blockwise through the cone boundaries and δ sends height
//! s−1 into height s by the alternating face sum: the d⁰ face travels along
//! the cone bonding p^{λ₀λ₁}, the remaining faces keep λ₀ and contribute
//! with sign (−1)ʲ. The normalized variant restricts to strictly increasing
//! chains, which caps the height at the poset height and makes the full
//! complex finite; homology of that full normalized complex is the strong
//! homology H̄∞ of the system.
//!
//! Besides assembly this module provides the truncation chain maps between
//! height bounds, the height-r homology groups H̄⁽ʳ⁾ (images down the
//! truncation tower) and the tower they form, the comparison maps out of
//! H̄∞, the height-zero inclusion h from the limit cone, and the maps
//! induced by morphisms of systems.

mod build;
mod induced;
mod tower;

pub use build::{
    build_total, h_chain_map, h_chain_map_into, normalized_inclusion, total_homology,
    truncation_map, Block, TruncatedTotal,
};
pub use induced::{
    induced_between_totals, induced_infinity_map, induced_total_map, InducedTotalMap,
    SystemMorphism,
};
pub use tower::{
    height_homology, height_tower, infinity_homology, infinity_total, pi_infinity,
    projection_to_lim, HeightHomology, HeightTower, ProjectionToLim,
};
