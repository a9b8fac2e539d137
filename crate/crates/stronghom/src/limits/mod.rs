//! Inverse limits and their derived functors for finite inverse systems of
//! finitely generated abelian groups.
//!
//! A [`GroupSystem`] assigns a group to every poset element and a morphism
//! G_μ → G_λ to every relation λ ≤ μ, functorially. The limit is computed
//! two independent ways: as the kernel of the difference map on the direct
//! sum ([`lim_direct`]) and as the degree-0 cohomology of the nerve complex
//! ([`nerve_complex`], [`lim_i`]); the nerve also yields every higher
//! derived limit. [`cohomology_with_coefficients`] evaluates ordinary
//! cochain cohomology with coefficients in a group, which on the order
//! complex of the poset is the classical comparison point for constant
//! systems.
//!
//! Towers (inverse sequences) get a Mittag-Leffler analysis ([`ml_analyze`])
//! with exact stabilization detection, and [`milnor_assemble`] reassembles
//! the homology of the full total complex from the finite tower, verifying
//! the short exact sequence 0 → lim¹ → H → lim → 0 on the nose.

mod milnor;
mod ml;
mod nerve;

pub use milnor::{mardesic_terms, milnor_assemble, MardesicReport, MilnorReport};
pub(crate) use milnor::dual_route_term;
pub use ml::{ml_analyze, Lim1Value, LimValue, MlReport, MlVerdict, PeriodicTower};
pub use nerve::{
    cohomology_with_coefficients, cone_homology_system, lim_direct, lim_i, nerve_complex,
    order_complex, GroupSystem, LimPresentation, NerveComplex,
};
