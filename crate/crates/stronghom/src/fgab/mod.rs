//! Finitely generated abelian groups in exact integer arithmetic:
//! presentations, Smith/Hermite normal forms, morphisms with kernels,
//! images and cokernels, Hom/Ext, and exactness checking of sequences.

pub mod exact;
pub mod group;
pub mod hnf;
pub mod matrix;
pub mod morphism;
pub mod snf;

pub use exact::{check_exactness, ExactnessReport, NodeStatus};
pub use group::{ext_group, hom_group, FgAbGroup};
pub use hnf::{column_hnf, hnf_coords, hnf_member, lattice_contains, lattice_eq};
pub use matrix::IntMatrix;
pub use morphism::{subquotient, FgMorphism, Subgroup};
pub use snf::{cokernel_invariants, integer_kernel, smith, Smith};
