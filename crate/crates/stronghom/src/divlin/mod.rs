//! Exact linear algebra over divisible groups.
//!
//! The groups here are finite direct sums ℚᵃ ⊕ (ℚ/ℤ)ᵇ, modeled as ℚ^{a+b}/L
//! with L the standard lattice on the last b coordinates. Subgroups are
//! "subspace plus lattice" pairs in canonical form, maps are rational
//! matrices preserving the lattices, and kernels, images, cokernels and
//! homology all come out in closed form from row reduction, Hermite and
//! Smith normal forms — no approximation anywhere.

mod complex;
mod group;
mod homology;
mod lattice;
mod qmatrix;
mod solve;

pub use complex::{equal_div_chain_maps, DivChainMap, DivComplex};
pub use group::{div_cokernel, div_image, div_kernel, DivGroup, DivMorphism};
pub use homology::{
    homology_of_div_complex, induced_map_between, induced_map_on_homology, DivHomology,
};
pub use lattice::{quotient_invariants, LatticeSubgroup, MixedGroup};
pub use qmatrix::{column_echelon_basis, echelon_pivot_rows, is_zero_vec, qr, QMatrix};
pub use solve::{solve_mixed, MixedSolution};
