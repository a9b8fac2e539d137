//! Exact-arithmetic engine for strong (total-complex) homology of finite
//! direct systems of cochain complexes with abelian coefficients.
//!
//! Everything here is computed over `BigInt` / `BigRational`: no floats, no
//! modular shortcuts, no randomized rank guesses. The layers build up as
//!
//! * [`fgab`] — finitely generated abelian groups presented by integer
//!   matrices (Smith/Hermite normal forms, kernels, Hom, Ext, exactness).
//! * [`divlin`] — divisible coefficient groups `Q^a ⊕ (Q/Z)^b`, linear maps
//!   between them, lattice subgroups and homology of complexes of such.
//! * [`resolution`] — two-step injective resolutions of f.g. groups and the
//!   horseshoe construction for short exact coefficient sequences.
//! * [`cone`] — the dualizing cone `Hom(C, I^0) ⊕ Hom(C[1], I^1)` of a
//!   cochain complex with coefficients in a resolution.
//! * [`prosys`] — finite posets, multi-indices, direct systems of cochain
//!   complexes, and a small simplicial-pair frontend.
//! * [`total`] — the (normalized and unnormalized) total complex of a direct
//!   system, truncation towers, and height-`r` homology.
//! * [`limits`] — nerve cohomology (`lim^i`), Mittag-Leffler analysis of
//!   endomorphism towers, and the Milnor sequence assembly.
//! * [`verify`] — mechanical checks of the structural statements the engine
//!   is built around, on concrete finite instances.
//! * [`cli`] — the `stronghom` command-line interface.

pub mod cli;
pub mod cone;
pub mod divlin;
pub mod error;
pub mod fgab;
pub mod limits;
pub mod prosys;
pub mod resolution;
pub mod total;
pub mod verify;
