use thiserror::Error;

/// Crate-wide error type. Variants for user-input validation carry enough
/// context to name the offending object (matrix, degree, relator, triple).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: String,
        got: String,
    },

    #[error("morphism is not well defined: relator {relator} of the source is not mapped into the target relation span")]
    IllDefinedMorphism { relator: usize },

    #[error("maps are not composable at position {position}: target of one is not the source of the next")]
    NotComposable { position: usize },

    #[error("rational matrix is not lattice-compatible: column {col} (a Q/Z-coordinate of the source) has {problem} in row {row}")]
    LatticeIncompatible {
        col: usize,
        row: usize,
        problem: String,
    },

    #[error("not a chain map: fails to commute with the boundary at degree {degree}")]
    NotChainMap { degree: i64 },

    #[error("boundary does not square to zero at degree {degree}")]
    BoundarySquare { degree: i64 },

    #[error("non-finitely-generated homology at degree {degree}: kernel subspace strictly contains image subspace (dimension {z_dim} vs {b_dim}); invalid input complex or engine bug")]
    NonFgHomology {
        degree: i64,
        z_dim: usize,
        b_dim: usize,
    },

    #[error("invalid poset: {reason}")]
    InvalidPoset { reason: String },

    #[error("invalid direct system: {reason}")]
    InvalidSystem { reason: String },

    #[error("poset is not directed: {context} is undefined in scope")]
    NotDirected { context: String },

    #[error("sequence is not exact: {reason}")]
    InexactInput { reason: String },

    #[error("resolution requires coefficient group in canonical form (free generators first, then one generator per invariant factor)")]
    NotCanonicalForm,

    #[error("invalid simplicial input: {reason}")]
    InvalidSimplicial { reason: String },

    #[error("invalid instance: {reason}")]
    InvalidInstance { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
