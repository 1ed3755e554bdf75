//! Exact linear algebra over the rationals and truncated coalgebras inside
//! `kQ_{≤N}`.

mod sparse;
mod subspace;
mod truncated;

pub use sparse::{int, Scalar, SparseVec};
pub use subspace::{column_relations, kernel, rank, Subspace};
pub use truncated::{
    coassoc_check, is_cosemisimple, is_subcoalgebra, socle, truncate, truncate_in, PathBasis, StructureCoalgebra,
    Tensor, TruncatedCoalgebra,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("dimension mismatch: expected ambient {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a subcoalgebra: comultiplication of {0} leaves V⊗V")]
    NotSubcoalgebra(String),
    #[error("not contained in the ambient coalgebra: {0}")]
    NotContained(String),
    #[error("path {0} is not in the truncated basis")]
    OutsideBasis(String),
    #[error("subspaces live over different path bases")]
    BasisMismatch,
    #[error("truncation {have} too small, need at least {need}")]
    TruncationTooSmall { have: usize, need: usize },
}
