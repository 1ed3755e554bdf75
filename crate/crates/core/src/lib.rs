//! Computations with pointed coalgebras presented inside path coalgebras of
//! quivers.

mod error;
pub mod classify;
pub mod gabriel;
pub mod linear;
pub mod monomial;
pub mod quiver;
pub mod wedge;

pub use error::Error;
pub use linear::{Scalar, SparseVec, Subspace, TruncatedCoalgebra};
pub use monomial::{MonomialCoalgebra, PathAutomaton};
pub use quiver::{Arrow, Path, Quiver, QuiverError, Vertex};
