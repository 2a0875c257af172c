//! Exact linear algebra. Ranks and kernels use sparse row elimination;
//! definiteness tests and inverses split a matrix into the connected
//! components of its row/column graph and work on each one densely.

mod dense;
mod echelon;
mod sparse;
mod subspace;

pub use dense::{Ldlt, Matrix, PsdFailure};
pub use sparse::{Block, SparseLdlt, SparseMatrix, SparseVec};
pub use subspace::Subspace;
