//! Graded free modules, homogeneous matrices between them, and modules
//! given by generators and relations.

mod free;
mod matrix;
mod presentation;

pub use free::{BasisElement, BasisIndex, GradedFree};
pub use matrix::{
    coords_of_vector, vector_degree, vector_from_coords, FreeVec, GradedMatrix, Violation, ViolationKind,
};
pub use presentation::{zero_vector, GradedPresentation};
