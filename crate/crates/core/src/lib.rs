//! Exact free covers, minimal free resolutions and Betti numbers for finitely
//! generated graded modules over `Q[z1, …, zd]`, computed two ways: on
//! degree-truncated symmetric and full Fock space realizations, and by a module
//! Gröbner basis syzygy engine.
//!
//! All arithmetic is exact. Core types are generic over a [`Field`]; the
//! aliases below fix the scalar to arbitrary-precision rationals.

/// `Debug` for structs generic over a [`Field`] whose members only print
/// when the scalar is a field.
macro_rules! field_debug {
    ($name:ident { $($field:ident),* $(,)? }) => {
        impl<F: $crate::scalar::Field> std::fmt::Debug for $name<F> {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.debug_struct(stringify!($name))$(.field(stringify!($field), &self.$field))*.finish()
            }
        }
    };
}

pub mod error;
pub mod graded;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod scalar;
pub mod syzygy;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rationals, the default scalar field.
pub type Rational = num_rational::BigRational;

pub type QPoly = poly::CommPoly<Rational>;
pub type QWordPoly = poly::WordPoly<Rational>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type QSparseMatrix = linalg::SparseMatrix<Rational>;
pub type QGradedMatrix = graded::GradedMatrix<Rational>;
pub type QPresentation = graded::GradedPresentation<Rational>;
pub type QResolution = syzygy::FreeResolution<Rational>;
pub type QHilbertModule = hilbert::TruncatedHilbertModule<Rational>;
