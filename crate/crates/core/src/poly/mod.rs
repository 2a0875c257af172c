//! Exact commutative and noncommutative polynomials.

pub mod h2;
pub mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;

pub use h2::{fock_inner, h2_inner, h2_inner_poly, h2_norm_sq, symmetrize};
pub use monomial::{grevlex, monomials_of_degree, words_of_length, Monomial, MonomialKind, Word};
pub use poly::{CommPoly, Poly, WordPoly};
