//! Exact computations on affine hyperplane arrangements over the rationals.
//!
//! The crate covers the intersection poset and characteristic polynomial, the
//! Orlik-Solomon complex with its boundary map, residues at infinity grouped
//! by direction, real regions via exact linear programming, and canonical
//! forms of bounded regions.

pub mod arrangement;
pub mod canonical;
pub mod exactlin;
pub mod infinity;
pub mod oscomplex;
pub mod regions;
pub mod verify;

pub use exactlin::{Matrix, MultiPoly, Rational, Scalar, UniPoly};

/// Dense matrix over the rationals.
pub type QMatrix = Matrix<Rational>;
/// Univariate polynomial over the rationals.
pub type QPoly = UniPoly<Rational>;
/// Multivariate polynomial over the rationals.
pub type QMultiPoly = MultiPoly<Rational>;
