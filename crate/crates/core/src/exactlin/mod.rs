//! Exact scalars, matrices and polynomials.
//!
//! The containers are generic over any exact field implementing [`Scalar`];
//! the rest of the crate instantiates them at [`Rational`].

pub mod matrix;
pub mod poly;
pub mod rational;

use std::fmt::Debug;

use num_traits::{Num, Signed};

pub use matrix::{rank_of, solve_affine, AffineSolution, Matrix, Rref};
pub use poly::{MultiPoly, UniPoly};
pub use rational::{
    format_point, format_rational, parse_rational, rational_from_i64, sign_of, ParseRationalError,
    Rational, RationalDisplay,
};

/// An exact ordered field element.
///
/// Nothing here is tolerance based: zero tests and equality must be exact,
/// which rules out floating point.
pub trait Scalar: Clone + PartialEq + Debug + Num + Signed {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Signed {}

/// Dot product of two equal-length slices.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
