//! The Orlik-Solomon complex `(A_*, boundary)` of an affine arrangement.
//!
//! Elements are stored in the nbc basis relative to the arrangement's
//! hyperplane order. Monomials on dependent sets vanish: for a circuit `C`,
//! `e_C = e_{min C} ^ boundary(e_C)` up to terms with a repeated factor, so
//! every dependent monomial lies in the defining ideal.

pub(crate) mod complex;
mod element;

pub use complex::{
    boundary, complex_homology_dims, finite_distance_basis, nbc_basis, straighten, OsComplex,
};
pub use element::{format_terms, parse_terms, ElementParseError, Monomial, OSElement};

use crate::arrangement::ArrangementError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OsError {
    #[error("index {} repeated in monomial", .index + 1)]
    RepeatedIndex { index: usize },
    #[error("expected an element of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("the arrangement is not essential (no flat is a point); essentialize it first by quotienting out the common direction space")]
    ExpectedEssential,
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Parse(#[from] ElementParseError),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// Sorts `seq`, returning the sign of the sorting permutation, or `None` if
/// an entry repeats.
pub fn signed_sort(seq: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}
