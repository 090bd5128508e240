//! Affine hyperplane arrangements over the rationals.

mod io;
mod poset;
mod restrict;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use crate::exactlin::{dot, Rational};

pub use io::{parse_arrangement, to_json_string};
pub use poset::{Flat, IntersectionPoset};
pub use restrict::{deletion_restriction, restrict_to_flat, Restriction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("hyperplane {} ({second_label}) duplicates hyperplane {} ({first_label}) up to scaling", .second + 1, .first + 1)]
    DuplicateHyperplane {
        first: usize,
        second: usize,
        first_label: String,
        second_label: String,
    },
    #[error("hyperplane {} has a zero normal", .index + 1)]
    ZeroNormal { index: usize },
    #[error("hyperplane {}: normal has {found} entries, expected {expected}", .index + 1)]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed rational at {location}: {message}")]
    MalformedRational { location: String, message: String },
    #[error("invalid arrangement file at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("hyperplane {} out of range for {len} hyperplanes", .index + 1)]
    IndexOutOfRange { index: usize, len: usize },
    #[error("flat with support {:?} is not a flat of this arrangement", .support.iter().map(|i| i + 1).collect::<Vec<_>>())]
    FlatNotInPoset { support: Vec<usize> },
}

/// The zero set of `normal . x + offset`.
///
/// Construction rescales so the first nonzero normal entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    normal: Vec<Rational>,
    offset: Rational,
    label: String,
}

impl Hyperplane {
    /// Returns `None` for a zero normal.
    pub fn new(normal: Vec<Rational>, offset: Rational, label: impl Into<String>) -> Option<Self> {
        let lead = normal.iter().find(|a| !a.is_zero())?.clone();
        let normal = normal.into_iter().map(|a| a / &lead).collect();
        Some(Hyperplane {
            normal,
            offset: offset / lead,
            label: label.into(),
        })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Value of the defining functional at `x`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) + &self.offset
    }
}

/// An ordered list of distinct hyperplanes in affine `dim`-space.
///
/// The list order is the reference order for broken circuits and every
/// normal form in the crate.
#[derive(Debug, Clone)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    poset: OnceLock<Arc<IntersectionPoset>>,
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.hyperplanes == other.hyperplanes
    }
}

impl Eq for Arrangement {}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, ArrangementError> {
        let mut seen: HashMap<(&[Rational], &Rational), usize> = HashMap::new();
        for (index, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(ArrangementError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: h.dim(),
                });
            }
            if let Some(&first) = seen.get(&(h.normal(), h.offset())) {
                return Err(ArrangementError::DuplicateHyperplane {
                    first,
                    second: index,
                    first_label: hyperplanes[first].label.clone(),
                    second_label: h.label.clone(),
                });
            }
            seen.insert((h.normal(), h.offset()), index);
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            poset: OnceLock::new(),
        })
    }

    /// Builds an arrangement from integer data `(normal, offset)`, labelled `H1, H2, ...`.
    pub fn from_integers(dim: usize, data: &[(Vec<i64>, i64)]) -> Result<Self, ArrangementError> {
        let hyperplanes = data
            .iter()
            .enumerate()
            .map(|(i, (a, c))| {
                let normal = a.iter().map(|&v| Rational::from_integer(v.into())).collect();
                Hyperplane::new(normal, Rational::from_integer((*c).into()), format!("H{}", i + 1))
                    .ok_or(ArrangementError::ZeroNormal { index: i })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dim, hyperplanes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn labels(&self) -> Vec<&str> {
        self.hyperplanes.iter().map(|h| h.label()).collect()
    }

    pub fn check_index(&self, index: usize) -> Result<(), ArrangementError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(ArrangementError::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }

    /// The intersection poset, built on first use.
    pub fn poset(&self) -> &IntersectionPoset {
        self.poset
            .get_or_init(|| Arc::new(IntersectionPoset::build(self)))
    }

    /// Signs of all defining functionals at `x`.
    pub fn signs_at(&self, x: &[Rational]) -> Vec<i8> {
        self.hyperplanes
            .iter()
            .map(|h| crate::exactlin::sign_of(&h.eval(x)))
            .collect()
    }

    /// The subarrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Self {
        Arrangement {
            dim: self.dim,
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            poset: OnceLock::new(),
        }
    }

    /// The arrangement with hyperplane `perm[k]` moved to position `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.len(), "permutation has wrong length");
        self.subarrangement(perm)
    }

    /// Every hyperplane shifted by `x -> x + shift`.
    pub fn translated(&self, shift: &[Rational]) -> Self {
        let hyperplanes = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane {
                offset: h.offset() - dot(h.normal(), shift),
                ..h.clone()
            })
            .collect();
        Arrangement {
            dim: self.dim,
            hyperplanes,
            poset: OnceLock::new(),
        }
    }

    /// Whether some flat is a point. The empty arrangement in dimension 0 counts.
    pub fn is_essential(&self) -> bool {
        self.poset().flats().iter().any(|f| f.codim() == self.dim)
    }

    /// Whether all hyperplanes share a common point.
    pub fn is_central(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.flat_through(&all).is_some()
    }

    /// The hyperplanes containing `flat`, in reference order.
    pub fn localization(&self, flat: &Flat) -> Result<Arrangement, ArrangementError> {
        let poset = self.poset();
        match poset.find(flat.support()) {
            Some(found) if found == flat => Ok(self.subarrangement(flat.support())),
            _ => Err(ArrangementError::FlatNotInPoset {
                support: flat.support().to_vec(),
            }),
        }
    }

    /// Characteristic polynomial, read off the cached poset.
    pub fn charpoly(&self) -> crate::QPoly {
        self.poset().charpoly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scaling() {
        let q = |v: i64| Rational::from_integer(v.into());
        let h = Hyperplane::new(vec![q(0), q(-2), q(4)], q(6), "L").unwrap();
        assert_eq!(h.normal(), &[q(0), q(1), q(-2)]);
        assert_eq!(h.offset(), &q(-3));
        assert!(Hyperplane::new(vec![q(0), q(0)], q(1), "Z").is_none());
    }

    #[test]
    fn duplicates_rejected_after_scaling() {
        let err = Arrangement::from_integers(2, &[(vec![2, 0], 0), (vec![1, 0], 0)]).unwrap_err();
        assert!(matches!(
            err,
            ArrangementError::DuplicateHyperplane { first: 0, second: 1, .. }
        ));
    }

    #[test]
    fn essential_conventions() {
        assert!(Arrangement::from_integers(0, &[]).unwrap().is_essential());
        assert!(!Arrangement::from_integers(2, &[(vec![1, 1], 0)]).unwrap().is_essential());
        assert!(!Arrangement::from_integers(1, &[]).unwrap().is_essential());
    }
}
