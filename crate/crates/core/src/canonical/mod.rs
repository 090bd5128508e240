//! Canonical forms of bounded regions.
//!
//! Orientation convention: the ambient space carries the standard
//! orientation, every flat the orientation of its stored direction basis,
//! and a facet contributes the sign of (facet basis, inward direction) in
//! the enclosing flat. With it the simplex `x_i > 0, sum x_i < 1` gets the
//! positive form `dx / (x_1 ... x_n (1 - sum x_i))`.

mod rational_form;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exactlin::{format_rational, solve_affine, Matrix, Rational};
use crate::oscomplex::{OSElement, OsComplex, OsError};
use crate::regions::{facets_in, FaceCell, Region, RegionComplex, RegionError};

pub use rational_form::{to_rational_form, RationalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("the arrangement is not essential (no flat is a point); canonical forms need an essential arrangement")]
    ExpectedEssential,
    #[error("region {signs} is unbounded")]
    UnboundedRegion { signs: String },
    #[error("hyperplanes {:?} do not meet in a single point", .indices.iter().map(|i| i + 1).collect::<Vec<_>>())]
    DependentTuple { indices: Vec<usize> },
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Os(#[from] OsError),
}

fn require_bounded(rc: &RegionComplex, region: &Region) -> Result<(), CanonicalError> {
    let arrangement = rc.arrangement();
    if !arrangement.is_essential() {
        return Err(CanonicalError::ExpectedEssential);
    }
    if !region.bounded(arrangement)? {
        return Err(CanonicalError::UnboundedRegion {
            signs: region.sign_string(),
        });
    }
    Ok(())
}

/// Sign of `det(basis of sub | u)` in the coordinates of `cell.flat`, with
/// `u` pointing from the facet into the cell.
fn facet_sign(cell: &FaceCell, facet: &FaceCell) -> i8 {
    let u: Vec<Rational> = cell
        .witness
        .iter()
        .zip(&facet.witness)
        .map(|(a, b)| a - b)
        .collect();
    let d = cell.flat.dim();
    let mut cols: Vec<Vec<Rational>> = facet
        .flat
        .directions()
        .iter()
        .map(|v| {
            cell.flat
                .direction_coordinates(v)
                .expect("sub-flat directions lie in the flat")
        })
        .collect();
    cols.push(
        cell.flat
            .direction_coordinates(&u)
            .expect("facet lies on the cell's flat"),
    );
    let det = Matrix::from_columns(&cols, d).determinant();
    assert!(!det.is_zero(), "inward direction is transverse to the facet");
    if det.is_positive() {
        1
    } else {
        -1
    }
}

/// The iterated boundary `∂_I(σ)`: walk down the flag
/// `L_{i_n} ⊃ L_{i_{n-1}} ∩ L_{i_n} ⊃ ... ⊃ L_I`, multiplying facet signs;
/// zero as soon as a step has no facet.
pub fn iterated_boundary(
    rc: &RegionComplex,
    region: &Region,
    indices: &[usize],
) -> Result<i8, CanonicalError> {
    require_bounded(rc, region)?;
    let arrangement = rc.arrangement();
    let n = arrangement.dim();
    for &i in indices {
        arrangement
            .check_index(i)
            .map_err(|e| CanonicalError::Os(OsError::Arrangement(e)))?;
    }
    let dependent = || CanonicalError::DependentTuple {
        indices: indices.to_vec(),
    };
    if indices.len() != n {
        return Err(dependent());
    }
    match arrangement.flat_through(indices) {
        Some(f) if f.codim() == n => {}
        _ => return Err(dependent()),
    }
    let mut cell = FaceCell::from_region(rc, region);
    let mut sign = 1i8;
    for &j in indices.iter().rev() {
        let Some(facet) = facets_in(rc, &cell, j)?.pop() else {
            return Ok(0);
        };
        sign *= facet_sign(&cell, &facet);
        cell = facet;
    }
    Ok(sign)
}

/// `sum over nbc I of ∂_I(σ) e_I`.
pub fn canonical_form(
    complex: &OsComplex,
    rc: &RegionComplex,
    region: &Region,
) -> Result<OSElement, CanonicalError> {
    require_bounded(rc, region)?;
    let n = complex.dim();
    let mut form = OSElement::zero(n);
    for m in complex.basis(n) {
        let s = iterated_boundary(rc, region, &m.indices)?;
        if s != 0 {
            form.add_term(m.clone(), Rational::from_integer(s.into()));
        }
    }
    if !complex.boundary(&form).is_zero() {
        return Err(OsError::InvariantViolation(format!(
            "canonical form of {} is not a cycle",
            region.sign_string()
        ))
        .into());
    }
    Ok(form)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalEntry {
    pub region: String,
    pub form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub forms: Vec<CanonicalEntry>,
    pub kernel: Vec<String>,
    pub independent: bool,
    pub spans_kernel: bool,
    /// Row `r` writes form `r` in the kernel basis.
    pub change_of_basis: Vec<Vec<String>>,
}

impl CanonicalReport {
    pub fn passed(&self) -> bool {
        self.independent && self.spans_kernel
    }
}

/// Canonical forms of all bounded regions, compared with the kernel basis.
pub fn canonical_basis_check(
    complex: &OsComplex,
    rc: &RegionComplex,
) -> Result<CanonicalReport, CanonicalError> {
    if !complex.arrangement().is_essential() {
        return Err(CanonicalError::ExpectedEssential);
    }
    let n = complex.dim();
    let width = complex.basis(n).len();
    let kernel = complex.finite_distance_basis()?;
    let mut forms = Vec::new();
    let mut rows = Vec::new();
    for region in rc.bounded_regions() {
        let form = canonical_form(complex, rc, region)?;
        rows.push(complex.to_vector(&form));
        forms.push(CanonicalEntry {
            region: region.sign_string(),
            form: form.to_text(),
        });
    }
    let kernel_rows: Vec<Vec<Rational>> = kernel.iter().map(|k| complex.to_vector(k)).collect();
    let form_rank = Matrix::from_rows(rows.clone(), width).rank();
    let independent = form_rank == rows.len();
    let joint = Matrix::from_rows(rows.iter().chain(&kernel_rows).cloned().collect(), width).rank();
    let spans_kernel = form_rank == kernel_rows.len() && joint == kernel_rows.len();
    let kt = Matrix::from_columns(&kernel_rows, width);
    let change_of_basis = rows
        .iter()
        .map(|r| match solve_affine(&kt, r) {
            Some(sol) => sol.particular.iter().map(format_rational).collect(),
            None => Vec::new(),
        })
        .collect();
    Ok(CanonicalReport {
        forms,
        kernel: kernel.iter().map(|k| k.to_text()).collect(),
        independent,
        spans_kernel,
        change_of_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn gen3() -> Arrangement {
        Arrangement::from_integers(2, &[(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], -1)]).unwrap()
    }

    #[test]
    fn gen3_flag_signs() {
        let a = gen3();
        let rc = RegionComplex::new(&a);
        let tri = rc.find(&[1, 1, -1]).unwrap();
        assert_eq!(iterated_boundary(&rc, tri, &[0, 1]).unwrap(), 1);
        assert_eq!(iterated_boundary(&rc, tri, &[1, 0]).unwrap(), -1);
        assert_eq!(iterated_boundary(&rc, tri, &[0, 2]).unwrap(), -1);
        assert_eq!(iterated_boundary(&rc, tri, &[1, 2]).unwrap(), 1);
        assert!(matches!(
            iterated_boundary(&rc, tri, &[0, 0]),
            Err(CanonicalError::DependentTuple { .. })
        ));
        let open = rc.find(&[1, 1, 1]).unwrap();
        assert!(matches!(
            iterated_boundary(&rc, open, &[0, 1]),
            Err(CanonicalError::UnboundedRegion { .. })
        ));
    }

    #[test]
    fn gen3_form_is_kernel_generator() {
        let a = gen3();
        let c = OsComplex::new(&a).unwrap();
        let rc = RegionComplex::new(&a);
        let form = canonical_form(&c, &rc, rc.find(&[1, 1, -1]).unwrap()).unwrap();
        assert_eq!(form.to_text(), "1 * e[1^2] - 1 * e[1^3] + 1 * e[2^3]");
        let report = canonical_basis_check(&c, &rc).unwrap();
        assert!(report.passed());
        assert_eq!(report.change_of_basis.len(), 1);
    }

    /// The standard simplex has form `dx / (x_1 ... x_n (1 - sum x_i))`,
    /// i.e. numerator -1 over `f_1 ... f_{n+1}` with `f_{n+1} = sum x_i - 1`.
    #[test]
    fn simplex_forms_are_positive() {
        for n in 1..=3usize {
            let mut data: Vec<(Vec<i64>, i64)> = (0..n)
                .map(|i| ((0..n).map(|j| i64::from(i == j)).collect(), 0))
                .collect();
            data.push((vec![1; n], -1));
            let a = Arrangement::from_integers(n, &data).unwrap();
            let c = OsComplex::new(&a).unwrap();
            let rc = RegionComplex::new(&a);
            let mut signs = vec![1i8; n];
            signs.push(-1);
            let form = canonical_form(&c, &rc, rc.find(&signs).unwrap()).unwrap();
            let rf = to_rational_form(&a, &form).unwrap();
            assert_eq!(rf.numerator.to_string(), "-1", "n = {n}");
            assert_eq!(rf.denominator, (0..=n).collect::<Vec<_>>());
        }
    }
}
