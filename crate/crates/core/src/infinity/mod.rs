//! Directions at infinity, residues, and the strata blown up at infinity.
//!
//! No compactification is built. The residue at the exceptional divisor over
//! a direction `v` is computed combinatorially: the boundary of a top-degree
//! monomial is split by the direction of each face's line, and each piece is
//! read in the quotient arrangement `A_v / v`.

mod strata;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactlin::{dot, format_rational, Matrix, Rational};
use crate::oscomplex::{format_terms, Monomial, OSElement, OsComplex, OsError};
use crate::QMatrix;

pub use strata::{infinity_strata, InfinityStrata, InfinityStratum, StratumKind};

/// All lines of one direction, with the hyperplanes parallel to it and the
/// quotient arrangement along it.
#[derive(Debug, Clone)]
pub struct DirectionClass {
    /// First nonzero coordinate is 1.
    pub vector: Vec<Rational>,
    /// Poset positions of the lines with this direction.
    pub lines: Vec<usize>,
    /// Hyperplanes `a . x + c` with `a . v = 0`, ascending.
    pub members: Vec<usize>,
    /// Coordinate of `v` dropped to form the quotient.
    pub pivot: usize,
    /// `A_v / v` in the remaining coordinates; hyperplane `k` comes from `members[k]`.
    pub quotient: Arrangement,
}

impl DirectionClass {
    pub fn name(&self) -> String {
        let ids: Vec<String> = self.members.iter().map(|i| (i + 1).to_string()).collect();
        format!("P[{}]", ids.join(","))
    }

    /// Quotient index of an ambient hyperplane.
    pub fn quotient_index(&self, i: usize) -> Option<usize> {
        self.members.binary_search(&i).ok()
    }

    /// Text form of a quotient element, written with ambient hyperplane numbers.
    pub fn lifted_text(&self, x: &OSElement) -> String {
        let lifted: Vec<(Rational, Vec<usize>)> = x
            .terms()
            .map(|(m, c)| (c.clone(), m.indices.iter().map(|&k| self.members[k]).collect()))
            .collect();
        format_terms(lifted.iter().map(|(c, i)| (c, i.as_slice())))
    }
}

fn normalize_direction(v: &[Rational]) -> Vec<Rational> {
    let lead = v.iter().find(|a| !a.is_zero()).expect("nonzero direction").clone();
    v.iter().map(|a| a / &lead).collect()
}

/// One class per direction of a line of `A`, ordered by member sets.
pub fn direction_classes(arrangement: &Arrangement) -> Vec<DirectionClass> {
    let n = arrangement.dim();
    if n == 0 {
        return Vec::new();
    }
    let poset = arrangement.poset();
    let mut by_vector: BTreeMap<Vec<usize>, (Vec<Rational>, Vec<usize>)> = BTreeMap::new();
    for line in poset.flats_of_codim(n - 1) {
        let v = normalize_direction(&line.directions()[0]);
        let members: Vec<usize> = (0..arrangement.len())
            .filter(|&i| dot(arrangement.hyperplane(i).normal(), &v).is_zero())
            .collect();
        by_vector
            .entry(members)
            .or_insert_with(|| (v, Vec::new()))
            .1
            .push(poset.index_of(line.support()).expect("indexed"));
    }
    by_vector
        .into_iter()
        .map(|(members, (vector, lines))| {
            let pivot = vector.iter().position(|a| !a.is_zero()).expect("nonzero");
            let hyperplanes = members
                .iter()
                .map(|&i| {
                    let h = arrangement.hyperplane(i);
                    let mut normal = h.normal().to_vec();
                    normal.remove(pivot);
                    Hyperplane::new(normal, h.offset().clone(), h.label())
                        .expect("a hyperplane parallel to v keeps a nonzero normal")
                })
                .collect();
            let quotient =
                Arrangement::new(n - 1, hyperplanes).expect("parallel hyperplanes stay distinct");
            DirectionClass {
                vector,
                lines,
                members,
                pivot,
                quotient,
            }
        })
        .collect()
}

/// Direction classes with their quotient complexes, over a fixed complex of `A`.
#[derive(Debug)]
pub struct AtInfinity<'a> {
    complex: &'a OsComplex,
    classes: Vec<DirectionClass>,
    quotients: Vec<OsComplex>,
    /// Class of each line, by poset position.
    line_class: BTreeMap<usize, usize>,
}

impl<'a> AtInfinity<'a> {
    pub fn new(complex: &'a OsComplex) -> Result<Self, OsError> {
        let arrangement = complex.arrangement();
        let classes = direction_classes(arrangement);
        let quotients = classes
            .iter()
            .map(|c| OsComplex::new(&c.quotient))
            .collect::<Result<Vec<_>, _>>()?;
        let n = arrangement.dim();
        let poset = arrangement.poset();
        let mut line_class = BTreeMap::new();
        for (ci, (class, q)) in classes.iter().zip(&quotients).enumerate() {
            let mu: i64 = class.lines.iter().map(|&l| poset.flats()[l].mobius().abs()).sum();
            let have = q.basis(n.saturating_sub(1)).len() as i64;
            if have != mu {
                return Err(OsError::InvariantViolation(format!(
                    "quotient along {} has {have} top monomials, lines carry {mu}",
                    class.name()
                )));
            }
            for &l in &class.lines {
                line_class.insert(l, ci);
            }
        }
        Ok(AtInfinity {
            complex,
            classes,
            quotients,
            line_class,
        })
    }

    pub fn complex(&self) -> &OsComplex {
        self.complex
    }

    pub fn classes(&self) -> &[DirectionClass] {
        &self.classes
    }

    pub fn quotient_complex(&self, class: usize) -> &OsComplex {
        &self.quotients[class]
    }

    /// Sign carried by the identification of each quotient with its summand
    /// of `A_{n-1}(A)`: `(-1)^n`.
    fn chart_sign(&self) -> Rational {
        if self.complex.dim() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Residues of a top-degree element, one component per direction class.
    ///
    /// Each face `e_{I \ i_r}` of `boundary(e_I)` is sent to the class of the
    /// line it cuts out and straightened in that quotient.
    pub fn residue(&self, x: &OSElement) -> Result<Vec<OSElement>, OsError> {
        let arrangement = self.complex.arrangement();
        let n = arrangement.dim();
        if x.degree() != n {
            return Err(OsError::DegreeMismatch {
                expected: n,
                found: x.degree(),
            });
        }
        if !arrangement.is_essential() {
            return Err(OsError::ExpectedEssential);
        }
        let mut out: Vec<OSElement> = self
            .classes
            .iter()
            .map(|_| OSElement::zero(n - 1))
            .collect();
        let sign = self.chart_sign();
        for (m, c) in x.terms() {
            for r in 0..n {
                let face: Vec<usize> = [&m.indices[..r], &m.indices[r + 1..]].concat();
                let line = arrangement
                    .flat_position(&face)
                    .expect("faces of a point monomial meet");
                let ci = self.line_class[&line];
                let local: Vec<usize> = face
                    .iter()
                    .map(|&i| self.classes[ci].quotient_index(i).expect("member of class"))
                    .collect();
                let term = self.quotients[ci].straighten(&local)?;
                let s = if r % 2 == 0 { sign.clone() } else { -sign.clone() };
                out[ci].add_scaled(&term, &(c * s));
            }
        }
        Ok(out)
    }

    /// The monomial identification `A_{n-1}(A) -> sum_v A_{n-1}(A_v / v)`.
    pub fn bijection(&self, m: &Monomial) -> (usize, Monomial) {
        let ci = self.line_class[&m.flat];
        let local: Vec<usize> = m
            .indices
            .iter()
            .map(|&i| self.classes[ci].quotient_index(i).expect("member of class"))
            .collect();
        let target = self.quotients[ci]
            .monomial(&local)
            .expect("nbc monomials stay nbc in the quotient")
            .clone();
        (ci, target)
    }

    /// Offsets of each class's block in the stacked residue vector.
    fn offsets(&self) -> Vec<usize> {
        let n = self.complex.dim();
        let mut acc = 0;
        self.quotients
            .iter()
            .map(|q| {
                let o = acc;
                acc += q.basis(n - 1).len();
                o
            })
            .collect()
    }

    /// Residue map as a matrix: rows are the quotient bases stacked in class
    /// order, columns the degree-`n` nbc basis of `A`.
    pub fn residue_matrix(&self) -> Result<QMatrix, OsError> {
        let n = self.complex.dim();
        let offsets = self.offsets();
        let rows: usize = self.quotients.iter().map(|q| q.basis(n - 1).len()).sum();
        let cols = self.complex.basis(n);
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, mono) in cols.iter().enumerate() {
            let res = self.residue(&OSElement::monomial(mono.clone()))?;
            for (ci, comp) in res.iter().enumerate() {
                for (qm, c) in comp.terms() {
                    let r = offsets[ci] + self.quotients[ci].position(&qm.indices).expect("nbc");
                    m.set(r, j, c.clone());
                }
            }
        }
        Ok(m)
    }

    /// `(-1)^n` times the boundary matrix, pushed through [`AtInfinity::bijection`].
    pub fn transported_boundary_matrix(&self) -> QMatrix {
        let n = self.complex.dim();
        let offsets = self.offsets();
        let faces = self.complex.basis(n - 1);
        let d = self.complex.boundary_matrix(n);
        let sign = self.chart_sign();
        let mut m = Matrix::zeros(d.rows(), d.cols());
        for (r, face) in faces.iter().enumerate() {
            let (ci, target) = self.bijection(face);
            let row = offsets[ci] + self.quotients[ci].position(&target.indices).expect("nbc");
            for c in 0..d.cols() {
                m.set(row, c, d.get(r, c) * &sign);
            }
        }
        m
    }
}

/// Residues of `x` in every direction class.
pub fn residue_map(
    arrangement: &Arrangement,
    x: &OSElement,
) -> Result<Vec<(DirectionClass, OSElement)>, OsError> {
    let complex = OsComplex::new(arrangement)?;
    let at = AtInfinity::new(&complex)?;
    let res = at.residue(x)?;
    Ok(at.classes().iter().cloned().zip(res).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionSummary {
    pub name: String,
    pub vector: Vec<String>,
    pub members: Vec<usize>,
    pub lines: usize,
    pub quotient_top_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueRow {
    pub monomial: String,
    pub components: Vec<String>,
}

/// Outcome of comparing residues with the boundary map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueReport {
    pub decomposition_ok: bool,
    pub map_equality_ok: bool,
    pub kernel_equality_ok: bool,
    pub directions: Vec<DirectionSummary>,
    pub schedule: Vec<String>,
    pub kernel_dim: usize,
    pub table: Vec<ResidueRow>,
}

impl ResidueReport {
    pub fn passed(&self) -> bool {
        self.decomposition_ok && self.map_equality_ok && self.kernel_equality_ok
    }
}

/// Checks the direction decomposition of `A_{n-1}`, residue = transported
/// boundary on every top monomial, and equality of the two kernels.
pub fn verify_residue_boundary(complex: &OsComplex) -> Result<ResidueReport, OsError> {
    let arrangement = complex.arrangement();
    if !arrangement.is_essential() {
        return Err(OsError::ExpectedEssential);
    }
    let n = arrangement.dim();
    if n == 0 {
        return Ok(ResidueReport {
            decomposition_ok: true,
            map_equality_ok: true,
            kernel_equality_ok: true,
            directions: Vec::new(),
            schedule: Vec::new(),
            kernel_dim: complex.basis(0).len(),
            table: Vec::new(),
        });
    }
    let at = AtInfinity::new(complex)?;

    let faces = complex.basis(n - 1);
    let total: usize = (0..at.classes().len())
        .map(|c| at.quotient_complex(c).basis(n - 1).len())
        .sum();
    let mut images: Vec<(usize, Vec<usize>)> =
        faces.iter().map(|f| {
            let (c, m) = at.bijection(f);
            (c, m.indices)
        }).collect();
    images.sort();
    images.dedup();
    let decomposition_ok = total == faces.len() && images.len() == faces.len();

    let residue = at.residue_matrix()?;
    let transported = at.transported_boundary_matrix();
    let map_equality_ok = residue == transported;

    let d = complex.boundary_matrix(n);
    let rank_d = d.rank();
    let rank_r = residue.rank();
    let stacked = Matrix::from_rows(
        d.to_rows().into_iter().chain(residue.to_rows()).collect(),
        d.cols(),
    );
    let kernel_equality_ok = rank_d == rank_r && stacked.rank() == rank_d;

    let directions = at
        .classes()
        .iter()
        .enumerate()
        .map(|(ci, c)| DirectionSummary {
            name: c.name(),
            vector: c.vector.iter().map(format_rational).collect(),
            members: c.members.iter().map(|i| i + 1).collect(),
            lines: c.lines.len(),
            quotient_top_dim: at.quotient_complex(ci).basis(n - 1).len(),
        })
        .collect();
    let mut table = Vec::new();
    for mono in complex.basis(n) {
        let res = at.residue(&OSElement::monomial(mono.clone()))?;
        table.push(ResidueRow {
            monomial: OSElement::monomial(mono.clone()).to_text(),
            components: at
                .classes()
                .iter()
                .zip(&res)
                .map(|(c, x)| c.lifted_text(x))
                .collect(),
        });
    }
    let schedule = infinity_strata(arrangement)
        .schedule
        .iter()
        .map(|s| s.divisor())
        .collect();
    Ok(ResidueReport {
        decomposition_ok,
        map_equality_ok,
        kernel_equality_ok,
        directions,
        schedule,
        kernel_dim: d.cols() - rank_r,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b5() -> Arrangement {
        Arrangement::from_integers(
            3,
            &[
                (vec![1, 0, 0], 0),
                (vec![1, 0, 0], -1),
                (vec![0, 1, 0], 0),
                (vec![0, 0, 1], 0),
                (vec![0, 1, 1], 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn b5_residue_of_e134() {
        let a = b5();
        let c = OsComplex::new(&a).unwrap();
        let at = AtInfinity::new(&c).unwrap();
        let names: Vec<String> = at.classes().iter().map(|d| d.name()).collect();
        assert_eq!(names, vec!["P[1,2,3]", "P[1,2,4]", "P[1,2,5]", "P[3,4,5]"]);
        let x = c.straighten(&[0, 2, 3]).unwrap();
        let res = at.residue(&x).unwrap();
        let texts: Vec<String> = at
            .classes()
            .iter()
            .zip(&res)
            .map(|(d, r)| d.lifted_text(r))
            .collect();
        assert_eq!(texts, vec!["-1 * e[1^3]", "1 * e[1^4]", "0", "-1 * e[3^4]"]);
        let report = verify_residue_boundary(&c).unwrap();
        assert!(report.passed());
        assert_eq!(report.kernel_dim, 0);
    }
}
