use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{signed_sort, Monomial, OSElement, OsError};
use crate::arrangement::Arrangement;
use crate::exactlin::{solve_affine, Matrix, Rational};
use crate::QMatrix;

/// An arrangement with its nbc bases and cached boundary matrices.
#[derive(Debug)]
pub struct OsComplex {
    arrangement: Arrangement,
    bases: Vec<Vec<Monomial>>,
    positions: Vec<HashMap<Vec<usize>, usize>>,
    boundaries: Vec<OnceLock<QMatrix>>,
    straightened: Mutex<HashMap<Vec<usize>, OSElement>>,
    corrupt: bool,
}

impl OsComplex {
    pub fn new(arrangement: &Arrangement) -> Result<Self, OsError> {
        let arrangement = arrangement.clone();
        let n = arrangement.dim();
        let poset = arrangement.poset();
        let mut bases = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut basis = Vec::new();
            for flat in poset.flats_of_codim(k) {
                let flat_pos = poset.index_of(flat.support()).expect("flat is indexed");
                let before = basis.len();
                for indices in combinations(flat.support(), k) {
                    if arrangement.flat_position(&indices) == Some(flat_pos)
                        && is_nbc(&arrangement, &indices)
                    {
                        basis.push(Monomial {
                            flat: flat_pos,
                            indices,
                        });
                    }
                }
                let count = (basis.len() - before) as i64;
                if count != flat.mobius().abs() {
                    return Err(OsError::InvariantViolation(format!(
                        "flat {:?} has {count} nbc monomials but |mu| = {}",
                        flat.support(),
                        flat.mobius().abs()
                    )));
                }
            }
            bases.push(basis);
        }
        let positions = bases
            .iter()
            .map(|b| {
                b.iter()
                    .enumerate()
                    .map(|(i, m)| (m.indices.clone(), i))
                    .collect()
            })
            .collect();
        Ok(OsComplex {
            arrangement,
            bases,
            positions,
            boundaries: (0..=n + 1).map(|_| OnceLock::new()).collect(),
            straightened: Mutex::new(HashMap::new()),
            corrupt: false,
        })
    }

    /// Perturbs the top boundary matrix so verification has something to catch.
    #[doc(hidden)]
    pub fn corrupt_boundary_for_testing(&mut self) {
        self.corrupt = true;
        self.boundaries = (0..self.boundaries.len()).map(|_| OnceLock::new()).collect();
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim()
    }

    /// Degree-`k` nbc monomials in (flat, lex) order; empty for `k > dim`.
    pub fn basis(&self, k: usize) -> &[Monomial] {
        self.bases.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Position of a sorted nbc index set in the degree basis.
    pub fn position(&self, indices: &[usize]) -> Option<usize> {
        self.positions.get(indices.len())?.get(indices).copied()
    }

    pub fn monomial(&self, indices: &[usize]) -> Option<&Monomial> {
        self.position(indices).map(|p| &self.bases[indices.len()][p])
    }

    /// Expresses `e_{indices}` (any order, distinct entries) in the nbc basis.
    pub fn straighten(&self, indices: &[usize]) -> Result<OSElement, OsError> {
        for &i in indices {
            self.arrangement.check_index(i)?;
        }
        let Some((sign, sorted)) = signed_sort(indices) else {
            let dup = indices
                .iter()
                .enumerate()
                .find(|(k, i)| indices[..*k].contains(i))
                .map(|(_, &i)| i)
                .unwrap_or_default();
            return Err(OsError::RepeatedIndex { index: dup });
        };
        let x = self.straighten_sorted(&sorted);
        Ok(if sign < 0 { x.neg() } else { x })
    }

    pub(crate) fn straighten_sorted(&self, sorted: &[usize]) -> OSElement {
        let k = sorted.len();
        if let Some(m) = self.monomial(sorted) {
            return OSElement::monomial(m.clone());
        }
        if let Some(hit) = self.straightened.lock().unwrap().get(sorted) {
            return hit.clone();
        }
        let result = self.rewrite(sorted);
        debug_assert_eq!(result.degree(), k);
        self.straightened
            .lock()
            .unwrap()
            .insert(sorted.to_vec(), result.clone());
        result
    }

    /// One broken-circuit rewrite, then recursion on the (lex smaller) terms.
    fn rewrite(&self, sorted: &[usize]) -> OSElement {
        let k = sorted.len();
        let zero = OSElement::zero(k);
        let Some(pos) = self.arrangement.flat_position(sorted) else {
            return zero;
        };
        if self.arrangement.poset().flats()[pos].codim() != k {
            return zero;
        }
        let (t, j) = first_broken_suffix(&self.arrangement, sorted)
            .expect("independent non-nbc set has a broken circuit");
        let circuit_rest = circuit_through(&self.arrangement, j, &sorted[t..]);
        let rest: Vec<usize> = sorted
            .iter()
            .copied()
            .filter(|i| !circuit_rest.contains(i))
            .collect();
        // e_I = s * e_B ^ e_R, and e_B = sum_{r >= 1} (-1)^(r+1) e_{C \ c_r} with C = {j} u B.
        let mut concat = circuit_rest.clone();
        concat.extend(&rest);
        let (s, _) = signed_sort(&concat).expect("distinct indices");
        let mut circuit = vec![j];
        circuit.extend(&circuit_rest);
        let mut out = zero;
        for r in 1..circuit.len() {
            let mut seq: Vec<usize> = circuit
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != r)
                .map(|(_, &c)| c)
                .collect();
            seq.extend(&rest);
            let Some((s2, target)) = signed_sort(&seq) else {
                continue;
            };
            let sign = i64::from(s) * i64::from(s2) * if r % 2 == 1 { 1 } else { -1 };
            let term = self.straighten_sorted(&target);
            out.add_scaled(&term, &Rational::from_integer(sign.into()));
        }
        out
    }

    /// `boundary(x)`; degree-0 elements map to zero of degree 0.
    pub fn boundary(&self, x: &OSElement) -> OSElement {
        let k = x.degree();
        if k == 0 {
            return OSElement::zero(0);
        }
        let mut out = OSElement::zero(k - 1);
        for (m, c) in x.terms() {
            out.add_scaled(&self.boundary_of(&m.indices), c);
        }
        out
    }

    /// `boundary(e_I)` for a sorted index set.
    pub(crate) fn boundary_of(&self, sorted: &[usize]) -> OSElement {
        let k = sorted.len();
        let mut out = OSElement::zero(k - 1);
        for r in 0..k {
            let face: Vec<usize> = [&sorted[..r], &sorted[r + 1..]].concat();
            let sign = if r % 2 == 0 { Rational::one() } else { -Rational::one() };
            out.add_scaled(&self.straighten_sorted(&face), &sign);
        }
        out
    }

    /// Matrix of `boundary: A_k -> A_{k-1}` in the nbc bases
    /// (rows: degree `k-1`, columns: degree `k`).
    pub fn boundary_matrix(&self, k: usize) -> &QMatrix {
        let slot = &self.boundaries[k.min(self.boundaries.len() - 1)];
        slot.get_or_init(|| {
            let cols = self.basis(k);
            let rows = if k == 0 { &[][..] } else { self.basis(k - 1) };
            let mut m = Matrix::zeros(rows.len(), cols.len());
            if k > 0 {
                for (c, mono) in cols.iter().enumerate() {
                    for (face, v) in self.boundary_of(&mono.indices).terms() {
                        let r = self.position(&face.indices).expect("face is nbc");
                        m.set(r, c, v.clone());
                    }
                }
            }
            if self.corrupt && k == self.dim() && m.rows() > 0 && m.cols() > 0 {
                let v = m.get(0, 0) + Rational::one();
                m.set(0, 0, v);
            }
            m
        })
    }

    pub fn to_vector(&self, x: &OSElement) -> Vec<Rational> {
        let basis = self.basis(x.degree());
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in x.terms() {
            v[self.position(&m.indices).expect("element is in nbc form")] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, degree: usize, v: &[Rational]) -> OSElement {
        let basis = self.basis(degree);
        assert_eq!(v.len(), basis.len(), "vector length differs from basis size");
        let mut x = OSElement::zero(degree);
        for (m, c) in basis.iter().zip(v) {
            x.add_term(m.clone(), c.clone());
        }
        x
    }

    /// Basis of `ker(boundary: A_n -> A_{n-1})`, one element per free column
    /// of the boundary matrix.
    pub fn finite_distance_basis(&self) -> Result<Vec<OSElement>, OsError> {
        if !self.arrangement.is_essential() {
            return Err(OsError::ExpectedEssential);
        }
        let n = self.dim();
        let kernel = self.boundary_matrix(n).nullspace();
        let expected = expected_kernel_dim(&self.arrangement);
        if kernel.len() as i64 != expected {
            return Err(OsError::InvariantViolation(format!(
                "kernel has dimension {} but (-1)^n chi(1) = {expected}",
                kernel.len()
            )));
        }
        Ok(kernel.iter().map(|v| self.from_vector(n, v)).collect())
    }

    /// Homology dimensions of `(A_*, boundary)` in degrees `0..=n`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let n = self.dim();
        let ranks: Vec<usize> = (0..=n + 1)
            .map(|k| if k == 0 || k > n { 0 } else { self.boundary_matrix(k).rank() })
            .collect();
        (0..=n)
            .map(|k| self.basis(k).len().saturating_sub(ranks[k] + ranks[k + 1]))
            .collect()
    }

    /// Element parsed from the text form, straightened into nbc coordinates.
    pub fn parse_element(&self, text: &str, degree: usize) -> Result<OSElement, OsError> {
        let mut x = OSElement::zero(degree);
        for (c, indices) in super::parse_terms(text)? {
            if indices.len() != degree {
                return Err(OsError::DegreeMismatch {
                    expected: degree,
                    found: indices.len(),
                });
            }
            x.add_scaled(&self.straighten(&indices)?, &c);
        }
        Ok(x)
    }

    /// Product in the Orlik-Solomon algebra, by concatenating, sorting and
    /// straightening. Not a derivation partner of `boundary` in general.
    pub(crate) fn wedge(&self, x: &OSElement, y: &OSElement) -> OSElement {
        let mut out = OSElement::zero(x.degree() + y.degree());
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let seq: Vec<usize> = mx.indices.iter().chain(&my.indices).copied().collect();
                let Some((s, sorted)) = signed_sort(&seq) else {
                    continue;
                };
                let c = cx * cy * Rational::from_integer(i64::from(s).into());
                out.add_scaled(&self.straighten_sorted(&sorted), &c);
            }
        }
        out
    }
}

/// `(-1)^n chi(1)`.
pub(crate) fn expected_kernel_dim(arrangement: &Arrangement) -> i64 {
    let chi1 = arrangement.charpoly().eval(&Rational::one());
    let v = if arrangement.dim() % 2 == 0 { chi1 } else { -chi1 };
    assert!(v.is_integer(), "chi(1) is an integer");
    i64::try_from(v.to_integer()).expect("small")
}

/// Whether a sorted, independent, meeting index set contains no broken circuit.
pub(crate) fn is_nbc(arrangement: &Arrangement, sorted: &[usize]) -> bool {
    first_broken_suffix(arrangement, sorted).is_none()
}

/// First suffix `I[t..]` whose flat contains a hyperplane `j < I[t]`.
fn first_broken_suffix(arrangement: &Arrangement, sorted: &[usize]) -> Option<(usize, usize)> {
    let poset = arrangement.poset();
    for t in 0..sorted.len() {
        let pos = arrangement.flat_position(&sorted[t..])?;
        let j = poset.flats()[pos].support()[0];
        if j < sorted[t] {
            return Some((t, j));
        }
    }
    None
}

/// The members of `suffix` with nonzero coefficient when `a_j` is written in
/// their normals; with `j` they form a circuit.
fn circuit_through(arrangement: &Arrangement, j: usize, suffix: &[usize]) -> Vec<usize> {
    let n = arrangement.dim();
    let cols: Vec<Vec<Rational>> = suffix
        .iter()
        .map(|&i| arrangement.hyperplane(i).normal().to_vec())
        .collect();
    let a = Matrix::from_columns(&cols, n);
    let sol = solve_affine(&a, arrangement.hyperplane(j).normal())
        .expect("j lies in the closure of the suffix");
    suffix
        .iter()
        .zip(&sol.particular)
        .filter(|(_, l)| !l.is_zero())
        .map(|(&i, _)| i)
        .collect()
}

/// All `k`-subsets of a sorted slice, in lex order.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - current.len() {
                break;
            }
            current.push(items[i]);
            go(items, k, i + 1, current, out);
            current.pop();
        }
    }
    go(items, k, 0, &mut current, &mut out);
    out
}

pub fn nbc_basis(arrangement: &Arrangement, k: usize) -> Result<Vec<Monomial>, OsError> {
    Ok(OsComplex::new(arrangement)?.basis(k).to_vec())
}

pub fn straighten(arrangement: &Arrangement, indices: &[usize]) -> Result<OSElement, OsError> {
    OsComplex::new(arrangement)?.straighten(indices)
}

pub fn boundary(arrangement: &Arrangement, x: &OSElement) -> Result<OSElement, OsError> {
    Ok(OsComplex::new(arrangement)?.boundary(x))
}

pub fn finite_distance_basis(arrangement: &Arrangement) -> Result<Vec<OSElement>, OsError> {
    OsComplex::new(arrangement)?.finite_distance_basis()
}

pub fn complex_homology_dims(arrangement: &Arrangement) -> Result<Vec<usize>, OsError> {
    Ok(OsComplex::new(arrangement)?.homology_dims())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> Arrangement {
        Arrangement::from_integers(
            2,
            &[
                (vec![1, 0], 0),
                (vec![1, 0], -1),
                (vec![0, 1], 0),
                (vec![0, 1], -1),
                (vec![1, -1], 0),
            ],
        )
        .unwrap()
    }

    fn idx(c: &OsComplex, k: usize) -> Vec<Vec<usize>> {
        c.basis(k).iter().map(|m| m.indices.clone()).collect()
    }

    #[test]
    fn a5_nbc_basis() {
        let c = OsComplex::new(&a5()).unwrap();
        assert_eq!(idx(&c, 0), vec![Vec::<usize>::new()]);
        assert_eq!(idx(&c, 1).len(), 5);
        // points in support order: {1,3,5}, {1,4}, {2,3}, {2,4,5} (1-based)
        assert_eq!(
            idx(&c, 2),
            vec![vec![0, 2], vec![0, 4], vec![0, 3], vec![1, 2], vec![1, 3], vec![1, 4]]
        );
    }

    #[test]
    fn a5_straightening() {
        let c = OsComplex::new(&a5()).unwrap();
        // e4^e5 = e2^e5 - e2^e4
        assert_eq!(c.straighten(&[3, 4]).unwrap().to_text(), "-1 * e[2^4] + 1 * e[2^5]");
        assert!(c.straighten(&[0, 1]).unwrap().is_zero());
        assert_eq!(c.straighten(&[3, 0]).unwrap().to_text(), "-1 * e[1^4]");
        assert!(matches!(c.straighten(&[2, 2]), Err(OsError::RepeatedIndex { index: 2 })));
        assert!(c.straighten(&[0, 2, 4]).unwrap().is_zero());
    }

    #[test]
    fn a5_boundary_and_kernel() {
        let c = OsComplex::new(&a5()).unwrap();
        let x = c.parse_element("1 * e[1^4]", 2).unwrap();
        assert_eq!(c.boundary(&x).to_text(), "-1 * e[1] + 1 * e[4]");
        let k = c.parse_element("1 * e[1^4] - 1 * e[1^5] + 1 * e[4^5]", 2).unwrap();
        assert!(c.boundary(&k).is_zero());
        assert_eq!(c.finite_distance_basis().unwrap().len(), 2);
        assert_eq!(c.homology_dims(), vec![0, 0, 2]);
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(
            combinations(&[1, 4, 6], 2),
            vec![vec![1, 4], vec![1, 6], vec![4, 6]]
        );
        assert_eq!(combinations(&[1], 0), vec![Vec::<usize>::new()]);
    }
}
