use std::fmt;

use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::exactlin::{Matrix, Rational};
use crate::oscomplex::{OSElement, OsError};
use crate::QMultiPoly;

/// `numerator / prod f_j  dx_1 ^ ... ^ dx_n`, with no hyperplane dividing
/// the numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: QMultiPoly,
    pub denominator: Vec<usize>,
    pub labels: Vec<String>,
    pub dim: usize,
}

impl RationalForm {
    /// Value of the coefficient of `dx_1 ^ ... ^ dx_n` at `x`; `None` on a pole.
    pub fn eval(&self, arrangement: &Arrangement, x: &[Rational]) -> Option<Rational> {
        let mut den = Rational::from_integer(1.into());
        for &j in &self.denominator {
            den *= arrangement.hyperplane(j).eval(x);
        }
        if den.is_zero() {
            return None;
        }
        Some(self.numerator.eval(x) / den)
    }
}

impl fmt::Display for RationalForm {
    /// `(<numerator>) / (L1*L2*L3) dx1^dx2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = if self.labels.is_empty() {
            "1".to_string()
        } else {
            self.labels.join("*")
        };
        let dx: Vec<String> = (1..=self.dim).map(|k| format!("dx{k}")).collect();
        write!(f, "({}) / ({den}) {}", self.numerator, dx.join("^"))
    }
}

/// Expands `sum c_I e_I` into a single rational differential form, using
/// `e_I -> det(a_I) dx / prod_{i in I} f_i`, then cancels hyperplanes that
/// divide the numerator.
pub fn to_rational_form(arrangement: &Arrangement, x: &OSElement) -> Result<RationalForm, OsError> {
    let n = arrangement.dim();
    if x.degree() != n {
        return Err(OsError::DegreeMismatch {
            expected: n,
            found: x.degree(),
        });
    }
    let mut support: Vec<usize> = x.terms().flat_map(|(m, _)| m.indices.clone()).collect();
    support.sort_unstable();
    support.dedup();
    let factor = |j: usize| {
        let h = arrangement.hyperplane(j);
        QMultiPoly::affine(h.normal(), h.offset().clone())
    };
    let mut numerator = QMultiPoly::zero(n);
    for (m, c) in x.terms() {
        let rows: Vec<Vec<Rational>> = m
            .indices
            .iter()
            .map(|&i| arrangement.hyperplane(i).normal().to_vec())
            .collect();
        let det = Matrix::from_rows(rows, n).determinant();
        let mut term = QMultiPoly::constant(n, det * c);
        for &j in support.iter().filter(|j| !m.indices.contains(j)) {
            term = term.mul(&factor(j));
        }
        numerator = numerator.add(&term);
    }
    let mut denominator = Vec::new();
    for j in support {
        match numerator.div_exact(&factor(j)) {
            Some(q) => numerator = q,
            None => denominator.push(j),
        }
    }
    let labels = denominator
        .iter()
        .map(|&j| arrangement.hyperplane(j).label().to_string())
        .collect();
    Ok(RationalForm {
        numerator,
        denominator,
        labels,
        dim: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscomplex::OsComplex;

    #[test]
    fn gen3_generator_has_constant_numerator() {
        let a = Arrangement::from_integers(2, &[(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], -1)])
            .unwrap();
        let c = OsComplex::new(&a).unwrap();
        let x = c.parse_element("1 * e[1^2] - 1 * e[1^3] + 1 * e[2^3]", 2).unwrap();
        let form = to_rational_form(&a, &x).unwrap();
        assert_eq!(form.to_string(), "(-1) / (H1*H2*H3) dx1^dx2");
        assert_eq!(form.denominator, vec![0, 1, 2]);
        let single = to_rational_form(&a, &c.parse_element("1 * e[2^3]", 2).unwrap()).unwrap();
        assert_eq!(single.to_string(), "(-1) / (H2*H3) dx1^dx2");
    }
}
