//! Univariate and multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::Scalar;

/// Dense univariate polynomial; `coeffs[d]` is the coefficient of `t^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) + other.coeff(d)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|d| self.coeff(d) - other.coeff(d)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for UniPoly<T> {
    /// Prints e.g. `t^2 - 5*t + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(T, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| {
                let var = match d {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{d}"),
                };
                (c.clone(), var)
            })
            .collect();
        write_signed_terms(f, &terms)
    }
}

fn write_signed_terms<T: Scalar + fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    terms: &[(T, String)],
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, var)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if var.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(var)?;
        } else {
            write!(f, "{mag}*{var}")?;
        }
    }
    Ok(())
}

/// Sparse multivariate polynomial in `nvars` variables `x1..xn`.
///
/// Keys are exponent vectors; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, T>,
}

/// Graded lexicographic comparison, larger total degree first.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The affine polynomial `a . x + c`.
    pub fn affine(linear: &[T], constant: T) -> Self {
        let n = linear.len();
        let mut p = Self::constant(n, constant);
        for (i, a) in linear.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, a.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[u32]) -> T {
        self.terms.get(exponent).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: T) {
        assert_eq!(exponent.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let sum = self.coeff(&exponent) + c;
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(point).fold(T::one(), |m, (&k, x)| {
                (0..k).fold(m, |m, _| m * x.clone())
            });
            acc + c.clone() * mono
        })
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    ///
    /// Single-divisor division under lex order; a nonzero remainder means the
    /// divisor does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            if e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let factor = c.clone() / lead_c.clone();
            let mut step = Self::zero(self.nvars);
            step.add_term(shift, factor);
            quot = quot.add(&step);
            rem = rem.sub(&step.mul(divisor));
        }
        Some(quot)
    }

    /// Terms sorted in graded lexicographic order, leading term first.
    pub fn grlex_terms(&self) -> Vec<(Vec<u32>, T)> {
        let mut terms: Vec<(Vec<u32>, T)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        terms
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for MultiPoly<T> {
    /// Prints e.g. `x1^2*x2 - 3*x1 + 1/2` in graded lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(T, String)> = self
            .grlex_terms()
            .into_iter()
            .map(|(e, c)| {
                let var = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{k}", i + 1)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                (c, var)
            })
            .collect();
        write_signed_terms(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rational_from_i64;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        rational_from_i64(v)
    }

    #[test]
    fn unipoly_trims_and_prints() {
        let p = UniPoly::new(vec![q(6), q(-5), q(1), q(0)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "t^2 - 5*t + 6");
        assert_eq!(p.eval(&q(1)), q(2));
        assert_eq!(p.eval(&q(-1)), q(12));
        assert_eq!(UniPoly::<Rational>::new(vec![q(0)]).to_string(), "0");
        assert_eq!(UniPoly::new(vec![q(1), q(-2), q(1)]).to_string(), "t^2 - 2*t + 1");
        assert_eq!(UniPoly::new(vec![q(0), q(-1)]).to_string(), "-t");
    }

    #[test]
    fn unipoly_arithmetic() {
        let a = UniPoly::new(vec![q(-1), q(1)]);
        assert_eq!(a.mul(&a), UniPoly::new(vec![q(1), q(-2), q(1)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn multipoly_grlex_display() {
        let x = MultiPoly::affine(&[q(1), q(0)], q(0));
        let y = MultiPoly::affine(&[q(0), q(1)], q(0));
        let p = x.mul(&x).mul(&y).sub(&x.scale(&q(3))).add(&MultiPoly::constant(2, Rational::new(1.into(), 2.into())));
        assert_eq!(p.to_string(), "x1^2*x2 - 3*x1 + 1/2");
        let p = y.mul(&y).add(&x.mul(&y)).add(&x.mul(&x));
        assert_eq!(p.to_string(), "x1^2 + x1*x2 + x2^2");
    }

    #[test]
    fn exact_division_by_linear_factor() {
        let f = MultiPoly::affine(&[q(1), q(1)], q(-1));
        let g = MultiPoly::affine(&[q(2), q(-1)], q(3));
        let prod = f.mul(&g);
        assert_eq!(prod.div_exact(&f), Some(g.clone()));
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        let h = MultiPoly::affine(&[q(0), q(1)], q(0));
        assert_eq!(prod.div_exact(&h), None);
        assert_eq!(MultiPoly::constant(2, q(-10)).div_exact(&f), None);
    }
}
