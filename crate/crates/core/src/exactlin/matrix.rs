//! Dense matrices over an exact field and the elimination kernels built on them.
//!
//! Pivoting always takes the first nonzero entry in column order, so every
//! result here is reproducible bit for bit.

use std::fmt;

use super::Scalar;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Solution set of an affine system `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution<T> {
    /// The solution with every free variable set to zero.
    pub particular: Vec<T>,
    /// Basis of the kernel of `A`, as returned by [`Matrix::nullspace`].
    pub directions: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe matrices with no rows.
    ///
    /// Panics if a row has the wrong length.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row in Matrix::from_rows");
            data.extend(row);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column in Matrix::from_columns");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in Matrix::mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other.get(k, j).clone();
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in Matrix::mul_vec");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.rows, other.rows, "row mismatch in Matrix::hstack");
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend_from_slice(other.row(r));
                row
            })
            .collect();
        Self::from_rows(rows, cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = T::one() / m.get(pivot_row, col).clone();
            for c in col..m.cols {
                let v = m.get(pivot_row, c).clone() * inv.clone();
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(pivot_row, c).clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{x : M x = 0}`: one vector per free column in ascending order,
    /// with that free variable set to 1 and the other free variables to 0.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Rref { reduced, pivots } = self.rref();
        nullspace_from_rref(&reduced, &pivots)
    }

    /// Determinant by elimination. Panics on a non-square matrix.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return T::zero();
            };
            if src != col {
                m.swap_rows(src, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = m.get(r, col).clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        det
    }
}

fn nullspace_from_rref<T: Scalar>(reduced: &Matrix<T>, pivots: &[usize]) -> Vec<Vec<T>> {
    let cols = reduced.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent.
///
/// The particular solution sets every free variable to zero and reads the
/// pivot variables off the reduced right-hand side.
pub fn solve_affine<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Option<AffineSolution<T>> {
    assert_eq!(a.rows(), b.len(), "solve_affine: row count differs from rhs length");
    let n = a.cols();
    let rhs = Matrix::from_columns(&[b.to_vec()], a.rows());
    let Rref { reduced, pivots } = a.hstack(&rhs).rref();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![T::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = reduced.get(row, n).clone();
    }
    // The left block of the augmented rref is the rref of `a`.
    let left_rows: Vec<Vec<T>> = (0..reduced.rows())
        .map(|r| reduced.row(r)[..n].to_vec())
        .collect();
    let left = Matrix::from_rows(left_rows, n);
    Some(AffineSolution {
        particular,
        directions: nullspace_from_rref(&left, &pivots),
    })
}

/// Rank of a family of vectors of common length `len`.
pub fn rank_of<T: Scalar>(vectors: &[Vec<T>], len: usize) -> usize {
    Matrix::from_rows(vectors.to_vec(), len).rank()
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::rational_from_i64;
    use crate::Rational;
    use num_rational::Ratio;

    fn q(v: i64) -> Rational {
        rational_from_i64(v)
    }

    fn qm(rows: &[&[i64]], cols: usize) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), cols)
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::<Rational>::identity(2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);
    }

    #[test]
    fn rref_rank_one() {
        let r = qm(&[&[1, 2], &[2, 4]], 2).rref();
        assert_eq!(r.reduced, qm(&[&[1, 2], &[0, 0]], 2));
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_zero() {
        let z = qm(&[&[0]], 1);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::<Rational>::identity(2).nullspace().is_empty());
        assert_eq!(qm(&[&[1, 1]], 2).nullspace(), vec![vec![q(-1), q(1)]]);
        assert_eq!(
            qm(&[&[0, 0]], 2).nullspace(),
            vec![vec![q(1), q(0)], vec![q(0), q(1)]]
        );
    }

    #[test]
    fn solve_affine_examples() {
        let sol = solve_affine(&qm(&[&[1, 0], &[0, 1]], 2), &[q(0), q(0)]).unwrap();
        assert_eq!(sol.particular, vec![q(0), q(0)]);
        assert!(sol.directions.is_empty());

        assert!(solve_affine(&qm(&[&[1], &[1]], 1), &[q(0), q(1)]).is_none());

        // x1 + x2 = 1: x2 is free and set to zero.
        let sol = solve_affine(&qm(&[&[1, 1]], 2), &[q(1)]).unwrap();
        assert_eq!(sol.particular, vec![q(1), q(0)]);
        assert_eq!(sol.directions, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = qm(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]], 3);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = -52 - 2
        assert_eq!(m.determinant(), q(-54));
        assert_eq!(qm(&[&[1, 2], &[2, 4]], 2).determinant(), q(0));
    }

    #[test]
    fn generic_over_fixed_width_ratios() {
        let m: Matrix<Ratio<i64>> = Matrix::from_rows(
            vec![
                vec![Ratio::from_integer(1), Ratio::from_integer(1)],
                vec![Ratio::from_integer(2), Ratio::from_integer(2)],
            ],
            2,
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(
            m.nullspace(),
            vec![vec![Ratio::from_integer(-1), Ratio::from_integer(1)]]
        );
    }

    #[test]
    fn large_intermediates_stay_exact() {
        // Entries around 1e12 overflow i64 products during elimination.
        let big = 1_000_000_000_007i64;
        let m = qm(&[&[big, big - 1, 3], &[big + 1, big, 5], &[7, big - 3, big]], 3);
        let inv_check = m.rref();
        assert_eq!(inv_check.rank(), 3);
        assert_eq!(inv_check.reduced, Matrix::identity(3));
    }
}
