//! Exact two-phase simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exactlin::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

/// Optimize `objective . x` over free variables `x` subject to the constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub dim: usize,
    pub objective: Vec<Rational>,
    pub sense: Sense,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpStatus {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpStatus::Optimal { .. })
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . z` over columns with `allowed[j]`; `false` if unbounded.
    fn maximize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .rows
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| acc - &cost[b] * &row[j]);
                reduced.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }

    fn value(&self, col: usize) -> Rational {
        match self.basis.iter().position(|&b| b == col) {
            Some(i) => self.rhs(i).clone(),
            None => Rational::zero(),
        }
    }
}

/// Solves the program exactly. Variables are free; internally each is split
/// into a difference of two nonnegative columns.
pub fn lp_optimize(p: &LinearProgram) -> LpStatus {
    let n = p.dim;
    let m = p.constraints.len();
    let slack_cols: Vec<Option<usize>> = {
        let mut next = 2 * n;
        p.constraints
            .iter()
            .map(|c| match c.relation {
                Relation::Eq => None,
                _ => {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect()
    };
    let slack_count = slack_cols.iter().flatten().count();
    let art0 = 2 * n + slack_count;
    let width = art0 + m;

    let mut rows = Vec::with_capacity(m);
    for (i, c) in p.constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint length differs from program dimension");
        let mut row = vec![Rational::zero(); width + 1];
        for (k, a) in c.coeffs.iter().enumerate() {
            row[k] = a.clone();
            row[n + k] = -a.clone();
        }
        match (c.relation, slack_cols[i]) {
            (Relation::Le, Some(s)) => row[s] = Rational::one(),
            (Relation::Ge, Some(s)) => row[s] = -Rational::one(),
            _ => {}
        }
        row[width] = c.rhs.clone();
        if c.rhs.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + i] = Rational::one();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    let mut phase1 = vec![Rational::zero(); width];
    for v in &mut phase1[art0..] {
        *v = -Rational::one();
    }
    t.maximize(&phase1, &vec![true; width]);
    let infeasibility: Rational = (0..m)
        .filter(|&i| t.basis[i] >= art0)
        .map(|i| t.rhs(i).clone())
        .fold(Rational::zero(), |a, b| a + b);
    if infeasibility.is_positive() {
        return LpStatus::Infeasible;
    }
    // Drive zero-level artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let flip = match p.sense {
        Sense::Maximize => Rational::one(),
        Sense::Minimize => -Rational::one(),
    };
    let mut cost = vec![Rational::zero(); width];
    for (k, c) in p.objective.iter().enumerate() {
        cost[k] = c * &flip;
        cost[n + k] = -(c * &flip);
    }
    let allowed: Vec<bool> = (0..width).map(|j| j < art0).collect();
    if !t.maximize(&cost, &allowed) {
        return LpStatus::Unbounded;
    }
    let point: Vec<Rational> = (0..n).map(|k| t.value(k) - t.value(n + k)).collect();
    let value = p
        .objective
        .iter()
        .zip(&point)
        .fold(Rational::zero(), |acc, (c, x)| acc + c * x);
    LpStatus::Optimal { value, point }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn lp(dim: usize, objective: Vec<i64>, sense: Sense, cons: &[(Vec<i64>, Relation, i64)]) -> LinearProgram {
        LinearProgram {
            dim,
            objective: objective.into_iter().map(q).collect(),
            sense,
            constraints: cons
                .iter()
                .map(|(a, r, b)| Constraint::new(a.iter().map(|&v| q(v)).collect(), *r, q(*b)))
                .collect(),
        }
    }

    #[test]
    fn one_dimensional_cases() {
        let p = lp(1, vec![1], Sense::Maximize, &[(vec![1], Relation::Le, 3)]);
        assert_eq!(lp_optimize(&p), LpStatus::Optimal { value: q(3), point: vec![q(3)] });
        let p = lp(1, vec![1], Sense::Maximize, &[(vec![1], Relation::Ge, 0)]);
        assert_eq!(lp_optimize(&p), LpStatus::Unbounded);
        let p = lp(
            1,
            vec![0],
            Sense::Maximize,
            &[(vec![1], Relation::Le, 0), (vec![1], Relation::Ge, 1)],
        );
        assert_eq!(lp_optimize(&p), LpStatus::Infeasible);
    }

    #[test]
    fn triangle_minimum_and_equalities() {
        // min x + 2y over x >= 0, y >= 0, x + y >= 1: attained at (1, 0).
        let p = lp(
            2,
            vec![1, 2],
            Sense::Minimize,
            &[
                (vec![1, 0], Relation::Ge, 0),
                (vec![0, 1], Relation::Ge, 0),
                (vec![1, 1], Relation::Ge, 1),
            ],
        );
        assert_eq!(lp_optimize(&p), LpStatus::Optimal { value: q(1), point: vec![q(1), q(0)] });
        // a redundant equality pair
        let p = lp(
            2,
            vec![1, 1],
            Sense::Maximize,
            &[
                (vec![1, -1], Relation::Eq, 0),
                (vec![2, -2], Relation::Eq, 0),
                (vec![1, 0], Relation::Le, -2),
            ],
        );
        assert_eq!(lp_optimize(&p), LpStatus::Optimal { value: q(-4), point: vec![q(-2), q(-2)] });
    }

    #[test]
    fn no_constraints() {
        let p = lp(2, vec![0, 0], Sense::Maximize, &[]);
        assert!(lp_optimize(&p).is_optimal());
        let p = lp(2, vec![1, 0], Sense::Minimize, &[]);
        assert_eq!(lp_optimize(&p), LpStatus::Unbounded);
    }
}
