use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::exactlin::{solve_affine, Matrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StratumKind {
    Point,
    Positive,
}

/// A stratum of the projectivized arrangement lying in the hyperplane at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityStratum {
    pub kind: StratumKind,
    /// Hyperplanes (0-based) whose closures contain the stratum; the
    /// hyperplane at infinity always does as well.
    pub members: Vec<usize>,
    /// Projective dimension inside the hyperplane at infinity.
    pub dim: usize,
    pub irreducible: bool,
}

impl InfinityStratum {
    pub fn name(&self) -> String {
        let ids: Vec<String> = self.members.iter().map(|i| (i + 1).to_string()).collect();
        let tag = match self.kind {
            StratumKind::Point => "P",
            StratumKind::Positive => "S",
        };
        format!("{tag}[{}]", ids.join(","))
    }

    /// Name of the exceptional divisor created by blowing this stratum up.
    pub fn divisor(&self) -> String {
        format!("Y_{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinityStrata {
    pub g0: Vec<InfinityStratum>,
    pub girr: Vec<InfinityStratum>,
    /// Blow-up centers, smallest dimension first.
    pub schedule: Vec<InfinityStratum>,
}

/// Points at infinity, irreducible positive-dimensional strata at infinity
/// (other than the hyperplane at infinity itself), and the blow-up order.
pub fn infinity_strata(arrangement: &Arrangement) -> InfinityStrata {
    let n = arrangement.dim();
    // Distinct normals form a central arrangement whose flats W are the
    // strata P(W) at infinity.
    let mut normals: Vec<Vec<Rational>> = Vec::new();
    let mut owners: Vec<Vec<usize>> = Vec::new();
    for (i, h) in arrangement.hyperplanes().iter().enumerate() {
        match normals.iter().position(|a| a.as_slice() == h.normal()) {
            Some(k) => owners[k].push(i),
            None => {
                normals.push(h.normal().to_vec());
                owners.push(vec![i]);
            }
        }
    }
    let linear = Arrangement::new(
        n,
        normals
            .iter()
            .map(|a| Hyperplane::new(a.clone(), Rational::zero(), "").expect("nonzero"))
            .collect(),
    )
    .expect("distinct normals");

    let mut g0 = Vec::new();
    let mut girr = Vec::new();
    for flat in linear.poset().flats() {
        let w = flat.dim();
        if w == 0 || w == n {
            continue;
        }
        let mut members: Vec<usize> = flat
            .support()
            .iter()
            .flat_map(|&k| owners[k].iter().copied())
            .collect();
        members.sort_unstable();
        let mut vectors: Vec<Vec<Rational>> = members
            .iter()
            .map(|&i| {
                let h = arrangement.hyperplane(i);
                let mut v = h.normal().to_vec();
                v.push(h.offset().clone());
                v
            })
            .collect();
        let mut at_infinity = vec![Rational::zero(); n];
        at_infinity.push(Rational::one());
        vectors.push(at_infinity);
        let irreducible = matroid_components(&vectors) == 1;
        let stratum = InfinityStratum {
            kind: if w == 1 {
                StratumKind::Point
            } else {
                StratumKind::Positive
            },
            members,
            dim: w - 1,
            irreducible,
        };
        if w == 1 {
            g0.push(stratum);
        } else if irreducible {
            girr.push(stratum);
        }
    }
    g0.sort_by(|a, b| a.members.cmp(&b.members));
    girr.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.members.cmp(&b.members)));
    let mut schedule: Vec<InfinityStratum> = g0.iter().chain(&girr).cloned().collect();
    schedule.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.members.cmp(&b.members)));
    InfinityStrata { g0, girr, schedule }
}

/// Number of connected components of the matroid of a family of nonzero
/// vectors. Two elements are connected when they share a circuit; it is
/// enough to use the fundamental circuits of one basis.
pub(crate) fn matroid_components(vectors: &[Vec<Rational>]) -> usize {
    let m = vectors.len();
    if m == 0 {
        return 0;
    }
    let len = vectors[0].len();
    let mut basis: Vec<usize> = Vec::new();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for e in 0..m {
        let cols: Vec<Vec<Rational>> = basis.iter().map(|&b| vectors[b].clone()).collect();
        let a = Matrix::from_columns(&cols, len);
        match solve_affine(&a, &vectors[e]) {
            None => basis.push(e),
            Some(sol) => {
                for (k, coeff) in sol.particular.iter().enumerate() {
                    if !coeff.is_zero() {
                        let (x, y) = (find(&mut parent, e), find(&mut parent, basis[k]));
                        parent[x] = y;
                    }
                }
            }
        }
    }
    (0..m).filter(|&x| find(&mut parent, x) == x).count()
}
