use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use num_traits::Zero;

use super::Arrangement;
use crate::exactlin::{dot, solve_affine, Matrix, Rational, UniPoly};

/// A nonempty intersection of hyperplanes.
///
/// `point` and `directions` come from eliminating the support system, so two
/// flats describing the same subspace compare equal field by field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    support: Vec<usize>,
    codim: usize,
    point: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
    mobius: i64,
}

impl Flat {
    /// Indices of all hyperplanes containing the flat, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    pub fn mobius(&self) -> i64 {
        self.mobius
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    /// The point `point + sum y_k directions_k`.
    pub fn embed(&self, y: &[Rational]) -> Vec<Rational> {
        assert_eq!(y.len(), self.dim(), "flat coordinates have wrong length");
        let mut x = self.point.clone();
        for (d, c) in self.directions.iter().zip(y) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += c * di;
            }
        }
        x
    }

    /// Inverse of [`Flat::embed`]; `None` if `x` is off the flat.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.point.len();
        let basis = Matrix::from_columns(&self.directions, n);
        let rhs: Vec<Rational> = x.iter().zip(&self.point).map(|(a, b)| a - b).collect();
        solve_affine(&basis, &rhs).map(|s| s.particular)
    }

    /// Coordinates of a direction vector in the flat's basis; `None` if not parallel to it.
    pub fn direction_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let basis = Matrix::from_columns(&self.directions, v.len());
        solve_affine(&basis, v).map(|s| s.particular)
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.coordinates(x).is_some()
    }
}

/// Solves the system of the hyperplanes in `support`.
pub(crate) fn solve_support(
    arrangement: &Arrangement,
    support: &[usize],
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = arrangement.dim();
    let rows: Vec<Vec<Rational>> = support
        .iter()
        .map(|&i| arrangement.hyperplane(i).normal().to_vec())
        .collect();
    let rhs: Vec<Rational> = support
        .iter()
        .map(|&i| -arrangement.hyperplane(i).offset().clone())
        .collect();
    let sol = solve_affine(&Matrix::from_rows(rows, n), &rhs)?;
    Some((sol.particular, sol.directions))
}

/// All hyperplanes vanishing identically on `point + span(directions)`.
pub(crate) fn closure(
    arrangement: &Arrangement,
    point: &[Rational],
    directions: &[Vec<Rational>],
) -> Vec<usize> {
    (0..arrangement.len())
        .filter(|&i| {
            let h = arrangement.hyperplane(i);
            h.eval(point).is_zero() && directions.iter().all(|d| dot(h.normal(), d).is_zero())
        })
        .collect()
}

/// Flats of an arrangement grouped by codimension, ordered by support within
/// each codimension, with covering relations and Mobius values.
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    dim: usize,
    flats: Vec<Flat>,
    ranges: Vec<Range<usize>>,
    index: HashMap<Vec<usize>, usize>,
    covers: Vec<(usize, usize)>,
}

impl IntersectionPoset {
    /// Breadth-first: each flat of codim `k` is cut by every hyperplane not containing it.
    pub(crate) fn build(arrangement: &Arrangement) -> Self {
        let n = arrangement.dim();
        let (point, directions) = solve_support(arrangement, &[]).expect("ambient space");
        let mut flats = vec![Flat {
            support: Vec::new(),
            codim: 0,
            point,
            directions,
            mobius: 1,
        }];
        let mut ranges = vec![0..1];
        let mut cover_keys: Vec<(usize, Vec<usize>)> = Vec::new();

        for codim in 0..n {
            let mut next: BTreeMap<Vec<usize>, Flat> = BTreeMap::new();
            for parent in ranges[codim].clone() {
                let mut child_supports: Vec<Vec<usize>> = Vec::new();
                for j in 0..arrangement.len() {
                    if flats[parent].contains_index(j)
                        || child_supports.iter().any(|s| s.binary_search(&j).is_ok())
                    {
                        continue;
                    }
                    let mut support = flats[parent].support.clone();
                    support.push(j);
                    support.sort_unstable();
                    let Some((point, directions)) = solve_support(arrangement, &support) else {
                        continue;
                    };
                    let support = closure(arrangement, &point, &directions);
                    cover_keys.push((parent, support.clone()));
                    child_supports.push(support.clone());
                    next.entry(support.clone()).or_insert(Flat {
                        support,
                        codim: codim + 1,
                        point,
                        directions,
                        mobius: 0,
                    });
                }
            }
            if next.is_empty() {
                break;
            }
            let start = flats.len();
            flats.extend(next.into_values());
            ranges.push(start..flats.len());
        }

        let index: HashMap<Vec<usize>, usize> = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.support.clone(), i))
            .collect();
        let mut covers: Vec<(usize, usize)> = cover_keys
            .into_iter()
            .map(|(p, key)| (p, index[&key]))
            .collect();
        covers.sort_unstable();
        covers.dedup();

        for i in 1..flats.len() {
            let below: i64 = flats[..i]
                .iter()
                .filter(|g| g.codim < flats[i].codim && is_subset(&g.support, &flats[i].support))
                .map(|g| g.mobius)
                .sum();
            flats[i].mobius = -below;
        }

        IntersectionPoset {
            dim: n,
            flats,
            ranges,
            index,
            covers,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn ambient(&self) -> &Flat {
        &self.flats[0]
    }

    /// Largest codimension reached.
    pub fn rank(&self) -> usize {
        self.ranges.len() - 1
    }

    /// Flats of codimension `k`, sorted by support; empty beyond the rank.
    pub fn flats_of_codim(&self, k: usize) -> &[Flat] {
        match self.ranges.get(k) {
            Some(r) => &self.flats[r.clone()],
            None => &[],
        }
    }

    /// Position of the flat with this (closed) support.
    pub fn index_of(&self, support: &[usize]) -> Option<usize> {
        self.index.get(support).copied()
    }

    pub fn find(&self, support: &[usize]) -> Option<&Flat> {
        self.index_of(support).map(|i| &self.flats[i])
    }

    /// Covering pairs `(upper, lower)` as positions into [`IntersectionPoset::flats`],
    /// where `lower` has codimension one more than `upper`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn mobius_values(&self) -> Vec<i64> {
        self.flats.iter().map(|f| f.mobius).collect()
    }

    /// `sum_F mu(F) t^dim(F)`.
    pub fn charpoly(&self) -> UniPoly<Rational> {
        let mut coeffs = vec![Rational::zero(); self.dim + 1];
        for f in &self.flats {
            coeffs[f.dim()] += Rational::from_integer(f.mobius.into());
        }
        UniPoly::new(coeffs)
    }

    /// Position of the smallest flat containing the intersection of `indices`,
    /// or `None` if the intersection is empty.
    pub(crate) fn position_through(
        &self,
        arrangement: &Arrangement,
        indices: &[usize],
    ) -> Option<usize> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(i) = self.index_of(&sorted) {
            return Some(i);
        }
        let (point, directions) = solve_support(arrangement, &sorted)?;
        self.index_of(&closure(arrangement, &point, &directions))
    }
}

impl Arrangement {
    /// The intersection of the given hyperplanes as a flat of the poset.
    pub fn flat_through(&self, indices: &[usize]) -> Option<&Flat> {
        self.poset()
            .position_through(self, indices)
            .map(|i| &self.poset().flats()[i])
    }

    /// Position in the poset of the intersection of the given hyperplanes.
    pub fn flat_position(&self, indices: &[usize]) -> Option<usize> {
        self.poset().position_through(self, indices)
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}
