//! Regions of a real arrangement, their boundedness, and facet queries.

mod faces;
mod lp;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::arrangement::{restrict_to_flat, Arrangement};
use crate::exactlin::{sign_of, Rational};

pub use faces::{facets_in, FaceCell};
pub use lp::{lp_optimize, Constraint, LinearProgram, LpStatus, Relation, Sense};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("witness does not satisfy sign vector {signs}")]
    RegionMismatch { signs: String },
    #[error("hyperplane {} contains the cell's flat", .index + 1)]
    HyperplaneContainsFlat { index: usize },
    #[error("sign string {text:?} is invalid: {reason}")]
    BadSigns { text: String, reason: String },
    #[error("no region has sign vector {signs}")]
    NoSuchRegion { signs: String },
}

/// A connected component of the complement, by its strict sign vector.
#[derive(Debug, Clone)]
pub struct Region {
    signs: Vec<i8>,
    witness: Vec<Rational>,
    bounded: OnceLock<bool>,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs && self.witness == other.witness
    }
}

impl Eq for Region {}

impl Region {
    pub fn new(signs: Vec<i8>, witness: Vec<Rational>) -> Self {
        Region {
            signs,
            witness,
            bounded: OnceLock::new(),
        }
    }

    /// Entries are `1` or `-1`, in hyperplane order.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// A rational point strictly inside the region.
    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    /// The sign vector as a string over `+` and `-`.
    pub fn sign_string(&self) -> String {
        format_signs(&self.signs)
    }

    /// Cached [`is_bounded`].
    pub fn bounded(&self, arrangement: &Arrangement) -> Result<bool, RegionError> {
        if let Some(&b) = self.bounded.get() {
            return Ok(b);
        }
        let b = is_bounded(arrangement, self)?;
        Ok(*self.bounded.get_or_init(|| b))
    }
}

pub fn format_signs(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

/// Parses a string over `+` and `-` (a Unicode minus is accepted too).
pub fn parse_signs(text: &str, expected_len: usize) -> Result<Vec<i8>, RegionError> {
    let bad = |reason: String| RegionError::BadSigns {
        text: text.to_string(),
        reason,
    };
    let signs = text
        .trim()
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' | '\u{2212}' => Ok(-1),
            other => Err(bad(format!("unexpected character {other:?}"))),
        })
        .collect::<Result<Vec<i8>, _>>()?;
    if signs.len() != expected_len {
        return Err(bad(format!(
            "has {} signs, the arrangement has {expected_len} hyperplanes",
            signs.len()
        )));
    }
    Ok(signs)
}

/// Maximize `t` subject to `s_i f_i(x) >= t` over the given hyperplanes and `t <= 1`.
///
/// Returns a witness when the optimum is positive.
pub fn margin_witness(
    arrangement: &Arrangement,
    indices: &[usize],
    signs: &[i8],
) -> Option<Vec<Rational>> {
    let n = arrangement.dim();
    let mut constraints: Vec<Constraint> = indices
        .iter()
        .zip(signs)
        .map(|(&i, &s)| {
            let h = arrangement.hyperplane(i);
            let s = Rational::from_integer(s.into());
            let mut coeffs: Vec<Rational> = h.normal().iter().map(|a| a * &s).collect();
            coeffs.push(-Rational::one());
            Constraint::new(coeffs, Relation::Ge, -(h.offset() * &s))
        })
        .collect();
    let mut cap = vec![Rational::zero(); n + 1];
    cap[n] = Rational::one();
    constraints.push(Constraint::new(cap.clone(), Relation::Le, Rational::one()));
    let program = LinearProgram {
        dim: n + 1,
        objective: cap,
        sense: Sense::Maximize,
        constraints,
    };
    match lp_optimize(&program) {
        LpStatus::Optimal { value, mut point } if value.is_positive() => {
            point.pop();
            Some(point)
        }
        LpStatus::Optimal { .. } => None,
        other => panic!("margin program is feasible and bounded, got {other:?}"),
    }
}

/// All regions, sorted by sign vector, built by inserting hyperplanes one at
/// a time and splitting each cell where the new hyperplane cuts it.
///
/// Panics if the count disagrees with `(-1)^n chi(-1)`.
pub fn enumerate_regions(arrangement: &Arrangement) -> Vec<Region> {
    let n = arrangement.dim();
    let mut cells: Vec<(Vec<i8>, Vec<Rational>)> = vec![(Vec::new(), vec![Rational::zero(); n])];
    for k in 0..arrangement.len() {
        let indices: Vec<usize> = (0..=k).collect();
        let h = arrangement.hyperplane(k);
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (signs, witness) in cells {
            let here = sign_of(&h.eval(&witness));
            for s in [1i8, -1] {
                let mut child = signs.clone();
                child.push(s);
                if here == s {
                    next.push((child, witness.clone()));
                } else if let Some(w) = margin_witness(arrangement, &indices, &child) {
                    next.push((child, w));
                }
            }
        }
        cells = next;
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let expected = expected_region_count(arrangement);
    assert_eq!(
        cells.len() as i64,
        expected,
        "region count differs from (-1)^n chi(-1)"
    );
    cells
        .into_iter()
        .map(|(s, w)| Region::new(s, w))
        .collect()
}

/// `(-1)^n chi(-1)`.
pub fn expected_region_count(arrangement: &Arrangement) -> i64 {
    let v = arrangement.charpoly().eval(&-Rational::one());
    let v = if arrangement.dim() % 2 == 0 { v } else { -v };
    i64::try_from(v.to_integer()).expect("small")
}

/// Every sign vector in `{+,-}^m` tested directly with the margin program.
pub fn sweep_regions(arrangement: &Arrangement) -> Vec<Region> {
    let m = arrangement.len();
    let indices: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << m) {
        let signs: Vec<i8> = (0..m)
            .map(|i| if mask >> (m - 1 - i) & 1 == 1 { -1 } else { 1 })
            .collect();
        if let Some(w) = margin_witness(arrangement, &indices, &signs) {
            out.push(Region::new(signs, w));
        }
    }
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    out
}

fn check_witness(arrangement: &Arrangement, region: &Region) -> Result<(), RegionError> {
    let ok = region.signs.len() == arrangement.len()
        && arrangement
            .signs_at(&region.witness)
            .iter()
            .zip(&region.signs)
            .all(|(a, b)| a == b);
    if ok {
        Ok(())
    } else {
        Err(RegionError::RegionMismatch {
            signs: region.sign_string(),
        })
    }
}

/// Whether the recession cone `{d : s_i a_i . d >= 0}` is trivial, decided by
/// maximizing and minimizing each coordinate of `d` over the cone cut by the unit box.
pub fn is_bounded(arrangement: &Arrangement, region: &Region) -> Result<bool, RegionError> {
    check_witness(arrangement, region)?;
    let n = arrangement.dim();
    let mut constraints: Vec<Constraint> = arrangement
        .hyperplanes()
        .iter()
        .zip(&region.signs)
        .map(|(h, &s)| {
            let s = Rational::from_integer(s.into());
            Constraint::new(
                h.normal().iter().map(|a| a * &s).collect(),
                Relation::Ge,
                Rational::zero(),
            )
        })
        .collect();
    for k in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        constraints.push(Constraint::new(e.clone(), Relation::Le, Rational::one()));
        constraints.push(Constraint::new(e, Relation::Ge, -Rational::one()));
    }
    for k in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        for sense in [Sense::Maximize, Sense::Minimize] {
            let program = LinearProgram {
                dim: n,
                objective: e.clone(),
                sense,
                constraints: constraints.clone(),
            };
            match lp_optimize(&program) {
                LpStatus::Optimal { value, .. } if value.is_zero() => {}
                LpStatus::Optimal { .. } => return Ok(false),
                other => panic!("recession program is feasible and boxed, got {other:?}"),
            }
        }
    }
    Ok(true)
}

/// Boundedness decided the other way: every coordinate attains its maximum
/// and minimum over the closed region.
pub fn is_bounded_by_extrema(arrangement: &Arrangement, region: &Region) -> bool {
    let n = arrangement.dim();
    let constraints: Vec<Constraint> = arrangement
        .hyperplanes()
        .iter()
        .zip(&region.signs)
        .map(|(h, &s)| {
            let s = Rational::from_integer(s.into());
            Constraint::new(
                h.normal().iter().map(|a| a * &s).collect(),
                Relation::Ge,
                -(h.offset() * &s),
            )
        })
        .collect();
    (0..n).all(|k| {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        [Sense::Maximize, Sense::Minimize].into_iter().all(|sense| {
            lp_optimize(&LinearProgram {
                dim: n,
                objective: e.clone(),
                sense,
                constraints: constraints.clone(),
            })
            .is_optimal()
        })
    })
}

/// Regions induced on a flat, as embedded witnesses with their signs on
/// the parent arrangement.
#[derive(Debug)]
pub(crate) struct Induced {
    pub cells: Vec<(Vec<Rational>, Vec<i8>)>,
}

/// Regions of an arrangement plus cached regions of its restrictions to flats.
#[derive(Debug)]
pub struct RegionComplex {
    arrangement: Arrangement,
    regions: OnceLock<Vec<Region>>,
    induced: Mutex<HashMap<Vec<usize>, Arc<Induced>>>,
}

impl RegionComplex {
    pub fn new(arrangement: &Arrangement) -> Self {
        RegionComplex {
            arrangement: arrangement.clone(),
            regions: OnceLock::new(),
            induced: Mutex::new(HashMap::new()),
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn regions(&self) -> &[Region] {
        self.regions.get_or_init(|| enumerate_regions(&self.arrangement))
    }

    pub fn bounded_regions(&self) -> Vec<&Region> {
        self.regions()
            .iter()
            .filter(|r| r.bounded(&self.arrangement).expect("enumerated witnesses are valid"))
            .collect()
    }

    pub fn find(&self, signs: &[i8]) -> Result<&Region, RegionError> {
        self.regions()
            .binary_search_by(|r| r.signs.as_slice().cmp(signs))
            .map(|i| &self.regions()[i])
            .map_err(|_| RegionError::NoSuchRegion {
                signs: format_signs(signs),
            })
    }

    /// Regions of the arrangement induced on the flat with this support.
    pub(crate) fn induced(&self, support: &[usize]) -> Arc<Induced> {
        if let Some(hit) = self.induced.lock().unwrap().get(support) {
            return hit.clone();
        }
        let flat = self
            .arrangement
            .poset()
            .find(support)
            .expect("support of a flat");
        let restriction = restrict_to_flat(&self.arrangement, flat);
        let cells = enumerate_regions(&restriction.arrangement)
            .iter()
            .map(|r| {
                let p = restriction.flat.embed(r.witness());
                let signs = self.arrangement.signs_at(&p);
                (p, signs)
            })
            .collect();
        let entry = Arc::new(Induced { cells });
        self.induced
            .lock()
            .unwrap()
            .insert(support.to_vec(), entry.clone());
        entry
    }
}
