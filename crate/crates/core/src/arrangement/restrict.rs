use std::collections::HashMap;

use num_traits::Zero;

use super::{Arrangement, ArrangementError, Flat, Hyperplane};
use crate::exactlin::{dot, sign_of, Rational};

/// An arrangement induced on a flat, in the flat's own coordinates `y`
/// (ambient point `flat.point + sum y_k flat.directions_k`).
#[derive(Debug, Clone)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// For each trace, the ambient hyperplanes cutting it out, ascending.
    pub parents: Vec<Vec<usize>>,
    pub flat: Flat,
    /// Ambient hyperplanes parallel to the flat (but not containing it), with
    /// the constant sign they take on it.
    pub parallel: Vec<(usize, i8)>,
}

impl Restriction {
    /// The trace of ambient hyperplane `i`, if it cuts the flat properly.
    pub fn trace_of(&self, i: usize) -> Option<usize> {
        self.parents.iter().position(|p| p.contains(&i))
    }
}

/// The distinct traces on `flat` of the hyperplanes not containing it.
///
/// Traces are ordered by their smallest parent and labelled `"p1|p2|..."`
/// with the parents' labels.
pub fn restrict_to_flat(arrangement: &Arrangement, flat: &Flat) -> Restriction {
    let mut traces: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut parents: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashMap<(Vec<Rational>, Rational), usize> = HashMap::new();
    let mut parallel = Vec::new();
    for (i, h) in arrangement.hyperplanes().iter().enumerate() {
        if flat.contains_index(i) {
            continue;
        }
        let normal: Vec<Rational> = flat.directions().iter().map(|d| dot(h.normal(), d)).collect();
        let offset = h.eval(flat.point());
        let Some(lead) = normal.iter().find(|a| !a.is_zero()).cloned() else {
            parallel.push((i, sign_of(&offset)));
            continue;
        };
        let key = (
            normal.iter().map(|a| a / &lead).collect::<Vec<_>>(),
            offset / &lead,
        );
        match seen.get(&key) {
            Some(&t) => parents[t].push(i),
            None => {
                seen.insert(key.clone(), traces.len());
                traces.push(key);
                parents.push(vec![i]);
            }
        }
    }
    let hyperplanes = traces
        .into_iter()
        .zip(&parents)
        .map(|((normal, offset), ps)| {
            let label: Vec<&str> = ps.iter().map(|&p| arrangement.hyperplane(p).label()).collect();
            Hyperplane::new(normal, offset, label.join("|")).expect("trace normal is nonzero")
        })
        .collect();
    let induced = Arrangement::new(flat.dim(), hyperplanes).expect("traces are distinct");
    Restriction {
        arrangement: induced,
        parents,
        flat: flat.clone(),
        parallel,
    }
}

/// Deletion `A \ {L_i}` and restriction `A ∩ L_i`.
pub fn deletion_restriction(
    arrangement: &Arrangement,
    i: usize,
) -> Result<(Arrangement, Restriction), ArrangementError> {
    arrangement.check_index(i)?;
    let kept: Vec<usize> = (0..arrangement.len()).filter(|&j| j != i).collect();
    let deletion = arrangement.subarrangement(&kept);
    let line = arrangement
        .flat_through(&[i])
        .expect("a hyperplane is a flat")
        .clone();
    Ok((deletion, restrict_to_flat(arrangement, &line)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_restriction_to_diagonal() {
        let a = Arrangement::from_integers(
            2,
            &[
                (vec![1, 0], 0),
                (vec![1, 0], -1),
                (vec![0, 1], 0),
                (vec![0, 1], -1),
                (vec![1, -1], 0),
            ],
        )
        .unwrap();
        let (del, res) = deletion_restriction(&a, 4).unwrap();
        assert_eq!(del.len(), 4);
        assert_eq!(res.arrangement.dim(), 1);
        assert_eq!(res.parents, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(res.arrangement.labels(), vec!["H1|H3", "H2|H4"]);
        assert!(res.parallel.is_empty());
        assert!(matches!(
            deletion_restriction(&a, 5),
            Err(ArrangementError::IndexOutOfRange { index: 5, len: 5 })
        ));
    }

    #[test]
    fn parallel_hyperplanes_are_recorded() {
        let a = Arrangement::from_integers(2, &[(vec![1, 0], 0), (vec![1, 0], -1), (vec![0, 1], 0)])
            .unwrap();
        let (_, res) = deletion_restriction(&a, 0).unwrap();
        assert_eq!(res.parallel, vec![(1, -1)]);
        assert_eq!(res.parents, vec![vec![2]]);
    }
}
