use crate::arrangement::Flat;
use crate::exactlin::Rational;

use super::{Region, RegionComplex, RegionError};

/// A relatively open cell of some flat: the flat, its signs on the
/// hyperplanes not containing the flat, and a point inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCell {
    pub flat: Flat,
    /// `None` exactly for the hyperplanes containing the flat.
    pub signs: Vec<Option<i8>>,
    pub witness: Vec<Rational>,
}

impl FaceCell {
    pub fn from_region(complex: &RegionComplex, region: &Region) -> Self {
        FaceCell {
            flat: complex.arrangement().poset().ambient().clone(),
            signs: region.signs().iter().map(|&s| Some(s)).collect(),
            witness: region.witness().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.flat.dim()
    }
}

/// The facet of `cell` on hyperplane `j`, as a list with at most one entry.
///
/// Candidates are the regions induced on `cell.flat ∩ L_j`; one is kept when
/// no hyperplane takes the opposite sign to `cell` on it. A convex cell meets
/// a supporting hyperplane in at most one facet.
pub fn facets_in(
    complex: &RegionComplex,
    cell: &FaceCell,
    j: usize,
) -> Result<Vec<FaceCell>, RegionError> {
    let arrangement = complex.arrangement();
    if cell.flat.contains_index(j) {
        return Err(RegionError::HyperplaneContainsFlat { index: j });
    }
    let mut cut = cell.flat.support().to_vec();
    cut.push(j);
    let Some(target) = arrangement.flat_through(&cut) else {
        return Ok(Vec::new());
    };
    if target.codim() != cell.flat.codim() + 1 {
        return Ok(Vec::new());
    }
    let induced = complex.induced(target.support());
    let mut found = Vec::new();
    for (p, values) in &induced.cells {
        let compatible = cell
            .signs
            .iter()
            .zip(values)
            .all(|(s, &v)| match s {
                Some(s) => v == 0 || v == *s,
                None => true,
            });
        if compatible {
            found.push(FaceCell {
                flat: target.clone(),
                signs: values
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (!target.contains_index(i)).then_some(v))
                    .collect(),
                witness: p.clone(),
            });
        }
    }
    assert!(found.len() <= 1, "a convex cell has at most one facet per hyperplane");
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn triangle_facets() {
        let a = Arrangement::from_integers(2, &[(vec![1, 0], 0), (vec![0, 1], 0), (vec![1, 1], -1)])
            .unwrap();
        let rc = RegionComplex::new(&a);
        let tri = FaceCell::from_region(&rc, rc.find(&[1, 1, -1]).unwrap());
        let f = facets_in(&rc, &tri, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].flat.support(), &[2]);
        assert_eq!(f[0].signs, vec![Some(1), Some(1), None]);
        // on the open segment from (0,1) to (1,0)
        let w = &f[0].witness;
        assert!(w[0] > q(0) && w[1] > q(0) && &w[0] + &w[1] == q(1));
        // down to the vertex (0,0) through L2
        let edge = facets_in(&rc, &tri, 0).unwrap().remove(0);
        let vertex = facets_in(&rc, &edge, 1).unwrap();
        assert_eq!(vertex[0].witness, vec![q(0), q(0)]);
        assert!(matches!(
            facets_in(&rc, &edge, 0),
            Err(RegionError::HyperplaneContainsFlat { index: 0 })
        ));
        let open = FaceCell::from_region(&rc, rc.find(&[1, 1, 1]).unwrap());
        assert_eq!(facets_in(&rc, &open, 0).unwrap().len(), 1);
    }
}
