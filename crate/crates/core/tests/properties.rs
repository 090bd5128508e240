mod common;

use common::{eval_int_poly, q, whitney_charpoly};
use hyperarr::arrangement::Arrangement;
use hyperarr::exactlin::{format_rational, parse_rational};
use hyperarr::infinity::{direction_classes, verify_residue_boundary};
use hyperarr::oscomplex::OsComplex;
use hyperarr::regions::RegionComplex;
use hyperarr::{QMatrix, Rational};
use proptest::prelude::*;

type Data = (usize, Vec<(Vec<i64>, i64)>);

fn arrangement_data(max_dim: usize, max_len: usize) -> impl Strategy<Value = Data> {
    (1..=max_dim).prop_flat_map(move |n| {
        let plane = (prop::collection::vec(-3i64..=3, n), -3i64..=3);
        (Just(n), prop::collection::vec(plane, 1..=max_len))
    })
}

fn build((n, data): &Data) -> Option<Arrangement> {
    Arrangement::from_integers(*n, data).ok()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, c), r)
            .prop_map(move |rows| QMatrix::from_rows(rows.into_iter().map(|row| row.into_iter().map(q).collect()).collect(), c))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        if b != q(0) {
            prop_assert_eq!(&a / &b * &b, a.clone());
        }
        prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once.clone());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nullspace_is_kernel(m in matrix()) {
        let kernel = m.nullspace();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn charpoly_matches_whitney_formula(d in arrangement_data(3, 6)) {
        let Some(a) = build(&d) else { return Ok(()) };
        let oracle = whitney_charpoly(d.0, &d.1);
        for (k, c) in oracle.iter().enumerate() {
            prop_assert_eq!(a.charpoly().coeff(k), q(*c));
        }
    }

    #[test]
    fn boundary_squares_to_zero(d in arrangement_data(3, 6)) {
        let Some(a) = build(&d) else { return Ok(()) };
        let c = OsComplex::new(&a).unwrap();
        for k in 2..=c.dim() {
            let prod = c.boundary_matrix(k - 1).mul(c.boundary_matrix(k));
            prop_assert_eq!(prod.rank(), 0);
        }
    }

    #[test]
    fn translation_keeps_combinatorics(d in arrangement_data(3, 5), shift in prop::collection::vec(-5i64..=5, 3)) {
        let Some(a) = build(&d) else { return Ok(()) };
        let shift: Vec<Rational> = shift[..a.dim()].iter().map(|&s| q(s)).collect();
        let b = a.translated(&shift);
        prop_assert_eq!(a.charpoly(), b.charpoly());
        let key = |x: &Arrangement| direction_classes(x).into_iter().map(|c| (c.vector, c.members)).collect::<Vec<_>>();
        prop_assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn reordering_keeps_dimensions(d in arrangement_data(3, 6), seed in any::<u64>()) {
        let Some(a) = build(&d) else { return Ok(()) };
        let mut perm: Vec<usize> = (0..a.len()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = a.permuted(&perm);
        let (ca, cb) = (OsComplex::new(&a).unwrap(), OsComplex::new(&b).unwrap());
        for k in 0..=a.dim() {
            prop_assert_eq!(ca.basis(k).len(), cb.basis(k).len());
        }
        prop_assert_eq!(ca.homology_dims(), cb.homology_dims());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn region_counts_follow_whitney(d in arrangement_data(3, 5)) {
        let Some(a) = build(&d) else { return Ok(()) };
        let chi = whitney_charpoly(d.0, &d.1);
        let sign = if d.0 % 2 == 0 { 1 } else { -1 };
        let rc = RegionComplex::new(&a);
        prop_assert_eq!(rc.regions().len() as i64, sign * eval_int_poly(&chi, -1));
        if a.is_essential() {
            prop_assert_eq!(rc.bounded_regions().len() as i64, sign * eval_int_poly(&chi, 1));
        }
    }

    #[test]
    fn residues_equal_routed_boundary(d in arrangement_data(3, 6)) {
        let Some(a) = build(&d) else { return Ok(()) };
        if !a.is_essential() {
            return Ok(());
        }
        let c = OsComplex::new(&a).unwrap();
        let report = verify_residue_boundary(&c).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}
