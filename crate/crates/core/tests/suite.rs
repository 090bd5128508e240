mod common;

use common::fixture;
use hyperarr::arrangement::Arrangement;
use hyperarr::oscomplex::OsComplex;
use hyperarr::verify::{fuzz_arrangements, run_checks, verify_arrangement, Limits};

fn assert_all_pass(a: &Arrangement, what: &str) {
    let outcomes = verify_arrangement(a).unwrap();
    let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    assert!(failed.is_empty(), "{what}: {failed:#?}");
}

#[test]
fn fixtures_pass_every_check() {
    for name in [
        "FIX-A5.json",
        "FIX-B5.json",
        "FIX-BOOL2.json",
        "FIX-GEN3.json",
        "FIX-COSMO-Y1.json",
        "FIX-COSMO-Y5.json",
        "FIX-COSMO-Y7_2.json",
    ] {
        assert_all_pass(&fixture(name), name);
    }
}

#[test]
fn essential_fixtures_run_the_full_suite() {
    let names: Vec<String> = verify_arrangement(&fixture("FIX-A5.json"))
        .unwrap()
        .into_iter()
        .map(|o| o.name)
        .collect();
    for expected in [
        "boundary_squared_zero",
        "whitney_counts",
        "mobius_inversion",
        "charpoly_deletion_restriction",
        "homology_vanishes_below_top",
        "kernel_dim_equals_chi1",
        "bounded_regions_equal_kernel_dim",
        "region_count_equals_chi_minus1",
        "region_sweep_matches",
        "direction_decomposition",
        "residue_equals_routed_boundary",
        "canonical_forms_basis",
        "flag_antisymmetry",
    ] {
        assert!(names.iter().any(|n| n == expected), "missing {expected}");
    }
}

#[test]
fn non_essential_input_skips_kernel_checks() {
    let a = fixture("BAD-nonessential.json");
    let outcomes = verify_arrangement(&a).unwrap();
    assert!(outcomes.iter().all(|o| o.passed));
    assert!(!outcomes.iter().any(|o| o.name == "kernel_dim_equals_chi1"));
}

#[test]
fn corrupted_boundary_is_caught() {
    let mut c = OsComplex::new(&fixture("FIX-A5.json")).unwrap();
    c.corrupt_boundary_for_testing();
    let failed: Vec<String> = run_checks(&c, Limits::default())
        .into_iter()
        .filter(|o| !o.passed)
        .map(|o| o.name)
        .collect();
    assert!(failed.contains(&"boundary_squared_zero".to_string()), "{failed:?}");
}

#[test]
fn seeded_random_arrangements_pass() {
    for (k, a) in fuzz_arrangements(20240611, 12).iter().enumerate() {
        assert!(a.is_essential() && a.dim() <= 3 && a.len() <= 8);
        assert_all_pass(a, &format!("sample {k}: {}", hyperarr::arrangement::to_json_string(a)));
    }
}

#[test]
fn fuzz_is_reproducible() {
    assert_eq!(fuzz_arrangements(3, 5), fuzz_arrangements(3, 5));
    assert_ne!(fuzz_arrangements(3, 5), fuzz_arrangements(4, 5));
}
