//! One line per acceptance criterion. All comparisons are exact
//! (tolerance 0); the suite budget is 300 s.

use std::path::PathBuf;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use hyperarr::arrangement::{parse_arrangement, Arrangement};
use hyperarr::canonical::{canonical_form, to_rational_form};
use hyperarr::infinity::{infinity_strata, verify_residue_boundary, AtInfinity};
use hyperarr::oscomplex::{OSElement, OsComplex};
use hyperarr::regions::RegionComplex;
use hyperarr::{QMatrix, Rational};
use hyperarr_cli::{run, Command, Format, Verb, EXIT_INPUT, EXIT_OK};

const SUITE_BUDGET: Duration = Duration::from_secs(300);
const FUZZ_COUNT: usize = 50;
const FUZZ_SEED: u64 = 20240611;

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn fixture(name: &str) -> Arrangement {
    parse_arrangement(&std::fs::read_to_string(path(name)).unwrap()).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn in_span(c: &OsComplex, basis: &[OSElement], x: &OSElement) -> bool {
    let width = c.basis(x.degree()).len();
    let rows: Vec<Vec<Rational>> = basis.iter().map(|b| c.to_vector(b)).collect();
    let mut with = rows.clone();
    with.push(c.to_vector(x));
    QMatrix::from_rows(rows, width).rank() == QMatrix::from_rows(with, width).rank()
}

type Verdict = Result<String, String>;

fn check(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn criterion_1() -> Verdict {
    let a = fixture("FIX-A5.json");
    let c = OsComplex::new(&a).map_err(|e| e.to_string())?;
    let kernel = c.finite_distance_basis().map_err(|e| e.to_string())?;
    check(kernel.len() == 2, "dim ker != 2")?;
    for g in ["1 * e[1^4] - 1 * e[1^5] + 1 * e[4^5]", "1 * e[2^3] - 1 * e[2^5] + 1 * e[3^5]"] {
        let x = c.parse_element(g, 2).map_err(|e| e.to_string())?;
        check(in_span(&c, &kernel, &x), &format!("{g} not in kernel"))?;
    }
    check(a.charpoly().to_string() == "t^2 - 5*t + 6", "charpoly")?;
    let rc = RegionComplex::new(&a);
    check(rc.regions().len() == 12, "region count")?;
    check(rc.bounded_regions().len() == 2, "bounded count")?;
    Ok("dim ker = 2, generators in kernel, chi(t) = t^2 - 5*t + 6, 12 regions, 2 bounded".into())
}

fn criterion_2() -> Verdict {
    let c = OsComplex::new(&fixture("FIX-A5.json")).map_err(|e| e.to_string())?;
    let at = AtInfinity::new(&c).map_err(|e| e.to_string())?;
    let names: Vec<String> = at.classes().iter().map(|k| k.name()).collect();
    check(names == ["P[1,2]", "P[3,4]", "P[5]"], "direction order")?;
    let table = [
        ("1 * e[1^3]", ["-1 * e[1]", "1 * e[3]", "0"]),
        ("1 * e[1^4]", ["-1 * e[1]", "1 * e[4]", "0"]),
        ("1 * e[1^5]", ["-1 * e[1]", "0", "1 * e[5]"]),
        ("1 * e[2^3]", ["-1 * e[2]", "1 * e[3]", "0"]),
        ("1 * e[2^4]", ["-1 * e[2]", "1 * e[4]", "0"]),
        ("1 * e[2^5]", ["-1 * e[2]", "0", "1 * e[5]"]),
        ("1 * e[3^5]", ["0", "-1 * e[3]", "1 * e[5]"]),
        ("1 * e[4^5]", ["0", "-1 * e[4]", "1 * e[5]"]),
    ];
    for (input, expected) in table {
        let x = c.parse_element(input, 2).map_err(|e| e.to_string())?;
        let res = at.residue(&x).map_err(|e| e.to_string())?;
        let got: Vec<String> = res.iter().enumerate().map(|(k, r)| at.classes()[k].lifted_text(r)).collect();
        check(got == expected, &format!("Res {input} = {got:?}"))?;
    }
    let report = verify_residue_boundary(&c).map_err(|e| e.to_string())?;
    check(report.kernel_equality_ok && report.map_equality_ok, "kernel equality")?;
    Ok(format!("{} residue values match, ker Res = ker d (dim {})", table.len(), report.kernel_dim))
}

fn criterion_3() -> Verdict {
    let a = fixture("FIX-B5.json");
    let c = OsComplex::new(&a).map_err(|e| e.to_string())?;
    check(c.finite_distance_basis().map_err(|e| e.to_string())?.is_empty(), "kernel not zero")?;
    let strata = infinity_strata(&a);
    check(strata.g0.len() == 4, "G0 size")?;
    let at = AtInfinity::new(&c).map_err(|e| e.to_string())?;
    let x = c.parse_element("1 * e[1^3^4]", 3).map_err(|e| e.to_string())?;
    let res = at.residue(&x).map_err(|e| e.to_string())?;
    let got: Vec<String> = res.iter().enumerate().map(|(k, r)| at.classes()[k].lifted_text(r)).collect();
    // classes in order P[1,2,3], P[1,2,4], P[1,2,5], P[3,4,5]
    check(got == ["-1 * e[1^3]", "1 * e[1^4]", "0", "-1 * e[3^4]"], &format!("Res = {got:?}"))?;
    Ok("ker = 0, |G0| = 4, Res(e1^e3^e4) = (-f1^f3, f1^f4, 0, -f3^f4)".into())
}

fn criterion_4() -> Verdict {
    let mut seen = Vec::new();
    let mut signs_agree = 0;
    for (name, y) in [
        ("FIX-COSMO-Y1.json", q(1)),
        ("FIX-COSMO-Y5.json", q(5)),
        ("FIX-COSMO-Y7_2.json", Rational::new(7.into(), 2.into())),
    ] {
        let a = fixture(name);
        let c = OsComplex::new(&a).map_err(|e| e.to_string())?;
        let rc = RegionComplex::new(&a);
        let bounded = rc.bounded_regions();
        check(bounded.len() == 1, "unique bounded region")?;
        let form = canonical_form(&c, &rc, bounded[0]).map_err(|e| e.to_string())?;
        let g = c
            .parse_element("1 * e[1^2] - 1 * e[1^3] + 1 * e[2^3]", 2)
            .map_err(|e| e.to_string())?;
        check(form == g || form == g.neg(), &format!("{name}: form {}", form.to_text()))?;
        if form == g {
            signs_agree += 1;
        }
        let rf = to_rational_form(&a, &g).map_err(|e| e.to_string())?;
        let expected = -q(2) * &y;
        check(
            rf.numerator.terms().count() == 1 && rf.numerator.coeff(&[0, 0]) == expected,
            &format!("{name}: numerator {}", rf.numerator),
        )?;
        check(rf.denominator == [0, 1, 2], "denominator f1 f2 f3")?;
        seen.push(rf.to_string());
    }
    Ok(format!(
        "forms = +-(e1^e2 - e1^e3 + e2^e3), sign + in {signs_agree}/3; {}",
        seen.join("; ")
    ))
}

fn criterion_5() -> Verdict {
    let required = [
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
    ];
    let start = Instant::now();
    let mut total = 0;
    let fixtures = ["FIX-A5.json", "FIX-B5.json", "FIX-GEN3.json", "FIX-COSMO-Y5.json"];
    for (k, name) in fixtures.iter().enumerate() {
        let fuzz = (k == 0).then_some(FUZZ_COUNT);
        let command = Command {
            verb: Verb::Verify {
                input: path(name),
                fuzz,
                seed: fuzz.map(|_| FUZZ_SEED),
            },
            format: Format::Json,
            inject_fault: false,
        };
        let (report, code) = run(&command);
        let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        check(code == EXIT_OK && failed.is_empty(), &format!("{name}: {failed:?}"))?;
        for r in required {
            check(report.checks.iter().any(|c| c.name == r), &format!("{name}: {r} did not run"))?;
        }
        total += report.checks.len();
    }
    let elapsed = start.elapsed();
    check(elapsed < SUITE_BUDGET, &format!("suite took {elapsed:?}"))?;
    Ok(format!(
        "{total} checks on {} fixtures + {FUZZ_COUNT} random (seed {FUZZ_SEED}) in {:.1}s",
        fixtures.len(),
        elapsed.as_secs_f64()
    ))
}

fn criterion_6() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_hyperarr");
    let cases = [
        ("info", "BAD-duplicate.json", "DuplicateHyperplane"),
        ("kernel", "BAD-nonessential.json", "ExpectedEssential"),
        ("info", "BAD-rational.json", "MalformedRational"),
    ];
    for (verb, file, kind) in cases {
        let out = Process::new(bin)
            .args([verb, path(file).to_str().unwrap(), "--format", "json"])
            .output()
            .map_err(|e| e.to_string())?;
        check(out.status.code() == Some(EXIT_INPUT), &format!("{file}: exit {:?}", out.status.code()))?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        check(stderr.contains(&format!("\"kind\": \"{kind}\"")), &format!("{file}: {stderr}"))?;
    }
    Ok("duplicate, non-essential kernel, malformed rational: specified errors, exit 2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 6] = [
        ("1 A5 kernel, charpoly, regions", criterion_1),
        ("2 A5 residue table", criterion_2),
        ("3 B5 kernel, G0, residues", criterion_3),
        ("4 two-site correlator forms", criterion_4),
        ("5 property suite", criterion_5),
        ("6 negative paths", criterion_6),
    ];
    let mut failures = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS (exact) {detail}"),
            Err(detail) => {
                failures += 1;
                println!("criterion {name}: FAIL (exact) {detail}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
