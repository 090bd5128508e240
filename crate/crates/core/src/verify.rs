//! The invariant suite run by `verify`, and seeded random arrangements.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::{deletion_restriction, Arrangement};
use crate::canonical::{canonical_basis_check, canonical_form, iterated_boundary, to_rational_form};
use crate::exactlin::{Matrix, Rational};
use crate::infinity::{direction_classes, verify_residue_boundary, AtInfinity};
use crate::oscomplex::{OSElement, OsComplex, OsError};
use crate::regions::{
    enumerate_regions, expected_region_count, is_bounded_by_extrema, sweep_regions, RegionComplex,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Counterexample or summary.
    pub detail: String,
}

/// Size limits for the exhaustive checks.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub brute_poset: usize,
    pub region_sweep: usize,
    pub relation_subsets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_poset: 10,
            region_sweep: 10,
            relation_subsets: 8,
        }
    }
}

struct Suite {
    outcomes: Vec<CheckOutcome>,
}

impl Suite {
    fn record(&mut self, name: &str, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.outcomes.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn ensure(cond: bool, ok: impl Into<String>, fail: impl FnOnce() -> String) -> Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail())
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn os_err(e: OsError) -> String {
    e.to_string()
}

/// Runs every check that applies to the complex's arrangement.
pub fn run_checks(complex: &OsComplex, limits: Limits) -> Vec<CheckOutcome> {
    let a = complex.arrangement();
    let mut s = Suite {
        outcomes: Vec::new(),
    };
    s.record("poset_brute_force", check_poset_brute_force(a, limits));
    s.record("flats_canonical", check_flats_canonical(a));
    s.record("mobius_inversion", check_mobius_inversion(a));
    s.record("charpoly_deletion_restriction", check_deletion_restriction(a));
    s.record("whitney_counts", check_whitney(complex));
    s.record("boundary_squared_zero", check_boundary_squared(complex));
    s.record("straightening_kills_relations", check_relations(complex, limits));
    s.record("homotopy_on_localizations", check_homotopy(a));
    s.record("order_invariance", check_order_invariance(complex));

    let rc = RegionComplex::new(a);
    s.record("region_count_equals_chi_minus1", check_region_count(a));
    s.record("witnesses_strict", check_witnesses(&rc));
    s.record("bounded_independent_check", check_bounded_independent(&rc));
    if a.len() <= limits.region_sweep {
        s.record("region_sweep_matches", check_sweep(&rc));
    }
    s.record("directions_translation_invariant", check_translation(a));

    if !a.is_essential() {
        return s.outcomes;
    }
    s.record("homology_vanishes_below_top", check_homology(complex));
    s.record("kernel_dim_equals_chi1", check_kernel_dim(complex));
    s.record("bounded_regions_equal_kernel_dim", check_bounded_count(complex, &rc));
    s.record("kernel_additivity", check_kernel_additivity(complex));
    match verify_residue_boundary(complex) {
        Ok(r) => {
            s.record(
                "direction_decomposition",
                ensure(r.decomposition_ok, format!("{} classes", r.directions.len()), || {
                    "quotient top degrees do not add up to A_{n-1}".into()
                }),
            );
            s.record(
                "residue_equals_routed_boundary",
                ensure(r.map_equality_ok, "all top monomials", || {
                    "residue matrix differs from transported boundary".into()
                }),
            );
            s.record(
                "residue_kernel_equals_boundary_kernel",
                ensure(r.kernel_equality_ok, format!("kernel dim {}", r.kernel_dim), || {
                    "kernels differ".into()
                }),
            );
        }
        Err(e) => s.record("direction_decomposition", Err(e.to_string())),
    }
    s.record("canonical_forms_basis", check_canonical_basis(complex, &rc));
    s.record("canonical_residues_vanish", check_canonical_residues(complex, &rc));
    s.record("canonical_order_invariance", check_canonical_order(complex, &rc));
    s.record("flag_antisymmetry", check_flag_antisymmetry(complex, &rc));
    s.record("rational_form_injective", check_rational_injective(complex));
    s.outcomes
}

/// Convenience: builds the complex and runs the suite with default limits.
pub fn verify_arrangement(arrangement: &Arrangement) -> Result<Vec<CheckOutcome>, OsError> {
    let complex = OsComplex::new(arrangement)?;
    Ok(run_checks(&complex, Limits::default()))
}

fn check_poset_brute_force(a: &Arrangement, limits: Limits) -> Result<String, String> {
    let m = a.len();
    if m > limits.brute_poset {
        return Ok(format!("skipped for m = {m}"));
    }
    let mut brute: BTreeSet<Vec<usize>> = BTreeSet::new();
    for mask in 0u64..(1 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| a.hyperplane(i).normal().to_vec()).collect();
        let rhs: Vec<Rational> = subset.iter().map(|&i| -a.hyperplane(i).offset().clone()).collect();
        let Some(sol) = crate::exactlin::solve_affine(&Matrix::from_rows(rows, a.dim()), &rhs) else {
            continue;
        };
        let support: Vec<usize> = (0..m)
            .filter(|&i| {
                let h = a.hyperplane(i);
                h.eval(&sol.particular).is_zero()
                    && sol
                        .directions
                        .iter()
                        .all(|d| crate::exactlin::dot(h.normal(), d).is_zero())
            })
            .collect();
        brute.insert(support);
    }
    let poset: BTreeSet<Vec<usize>> = a.poset().flats().iter().map(|f| f.support().to_vec()).collect();
    ensure(brute == poset, format!("{} flats", poset.len()), || {
        format!(
            "brute force only: {:?}; poset only: {:?}",
            brute.difference(&poset).map(|s| one_based(s)).collect::<Vec<_>>(),
            poset.difference(&brute).map(|s| one_based(s)).collect::<Vec<_>>()
        )
    })
}

fn check_flats_canonical(a: &Arrangement) -> Result<String, String> {
    for f in a.poset().flats() {
        let support: Vec<usize> = (0..a.len())
            .filter(|&i| {
                let h = a.hyperplane(i);
                h.eval(f.point()).is_zero()
                    && f.directions().iter().all(|d| crate::exactlin::dot(h.normal(), d).is_zero())
            })
            .collect();
        if support != f.support() || f.codim() + f.dim() != a.dim() {
            return Err(format!("flat {:?} recomputes to {:?}", one_based(f.support()), one_based(&support)));
        }
        match a.localization(f) {
            Ok(loc) if loc.len() == f.support().len() => {}
            _ => return Err(format!("localization at {:?} failed", one_based(f.support()))),
        }
    }
    Ok(format!("{} flats", a.poset().flats().len()))
}

fn check_mobius_inversion(a: &Arrangement) -> Result<String, String> {
    let flats = a.poset().flats();
    for f in &flats[1..] {
        let sum: i64 = flats
            .iter()
            .filter(|g| g.codim() <= f.codim() && g.support().iter().all(|i| f.contains_index(*i)))
            .map(|g| g.mobius())
            .sum();
        if sum != 0 {
            return Err(format!("sum of mu below {:?} is {sum}", one_based(f.support())));
        }
    }
    Ok(format!("{} flats", flats.len()))
}

fn check_deletion_restriction(a: &Arrangement) -> Result<String, String> {
    let chi = a.charpoly();
    for i in 0..a.len() {
        let (del, res) = deletion_restriction(a, i).map_err(|e| e.to_string())?;
        let rhs = del.charpoly().sub(&res.arrangement.charpoly());
        if rhs != chi {
            return Err(format!("deleting H{}: {} != ({}) - ({})", i + 1, chi, del.charpoly(), res.arrangement.charpoly()));
        }
    }
    Ok(format!("chi(t) = {chi}"))
}

fn check_whitney(c: &OsComplex) -> Result<String, String> {
    let poset = c.arrangement().poset();
    for k in 0..=c.dim() {
        let mu: i64 = poset.flats_of_codim(k).iter().map(|f| f.mobius().abs()).sum();
        if c.basis(k).len() as i64 != mu {
            return Err(format!("degree {k}: {} nbc monomials, sum |mu| = {mu}", c.basis(k).len()));
        }
    }
    let dims: Vec<String> = (0..=c.dim()).map(|k| c.basis(k).len().to_string()).collect();
    Ok(format!("dims [{}]", dims.join(", ")))
}

fn check_boundary_squared(c: &OsComplex) -> Result<String, String> {
    for k in 2..=c.dim() {
        let prod = c.boundary_matrix(k - 1).mul(c.boundary_matrix(k));
        let bad = (0..prod.rows()).flat_map(|r| (0..prod.cols()).map(move |q| (r, q))).find(|&(r, q)| !prod.get(r, q).is_zero());
        if let Some((r, q)) = bad {
            let x = &c.basis(k)[q];
            return Err(format!(
                "boundary^2 of {} has coefficient {} on {}",
                OSElement::monomial(x.clone()).to_text(),
                prod.get(r, q),
                OSElement::monomial(c.basis(k - 2)[r].clone()).to_text()
            ));
        }
    }
    Ok("all degrees".into())
}

fn check_relations(c: &OsComplex, limits: Limits) -> Result<String, String> {
    let a = c.arrangement();
    let mut count = 0;
    for flat in &a.poset().flats()[1..] {
        let support = flat.support();
        if support.len() > limits.relation_subsets || support.len() <= flat.codim() {
            continue;
        }
        for size in 2..=support.len().min(c.dim() + 1) {
            for subset in crate::oscomplex::complex::combinations(support, size) {
                if crate::exactlin::rank_of(
                    &subset.iter().map(|&i| a.hyperplane(i).normal().to_vec()).collect::<Vec<_>>(),
                    a.dim(),
                ) == size
                {
                    continue;
                }
                let mut sum = OSElement::zero(size - 1);
                for r in 0..size {
                    let face: Vec<usize> = [&subset[..r], &subset[r + 1..]].concat();
                    let term = c.straighten(&face).map_err(os_err)?;
                    let sign = if r % 2 == 0 { Rational::one() } else { -Rational::one() };
                    sum.add_scaled(&term, &sign);
                }
                if !sum.is_zero() {
                    return Err(format!("relation of {:?} straightens to {}", one_based(&subset), sum.to_text()));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} relations"))
}

fn check_homotopy(a: &Arrangement) -> Result<String, String> {
    let mut count = 0;
    for flat in &a.poset().flats()[1..] {
        let loc = a.localization(flat).map_err(|e| e.to_string())?;
        let c = OsComplex::new(&loc).map_err(os_err)?;
        let e1 = c.straighten(&[0]).map_err(os_err)?;
        for k in 0..=c.dim() {
            for m in c.basis(k) {
                let x = OSElement::monomial(m.clone());
                let mut lhs = c.boundary(&c.wedge(&e1, &x));
                if k > 0 {
                    lhs = lhs.add(&c.wedge(&e1, &c.boundary(&x)));
                }
                if lhs != x {
                    return Err(format!(
                        "at flat {:?}: homotopy applied to {} gives {}",
                        one_based(flat.support()),
                        x.to_text(),
                        lhs.to_text()
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} monomials"))
}

fn check_order_invariance(c: &OsComplex) -> Result<String, String> {
    let a = c.arrangement();
    let perm: Vec<usize> = (0..a.len()).rev().collect();
    let b = a.permuted(&perm);
    let cb = OsComplex::new(&b).map_err(os_err)?;
    for k in 0..=c.dim() {
        if c.basis(k).len() != cb.basis(k).len() {
            return Err(format!("degree {k} dimension changes under reversal"));
        }
    }
    let hc = c.homology_dims();
    let hb = cb.homology_dims();
    ensure(hc == hb, "reversed order", || format!("homology {hc:?} vs {hb:?}"))
}

fn check_region_count(a: &Arrangement) -> Result<String, String> {
    let regions = enumerate_regions(a);
    let expected = expected_region_count(a);
    ensure(regions.len() as i64 == expected, format!("{expected} regions"), || {
        format!("{} regions, (-1)^n chi(-1) = {expected}", regions.len())
    })
}

fn check_witnesses(rc: &RegionComplex) -> Result<String, String> {
    let a = rc.arrangement();
    for r in rc.regions() {
        if a.signs_at(r.witness()) != r.signs() {
            return Err(format!("witness of {} fails its signs", r.sign_string()));
        }
    }
    Ok(format!("{} witnesses", rc.regions().len()))
}

fn check_bounded_independent(rc: &RegionComplex) -> Result<String, String> {
    let a = rc.arrangement();
    for r in rc.regions() {
        let b = r.bounded(a).map_err(|e| e.to_string())?;
        if b != is_bounded_by_extrema(a, r) {
            return Err(format!("boundedness of {} disagrees", r.sign_string()));
        }
    }
    Ok(format!("{} bounded", rc.bounded_regions().len()))
}

fn check_sweep(rc: &RegionComplex) -> Result<String, String> {
    let swept: Vec<String> = sweep_regions(rc.arrangement()).iter().map(|r| r.sign_string()).collect();
    let incremental: Vec<String> = rc.regions().iter().map(|r| r.sign_string()).collect();
    ensure(swept == incremental, format!("{} sign vectors", swept.len()), || {
        format!("sweep {swept:?} vs incremental {incremental:?}")
    })
}

fn check_translation(a: &Arrangement) -> Result<String, String> {
    let shift: Vec<Rational> = (0..a.dim()).map(|k| Rational::new((k as i64 + 1).into(), 3.into())).collect();
    let key = |x: &Arrangement| {
        direction_classes(x)
            .into_iter()
            .map(|c| (c.vector, c.members))
            .collect::<Vec<_>>()
    };
    let before = key(a);
    ensure(before == key(&a.translated(&shift)), format!("{} directions", before.len()), || {
        "direction classes change under translation".into()
    })
}

fn check_homology(c: &OsComplex) -> Result<String, String> {
    let dims = c.homology_dims();
    let n = c.dim();
    ensure(dims[..n].iter().all(|&d| d == 0), format!("{dims:?}"), || format!("homology {dims:?}"))
}

fn check_kernel_dim(c: &OsComplex) -> Result<String, String> {
    let k = c.finite_distance_basis().map_err(os_err)?;
    let top = c.homology_dims()[c.dim()];
    ensure(top == k.len(), format!("dim {}", k.len()), || format!("kernel {} vs homology {top}", k.len()))
}

fn check_bounded_count(c: &OsComplex, rc: &RegionComplex) -> Result<String, String> {
    let k = c.finite_distance_basis().map_err(os_err)?.len();
    let b = rc.bounded_regions().len();
    ensure(k == b, format!("{b}"), || format!("{b} bounded regions, kernel dim {k}"))
}

fn check_kernel_additivity(c: &OsComplex) -> Result<String, String> {
    let a = c.arrangement();
    let k = c.finite_distance_basis().map_err(os_err)?.len();
    let mut used = 0;
    for i in 0..a.len() {
        let (del, res) = deletion_restriction(a, i).map_err(|e| e.to_string())?;
        if !del.is_essential() || !res.arrangement.is_essential() {
            continue;
        }
        let kd = OsComplex::new(&del).and_then(|x| x.finite_distance_basis()).map_err(os_err)?.len();
        let kr = OsComplex::new(&res.arrangement)
            .and_then(|x| x.finite_distance_basis())
            .map_err(os_err)?
            .len();
        if k != kd + kr {
            return Err(format!("deleting H{}: {k} != {kd} + {kr}", i + 1));
        }
        used += 1;
    }
    Ok(format!("{used} deletions"))
}

fn check_canonical_basis(c: &OsComplex, rc: &RegionComplex) -> Result<String, String> {
    let report = canonical_basis_check(c, rc).map_err(|e| e.to_string())?;
    ensure(report.passed(), format!("{} forms", report.forms.len()), || {
        format!("independent: {}, spans: {}", report.independent, report.spans_kernel)
    })
}

fn check_canonical_residues(c: &OsComplex, rc: &RegionComplex) -> Result<String, String> {
    let at = AtInfinity::new(c).map_err(os_err)?;
    for r in rc.bounded_regions() {
        let form = canonical_form(c, rc, r).map_err(|e| e.to_string())?;
        let res = at.residue(&form).map_err(os_err)?;
        if let Some(pos) = res.iter().position(|x| !x.is_zero()) {
            return Err(format!(
                "region {} has residue {} along {}",
                r.sign_string(),
                res[pos].to_text(),
                at.classes()[pos].name()
            ));
        }
    }
    Ok(format!("{} regions", rc.bounded_regions().len()))
}

/// Canonical forms computed after reversing the hyperplane order, mapped back.
fn check_canonical_order(c: &OsComplex, rc: &RegionComplex) -> Result<String, String> {
    let a = c.arrangement();
    let m = a.len();
    let perm: Vec<usize> = (0..m).rev().collect();
    let b = a.permuted(&perm);
    let cb = OsComplex::new(&b).map_err(os_err)?;
    let rcb = RegionComplex::new(&b);
    for r in rc.bounded_regions() {
        let form = canonical_form(c, rc, r).map_err(|e| e.to_string())?;
        let signs: Vec<i8> = perm.iter().map(|&i| r.signs()[i]).collect();
        let rb = rcb.find(&signs).map_err(|e| e.to_string())?;
        let fb = canonical_form(&cb, &rcb, rb).map_err(|e| e.to_string())?;
        let mut back = OSElement::zero(c.dim());
        for (mono, coeff) in fb.terms() {
            let original: Vec<usize> = mono.indices.iter().map(|&k| perm[k]).collect();
            back.add_scaled(&c.straighten(&original).map_err(os_err)?, coeff);
        }
        if back != form {
            return Err(format!(
                "region {}: {} vs reordered {}",
                r.sign_string(),
                form.to_text(),
                back.to_text()
            ));
        }
    }
    Ok(format!("{} regions", rc.bounded_regions().len()))
}

fn check_flag_antisymmetry(c: &OsComplex, rc: &RegionComplex) -> Result<String, String> {
    let n = c.dim();
    let mut count = 0;
    let a = c.arrangement();
    for r in rc.bounded_regions() {
        for m in c.basis(n) {
            // Only simple vertices: where more hyperplanes meet, a hyperplane
            // may touch the region in the vertex alone.
            if a.flat_through(&m.indices).map_or(0, |f| f.support().len()) != n {
                continue;
            }
            let v = iterated_boundary(rc, r, &m.indices).map_err(|e| e.to_string())?;
            for t in 0..n.saturating_sub(1) {
                let mut swapped = m.indices.clone();
                swapped.swap(t, t + 1);
                let w = iterated_boundary(rc, r, &swapped).map_err(|e| e.to_string())?;
                if w != -v {
                    return Err(format!(
                        "region {}: flag {:?} gives {v}, swapped {:?} gives {w}",
                        r.sign_string(),
                        one_based(&m.indices),
                        one_based(&swapped)
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} swaps"))
}

fn check_rational_injective(c: &OsComplex) -> Result<String, String> {
    let a = c.arrangement();
    let kernel = c.finite_distance_basis().map_err(os_err)?;
    if kernel.is_empty() {
        return Ok("empty kernel".into());
    }
    let forms = kernel
        .iter()
        .map(|k| to_rational_form(a, k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(os_err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while columns.len() < kernel.len() + 2 && attempts < 200 {
        attempts += 1;
        let x: Vec<Rational> = (0..a.dim())
            .map(|_| Rational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=7).into()))
            .collect();
        let values: Option<Vec<Rational>> = forms.iter().map(|f| f.eval(a, &x)).collect();
        if let Some(v) = values {
            columns.push(v);
        }
    }
    let rank = Matrix::from_columns(&columns, kernel.len()).rank();
    ensure(rank == kernel.len(), format!("rank {rank} at {} points", columns.len()), || {
        format!("evaluations have rank {rank} < {}", kernel.len())
    })
}

/// A random essential arrangement with duplicate-free hyperplanes, dimension
/// `1..=max_dim`, `dim..=max_hyperplanes` hyperplanes and integer coefficients
/// in `-bound..=bound`, by rejection sampling.
pub fn random_essential_arrangement(
    rng: &mut impl Rng,
    max_dim: usize,
    max_hyperplanes: usize,
    bound: i64,
) -> Arrangement {
    loop {
        let n = rng.gen_range(1..=max_dim);
        let m = rng.gen_range(n..=max_hyperplanes.max(n));
        let data: Vec<(Vec<i64>, i64)> = (0..m)
            .map(|_| {
                let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
                (a, rng.gen_range(-bound..=bound))
            })
            .collect();
        if let Ok(a) = Arrangement::from_integers(n, &data) {
            if a.is_essential() {
                return a;
            }
        }
    }
}

/// `count` arrangements from one seed: `n <= 3`, `m <= 8`, coefficients in `-3..=3`.
pub fn fuzz_arrangements(seed: u64, count: usize) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_essential_arrangement(&mut rng, 3, 8, 3))
        .collect()
}
