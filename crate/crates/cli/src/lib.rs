//! Command-line front end for `hyperarr`.
//!
//! [`run`] turns a [`Command`] into a [`Report`] and an exit code
//! (0 success, 1 failed verification, 2 input error); [`emit`] renders it.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hyperarr::arrangement::{parse_arrangement, Arrangement, ArrangementError};
use hyperarr::canonical::{canonical_basis_check, canonical_form, to_rational_form, CanonicalError};
use hyperarr::exactlin::{format_point, format_rational};
use hyperarr::infinity::{infinity_strata, verify_residue_boundary, InfinityStratum};
use hyperarr::oscomplex::{OSElement, OsComplex, OsError};
use hyperarr::regions::{parse_signs, RegionComplex, RegionError};
use hyperarr::verify::{fuzz_arrangements, run_checks, CheckOutcome, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hyperarr", version, about = "Exact computations on affine hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Verb {
    /// Dimension, essentiality and poset sizes
    Info { input: PathBuf },
    /// Characteristic polynomial and its values at 0, 1, -1
    Charpoly { input: PathBuf },
    /// Flats with Moebius values and covering relations
    Poset { input: PathBuf },
    /// nbc basis of one degree of the Orlik-Solomon algebra
    Os {
        input: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Basis of the kernel of the top boundary map
    Kernel { input: PathBuf },
    /// Regions of the real complement
    Regions {
        input: PathBuf,
        #[arg(long)]
        bounded: bool,
    },
    /// Canonical forms of bounded regions
    Canonical {
        input: PathBuf,
        /// Sign string such as "++-"
        #[arg(long, conflicts_with = "all")]
        region: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Residues at infinity of the top-degree basis
    Residues { input: PathBuf },
    /// Strata at infinity and the blow-up schedule
    Strata { input: PathBuf },
    /// The full invariant suite
    Verify {
        input: PathBuf,
        /// Also check this many random essential arrangements
        #[arg(long, requires = "seed")]
        fuzz: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

impl Verb {
    pub fn name(&self) -> &'static str {
        match self {
            Verb::Info { .. } => "info",
            Verb::Charpoly { .. } => "charpoly",
            Verb::Poset { .. } => "poset",
            Verb::Os { .. } => "os",
            Verb::Kernel { .. } => "kernel",
            Verb::Regions { .. } => "regions",
            Verb::Canonical { .. } => "canonical",
            Verb::Residues { .. } => "residues",
            Verb::Strata { .. } => "strata",
            Verb::Verify { .. } => "verify",
        }
    }

    pub fn input(&self) -> &Path {
        match self {
            Verb::Info { input }
            | Verb::Charpoly { input }
            | Verb::Poset { input }
            | Verb::Os { input, .. }
            | Verb::Kernel { input }
            | Verb::Regions { input, .. }
            | Verb::Canonical { input, .. }
            | Verb::Residues { input }
            | Verb::Strata { input }
            | Verb::Verify { input, .. } => input,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Command {
    pub verb: Verb,
    pub format: Format,
    /// Corrupts the top boundary matrix before `verify` runs.
    pub inject_fault: bool,
}

impl From<Cli> for Command {
    fn from(cli: Cli) -> Self {
        Command {
            verb: cli.verb,
            format: cli.format,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub m: usize,
    pub essential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub verb: String,
    pub input: String,
    pub summary: Option<Summary>,
    pub payload: Value,
    pub checks: Vec<CheckOutcome>,
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Arrangement {
        path: String,
        source: ArrangementError,
    },
    #[error(transparent)]
    Os(#[from] OsError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Variant name of the innermost error, e.g. `DuplicateHyperplane`.
    pub fn kind(&self) -> String {
        let debug = match self {
            CliError::Io { .. } => return "Io".into(),
            CliError::Usage(_) => return "Usage".into(),
            CliError::Arrangement { source, .. } => format!("{source:?}"),
            CliError::Os(OsError::Arrangement(e)) => format!("{e:?}"),
            CliError::Os(e) => format!("{e:?}"),
            CliError::Region(e) => format!("{e:?}"),
            CliError::Canonical(CanonicalError::Os(e)) => format!("{e:?}"),
            CliError::Canonical(CanonicalError::Region(e)) => format!("{e:?}"),
            CliError::Canonical(e) => format!("{e:?}"),
        };
        debug.chars().take_while(|c| c.is_alphanumeric()).collect()
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn summary(a: &Arrangement) -> Summary {
    Summary {
        n: a.dim(),
        m: a.len(),
        essential: a.is_essential(),
    }
}

pub fn load(path: &Path) -> Result<Arrangement, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        message: e.to_string(),
    })?;
    parse_arrangement(&text).map_err(|source| CliError::Arrangement { path: shown, source })
}

/// Executes one command; never panics on bad input.
pub fn run(command: &Command) -> (Report, i32) {
    let verb = &command.verb;
    let mut report = Report {
        verb: verb.name().into(),
        input: verb.input().display().to_string(),
        summary: None,
        payload: Value::Null,
        checks: Vec::new(),
        error: None,
    };
    let outcome = load(verb.input()).and_then(|a| {
        report.summary = Some(summary(&a));
        dispatch(command, &a)
    });
    match outcome {
        Ok((payload, checks)) => {
            report.payload = payload;
            report.checks = checks;
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILED };
            (report, code)
        }
        Err(e) => {
            report.error = Some(ErrorInfo {
                kind: e.kind(),
                message: e.to_string(),
            });
            (report, EXIT_INPUT)
        }
    }
}

type Outcome = Result<(Value, Vec<CheckOutcome>), CliError>;

fn dispatch(command: &Command, a: &Arrangement) -> Outcome {
    match &command.verb {
        Verb::Info { .. } => info(a),
        Verb::Charpoly { .. } => charpoly(a),
        Verb::Poset { .. } => poset(a),
        Verb::Os { degree, .. } => os(a, *degree),
        Verb::Kernel { .. } => kernel(a),
        Verb::Regions { bounded, .. } => regions(a, *bounded),
        Verb::Canonical { region, all, .. } => canonical(a, region.as_deref(), *all),
        Verb::Residues { .. } => residues(a),
        Verb::Strata { .. } => strata(a),
        Verb::Verify { fuzz, seed, .. } => verify(a, *fuzz, *seed, command.inject_fault),
    }
}

fn info(a: &Arrangement) -> Outcome {
    let poset = a.poset();
    let flats: Vec<usize> = (0..=poset.rank()).map(|k| poset.flats_of_codim(k).len()).collect();
    let hyperplanes: Vec<Value> = a
        .hyperplanes()
        .iter()
        .map(|h| json!({"label": h.label(), "normal": format_point(h.normal()), "offset": format_rational(h.offset())}))
        .collect();
    Ok((
        json!({
            "dim": a.dim(),
            "hyperplanes": hyperplanes,
            "essential": a.is_essential(),
            "central": a.is_central(),
            "rank": poset.rank(),
            "flats_by_codim": flats,
        }),
        Vec::new(),
    ))
}

fn charpoly(a: &Arrangement) -> Outcome {
    let chi = a.charpoly();
    let at = |t: i64| format_rational(&chi.eval(&hyperarr::Rational::from_integer(t.into())));
    let coefficients: Vec<String> = (0..=a.dim()).map(|d| format_rational(&chi.coeff(d))).collect();
    Ok((
        json!({
            "chi": chi.to_string(),
            "coefficients": coefficients,
            "at_0": at(0),
            "at_1": at(1),
            "at_minus_1": at(-1),
        }),
        Vec::new(),
    ))
}

fn poset(a: &Arrangement) -> Outcome {
    let p = a.poset();
    let flats: Vec<Value> = p
        .flats()
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let directions: Vec<String> = f.directions().iter().map(|d| format_point(d)).collect();
            json!({
                "id": k + 1,
                "support": one_based(f.support()),
                "codim": f.codim(),
                "point": format_point(f.point()),
                "directions": directions,
                "mobius": f.mobius(),
            })
        })
        .collect();
    let covers: Vec<[usize; 2]> = p.covers().iter().map(|&(u, l)| [u + 1, l + 1]).collect();
    Ok((json!({"flats": flats, "covers": covers}), Vec::new()))
}

fn monomial_text(m: &hyperarr::oscomplex::Monomial) -> String {
    OSElement::monomial(m.clone()).to_text()
}

fn os(a: &Arrangement, degree: usize) -> Outcome {
    if degree > a.dim() {
        return Err(CliError::Usage(format!(
            "degree {degree} exceeds the dimension {}",
            a.dim()
        )));
    }
    let c = OsComplex::new(a)?;
    let flats = a.poset().flats();
    let basis: Vec<Value> = c
        .basis(degree)
        .iter()
        .map(|m| json!({"monomial": monomial_text(m), "flat": one_based(flats[m.flat].support())}))
        .collect();
    Ok((json!({"degree": degree, "dimension": basis.len(), "basis": basis}), Vec::new()))
}

fn kernel(a: &Arrangement) -> Outcome {
    let c = OsComplex::new(a)?;
    let basis: Vec<String> = c.finite_distance_basis()?.iter().map(|x| x.to_text()).collect();
    Ok((json!({"dimension": basis.len(), "basis": basis}), Vec::new()))
}

fn regions(a: &Arrangement, bounded_only: bool) -> Outcome {
    let rc = RegionComplex::new(a);
    let mut listed = Vec::new();
    let mut bounded_count = 0;
    for r in rc.regions() {
        let bounded = r.bounded(a)?;
        bounded_count += usize::from(bounded);
        if bounded || !bounded_only {
            listed.push(json!({"signs": r.sign_string(), "witness": format_point(r.witness()), "bounded": bounded}));
        }
    }
    Ok((
        json!({"count": rc.regions().len(), "bounded_count": bounded_count, "regions": listed}),
        Vec::new(),
    ))
}

fn canonical(a: &Arrangement, region: Option<&str>, all: bool) -> Outcome {
    if region.is_none() && !all {
        return Err(CliError::Usage("canonical needs --region SIGNS or --all".into()));
    }
    if !a.is_essential() {
        return Err(CanonicalError::ExpectedEssential.into());
    }
    let c = OsComplex::new(a)?;
    let rc = RegionComplex::new(a);
    let selected = match region {
        Some(text) => vec![rc.find(&parse_signs(text, a.len())?)?],
        None => rc.bounded_regions(),
    };
    let mut forms = Vec::new();
    for r in selected {
        let form = canonical_form(&c, &rc, r)?;
        let rational = to_rational_form(a, &form)?;
        forms.push(json!({"region": r.sign_string(), "form": form.to_text(), "rational_form": rational.to_string()}));
    }
    let mut checks = Vec::new();
    let mut payload = json!({"forms": forms});
    if all {
        let report = canonical_basis_check(&c, &rc)?;
        checks.push(CheckOutcome {
            name: "canonical_forms_basis".into(),
            passed: report.passed(),
            detail: format!("independent: {}, spans kernel: {}", report.independent, report.spans_kernel),
        });
        payload["kernel"] = json!(report.kernel);
        payload["change_of_basis"] = json!(report.change_of_basis);
    }
    Ok((payload, checks))
}

fn residues(a: &Arrangement) -> Outcome {
    let c = OsComplex::new(a)?;
    let report = verify_residue_boundary(&c)?;
    let check = |name: &str, ok: bool| CheckOutcome {
        name: name.into(),
        passed: ok,
        detail: String::new(),
    };
    let checks = vec![
        check("direction_decomposition", report.decomposition_ok),
        check("residue_equals_routed_boundary", report.map_equality_ok),
        check("residue_kernel_equals_boundary_kernel", report.kernel_equality_ok),
    ];
    let payload = serde_json::to_value(&report).expect("report serializes");
    Ok((payload, checks))
}

fn stratum_value(s: &InfinityStratum) -> Value {
    json!({
        "name": s.name(),
        "divisor": s.divisor(),
        "members": one_based(&s.members),
        "dim": s.dim,
        "irreducible": s.irreducible,
    })
}

fn strata(a: &Arrangement) -> Outcome {
    let s = infinity_strata(a);
    let list = |v: &[InfinityStratum]| v.iter().map(stratum_value).collect::<Vec<_>>();
    Ok((
        json!({"g0": list(&s.g0), "girr": list(&s.girr), "schedule": list(&s.schedule)}),
        Vec::new(),
    ))
}

fn verify(a: &Arrangement, fuzz: Option<usize>, seed: Option<u64>, inject_fault: bool) -> Outcome {
    let mut complex = OsComplex::new(a)?;
    if inject_fault {
        complex.corrupt_boundary_for_testing();
    }
    let mut checks = run_checks(&complex, Limits::default());
    let mut samples = 0;
    if let Some(count) = fuzz {
        let seed = seed.ok_or_else(|| CliError::Usage("--fuzz needs --seed".into()))?;
        for (k, b) in fuzz_arrangements(seed, count).iter().enumerate() {
            let c = OsComplex::new(b)?;
            for mut o in run_checks(&c, Limits::default()) {
                o.name = format!("fuzz[{k}].{}", o.name);
                if !o.passed {
                    o.detail = format!("{} on {}", o.detail, compact_json(b));
                }
                checks.push(o);
            }
            samples += 1;
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
    Ok((
        json!({
            "arrangements": 1 + samples,
            "checks": checks.len(),
            "failed": failed,
            "seed": seed,
        }),
        checks,
    ))
}

fn compact_json(a: &Arrangement) -> String {
    let v: Value = serde_json::from_str(&hyperarr::arrangement::to_json_string(a)).expect("valid json");
    v.to_string()
}

/// Renders a report; JSON output parses back into an equal [`Report`].
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn str_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn list_of(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().map(str_of).collect()).unwrap_or_default()
}

fn text(r: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = write!(w, "{} {}", r.verb, r.input);
    if let Some(s) = &r.summary {
        let _ = write!(w, ": n = {}, m = {}, {}", s.n, s.m, if s.essential { "essential" } else { "not essential" });
    }
    w.push('\n');
    if let Some(e) = &r.error {
        let _ = writeln!(w, "error ({}): {}", e.kind, e.message);
        return out;
    }
    let p = &r.payload;
    match r.verb.as_str() {
        "info" => {
            for h in p["hyperplanes"].as_array().into_iter().flatten() {
                let normal = list_of(&h["normal"]).join(", ");
                let _ = writeln!(w, "  {}: ({normal}) . x + {} = 0", str_of(&h["label"]), str_of(&h["offset"]));
            }
            let _ = writeln!(w, "central: {}", p["central"]);
            let _ = writeln!(w, "rank: {}", p["rank"]);
            let _ = writeln!(w, "flats by codimension: {}", list_of(&p["flats_by_codim"]).join(", "));
        }
        "charpoly" => {
            let _ = writeln!(w, "chi(t) = {}", str_of(&p["chi"]));
            let _ = writeln!(w, "chi(0) = {}", str_of(&p["at_0"]));
            let _ = writeln!(w, "chi(1) = {}", str_of(&p["at_1"]));
            let _ = writeln!(w, "chi(-1) = {}", str_of(&p["at_minus_1"]));
        }
        "poset" => {
            for f in p["flats"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    w,
                    "  F{} codim {} support [{}] mu {} point ({})",
                    f["id"],
                    f["codim"],
                    list_of(&f["support"]).join(","),
                    f["mobius"],
                    list_of(&f["point"]).join(", ")
                );
            }
            let covers: Vec<String> = p["covers"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|c| format!("F{} > F{}", c[0], c[1]))
                .collect();
            let _ = writeln!(w, "covers: {}", covers.join(", "));
        }
        "os" => {
            let _ = writeln!(w, "degree {}: dimension {}", p["degree"], p["dimension"]);
            for m in p["basis"].as_array().into_iter().flatten() {
                let _ = writeln!(w, "  {}  at flat [{}]", str_of(&m["monomial"]), list_of(&m["flat"]).join(","));
            }
        }
        "kernel" => {
            let _ = writeln!(w, "dimension {}", p["dimension"]);
            for b in list_of(&p["basis"]) {
                let _ = writeln!(w, "  {b}");
            }
        }
        "regions" => {
            let _ = writeln!(w, "{} regions, {} bounded", p["count"], p["bounded_count"]);
            for g in p["regions"].as_array().into_iter().flatten() {
                let tag = if g["bounded"] == Value::Bool(true) { "bounded" } else { "unbounded" };
                let _ = writeln!(w, "  {}  {tag}  witness ({})", str_of(&g["signs"]), list_of(&g["witness"]).join(", "));
            }
        }
        "canonical" => {
            for f in p["forms"].as_array().into_iter().flatten() {
                let _ = writeln!(w, "region {}", str_of(&f["region"]));
                let _ = writeln!(w, "  form: {}", str_of(&f["form"]));
                let _ = writeln!(w, "  rational: {}", str_of(&f["rational_form"]));
            }
            if !p["kernel"].is_null() {
                let _ = writeln!(w, "kernel basis:");
                for k in list_of(&p["kernel"]) {
                    let _ = writeln!(w, "  {k}");
                }
                for (i, row) in p["change_of_basis"].as_array().into_iter().flatten().enumerate() {
                    let _ = writeln!(w, "  form {} = [{}] in the kernel basis", i + 1, list_of(row).join(", "));
                }
            }
        }
        "residues" => {
            for d in p["directions"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    w,
                    "  {} direction ({}) lines {} quotient top dim {}",
                    str_of(&d["name"]),
                    list_of(&d["vector"]).join(", "),
                    d["lines"],
                    d["quotient_top_dim"]
                );
            }
            let names: Vec<String> = p["directions"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|d| str_of(&d["name"]))
                .collect();
            for row in p["table"].as_array().into_iter().flatten() {
                let parts: Vec<String> = list_of(&row["components"])
                    .iter()
                    .zip(&names)
                    .map(|(c, n)| format!("{n}: {c}"))
                    .collect();
                let _ = writeln!(w, "  Res {} = ({})", str_of(&row["monomial"]), parts.join("; "));
            }
            let _ = writeln!(w, "kernel dimension {}", p["kernel_dim"]);
        }
        "strata" => {
            for key in ["g0", "girr", "schedule"] {
                let names: Vec<String> = p[key]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|s| {
                        let irr = if s["irreducible"] == Value::Bool(true) { "" } else { " reducible" };
                        format!("{} (dim {}{irr})", str_of(&s["name"]), s["dim"])
                    })
                    .collect();
                let _ = writeln!(w, "{key}: {}", names.join(", "));
            }
        }
        "verify" => {
            let _ = writeln!(w, "{} checks on {} arrangement(s)", p["checks"], p["arrangements"]);
        }
        _ => {}
    }
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            let _ = writeln!(w, "{status} {}", c.name);
        } else {
            let _ = writeln!(w, "{status} {}: {}", c.name, c.detail);
        }
    }
    out
}
