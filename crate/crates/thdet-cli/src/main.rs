//! Command-line front end for the determinant and spectra library.
//!
//! One command per process: parse arguments, run the requested computation,
//! write the report (and at most one output file) once at the end. Outputs
//! are deterministic byte-for-byte given the same inputs and seed.
//!
//! Exit codes: 0 success, 2 validation failure (bad arguments, bad input
//! files, unsupported backend), 3 oracle mismatch or identity-suite failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use thdet::{
    bc_terms_to_json, bc_toeplitz_det, bc_toeplitz_det_with_terms, be_det, bocg_det_toeplitz,
    build_th, build_toeplitz, cauchy_type_det, d_i_det, d_i_tail_sum, day_det, day_form_from_json,
    day_to_bc, det_lu, eig_cloud, eigs_to_csv, locus_compare, locus_scan, locus_to_csv, read_text,
    symbol_from_json, terms_to_json, th_det, tol, vanishing_residual, write_text, ComplexFloat,
    DayForm, DayTermRecord, Error, GaussianRational, ParamMultiset, RationalSymbolBC, Result,
    Sampler, Scalar, SpectrumKind, Window,
};
use thdet::zfun::{
    identity_additivity, identity_difference_product, identity_inversion_ordered,
    identity_inversion_pair, identity_symmetry, identity_zo_factorization,
};

#[derive(Parser)]
#[command(
    name = "thdet",
    version,
    about = "Toeplitz and Toeplitz-plus-Hankel determinants of rational symbols"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Toeplitz-plus-Hankel determinant det(T_n + H_n) by the subset sum
    Det(DetArgs),
    /// Toeplitz determinant det(T_n) by the subset sum or from a Day form
    ToeplitzDet(ToeplitzDetArgs),
    /// The same determinants through the Fredholm operator route (float only)
    Fredholm(FredholmArgs),
    /// Randomized identity suites with a pass/fail table
    Identities(IdentitiesArgs),
    /// Tie-gap locus scan over a spectral-plane window (float only)
    Locus(LocusArgs),
    /// Finite-section eigenvalues with distance diagnostics (float only)
    Eigs(EigsArgs),
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Backend {
    /// Gaussian-rational arithmetic; results print as p/q [+ r/s i]
    Exact,
    /// Complex binary64
    Float,
}

#[derive(ValueEnum, Clone, Copy)]
enum Section {
    /// Pure Toeplitz section
    T,
    /// Toeplitz-plus-Hankel section
    Th,
}

impl Section {
    fn kind(self) -> SpectrumKind {
        match self {
            Section::T => SpectrumKind::Toeplitz,
            Section::Th => SpectrumKind::Th,
        }
    }
}

#[derive(Args)]
struct DetArgs {
    /// Symbol JSON {"a":[..],"b":[..],"c":[..],"d":[..]}, inline or a file path
    #[arg(long)]
    symbol: String,
    /// Section order, n >= 1
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Also print the subset-term breakdown as JSON
    #[arg(long)]
    terms: bool,
    /// Cross-check against the LU determinant of the assembled section
    #[arg(long)]
    oracle: bool,
    /// Scale every zero and pole by (1 + EPS) before evaluating
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    perturb: Option<String>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true)))]
struct ToeplitzDetArgs {
    /// Symbol JSON {"a":[..],"b":[..],"c":[..],"d":[..]}, inline or a file path
    #[arg(long, group = "source")]
    symbol: Option<String>,
    /// Day-form JSON {"c0":..,"r":[..],"rho":[..],"delta":[..]}, inline or a file path
    #[arg(long, group = "source")]
    day_form: Option<String>,
    /// Section order, n >= 1
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Also print the term breakdown as JSON
    #[arg(long)]
    terms: bool,
    /// Cross-check against the LU determinant of the assembled section
    #[arg(long)]
    oracle: bool,
    /// Scale every zero and pole by (1 + EPS) before evaluating
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    perturb: Option<String>,
}

#[derive(Args)]
struct FredholmArgs {
    /// Symbol JSON, inline or a file path; all moduli must stay below 1
    #[arg(long)]
    symbol: String,
    /// Section order, n >= 1
    #[arg(long)]
    n: usize,
    /// Which section the determinant belongs to
    #[arg(long, value_enum, default_value_t = Section::Th)]
    which: Section,
    /// Truncation window size (adaptive when omitted)
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Cross-check against the subset-sum closed form
    #[arg(long)]
    oracle: bool,
    /// Scale every zero and pole by (1 + EPS) before evaluating
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    perturb: Option<String>,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// PRNG seed for every suite (printed in the report)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per suite
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Args)]
struct LocusArgs {
    /// Symbol JSON, inline or a file path
    #[arg(long)]
    symbol: String,
    /// Which section's tie condition to scan
    #[arg(long, value_enum, default_value_t = Section::Th)]
    kind: Section,
    /// Window re_min,re_max,im_min,im_max
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Window,
    /// Cells per window side
    #[arg(long)]
    res: usize,
    /// Flag threshold as a fraction of the local modulus scale (default 1e-3)
    #[arg(long)]
    gap_fraction: Option<f64>,
    /// Also scan the other section and report where the flag sets differ
    #[arg(long, requires = "out")]
    compare: bool,
    /// Write the CSV here (printed to stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Scale every zero and pole by (1 + EPS) before evaluating
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    perturb: Option<String>,
}

#[derive(Args)]
struct EigsArgs {
    /// Symbol JSON, inline or a file path
    #[arg(long)]
    symbol: String,
    /// Section order, n >= 1
    #[arg(long)]
    n: usize,
    /// Which section to diagonalize
    #[arg(long, value_enum, default_value_t = Section::Th)]
    which: Section,
    /// Locus window for the dist_locus column: re_min,re_max,im_min,im_max
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true, requires = "res")]
    window: Option<Window>,
    /// Cells per side of the locus window
    #[arg(long, requires = "window")]
    res: Option<usize>,
    /// Flag threshold for the attached locus scan
    #[arg(long, requires = "window")]
    gap_fraction: Option<f64>,
    /// Write the CSV here (printed to stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Backend::Float)]
    backend: Backend,
    /// Scale every zero and pole by (1 + EPS) before evaluating
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    perturb: Option<String>,
}

// ---------------------------------------------------------------------------
// Plumbing
// ---------------------------------------------------------------------------

/// Finished command: the full stdout text and the process exit code.
struct Run {
    text: String,
    code: u8,
}

impl Run {
    fn ok(text: String) -> Self {
        Run { text, code: 0 }
    }
}

fn parse_window(text: &str) -> std::result::Result<Window, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err("window must be re_min,re_max,im_min,im_max".into());
    }
    let mut v = [0.0f64; 4];
    for (slot, raw) in v.iter_mut().zip(&parts) {
        *slot = raw
            .trim()
            .parse()
            .map_err(|_| format!("bad window coordinate `{raw}`"))?;
    }
    Window::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

/// Inline JSON if the argument looks like an object, file contents otherwise.
fn load_text(source: &str) -> Result<String> {
    if source.trim_start().starts_with('{') {
        Ok(source.to_string())
    } else {
        read_text(Path::new(source))
    }
}

fn load_symbol<S: Scalar>(source: &str, perturb: &Option<String>) -> Result<RationalSymbolBC<S>> {
    let mut sym: RationalSymbolBC<S> = symbol_from_json(&load_text(source)?)?;
    if let Some(text) = perturb {
        let factor = S::one() + S::parse(text)?;
        for set in [&mut sym.a, &mut sym.b, &mut sym.c, &mut sym.d] {
            for x in set.iter_mut() {
                *x = x.clone() * factor.clone();
            }
        }
    }
    Ok(sym)
}

fn load_day_form<S: Scalar>(source: &str, perturb: &Option<String>) -> Result<DayForm<S>> {
    let mut day: DayForm<S> = day_form_from_json(&load_text(source)?)?;
    if let Some(text) = perturb {
        let factor = S::one() + S::parse(text)?;
        for set in [&mut day.r, &mut day.rho, &mut day.delta] {
            for x in set.iter_mut() {
                *x = x.clone() * factor.clone();
            }
        }
    }
    Ok(day)
}

fn require_float_backend(backend: Backend, command: &str) -> Result<()> {
    if backend == Backend::Exact {
        return Err(Error::Unsupported(format!(
            "{command} is float-only (truncation windows and eigensolves are numerical notions); \
             drop --backend exact"
        )));
    }
    Ok(())
}

fn rel_err(x: ComplexFloat, y: ComplexFloat) -> f64 {
    (x - y).modulus() / y.modulus().max(tol::ABS_FLOOR)
}

/// " | oracle: ..." tag plus the exit code it implies. Exact backend demands
/// equality; float compares at the route tolerance.
fn oracle_tag<S: Scalar>(value: &S, reference: &S) -> (String, u8) {
    if S::EXACT {
        if value == reference {
            (" | oracle: match".into(), 0)
        } else {
            (format!(" | oracle: mismatch (oracle {reference})"), 3)
        }
    } else {
        let err = rel_err(ComplexFloat::from(value.to_c64()), ComplexFloat::from(reference.to_c64()));
        if err <= tol::ROUTE_REL {
            (format!(" | oracle: match (rel err {err:.1e})"), 0)
        } else {
            (format!(" | oracle: mismatch (rel err {err:.1e})"), 3)
        }
    }
}

/// Day-route breakdown: chosen index set M, geometric base r_M, coefficient A_M.
fn day_terms_to_json<S: Scalar>(terms: &[DayTermRecord<S>]) -> String {
    let rows: Vec<serde_json::Value> = terms
        .iter()
        .map(|t| {
            let mut obj = serde_json::Map::new();
            let m: Vec<serde_json::Value> =
                t.m.iter().map(|&i| serde_json::Value::from(i as u64)).collect();
            obj.insert("M".into(), serde_json::Value::Array(m));
            obj.insert("base".into(), serde_json::Value::from(t.r_m.to_string()));
            obj.insert("coeff".into(), serde_json::Value::from(t.a_m.to_string()));
            serde_json::Value::Object(obj)
        })
        .collect();
    serde_json::Value::Array(rows).to_string()
}

fn deliver_csv(out: &Option<PathBuf>, csv: &str, summary: String) -> Result<Run> {
    match out {
        Some(path) => {
            write_text(path, csv)?;
            Ok(Run::ok(format!("{summary} | wrote {}\n", path.display())))
        }
        None => Ok(Run::ok(csv.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn run_det(args: &DetArgs) -> Result<Run> {
    match args.backend {
        Backend::Exact => det_report::<GaussianRational>(args),
        Backend::Float => det_report::<ComplexFloat>(args),
    }
}

fn det_report<S: Scalar>(args: &DetArgs) -> Result<Run> {
    let sym = load_symbol::<S>(&args.symbol, &args.perturb)?;
    let (value, terms) = th_det(&sym, args.n)?;
    let mut text = value.to_string();
    let mut code = 0;
    if args.oracle {
        let reference = det_lu(&build_th(&sym, args.n)?)?;
        let (tag, tag_code) = oracle_tag(&value, &reference);
        text.push_str(&tag);
        code = tag_code;
    }
    text.push('\n');
    if args.terms {
        text.push_str(&terms_to_json(&terms));
        text.push('\n');
    }
    Ok(Run { text, code })
}

fn run_toeplitz_det(args: &ToeplitzDetArgs) -> Result<Run> {
    match args.backend {
        Backend::Exact => toeplitz_report::<GaussianRational>(args),
        Backend::Float => toeplitz_report::<ComplexFloat>(args),
    }
}

fn toeplitz_report<S: Scalar>(args: &ToeplitzDetArgs) -> Result<Run> {
    let (value, terms_json, reference) = if let Some(source) = &args.symbol {
        let sym = load_symbol::<S>(source, &args.perturb)?;
        let (value, terms) = bc_toeplitz_det_with_terms(&sym, args.n)?;
        let reference = if args.oracle {
            Some(det_lu(&build_toeplitz(&sym, args.n)?)?)
        } else {
            None
        };
        (value, args.terms.then(|| bc_terms_to_json(&terms)), reference)
    } else {
        let day = load_day_form::<S>(args.day_form.as_ref().unwrap(), &args.perturb)?;
        let (value, terms) = day_det(&day, args.n)?;
        // The oracle has no Day-form assembler; it checks the determinant
        // through the subset-sum symbol the form converts to.
        let reference = if args.oracle {
            let (bc, base) = day_to_bc(&day)?;
            let section = det_lu(&build_toeplitz(&bc, args.n)?)?;
            Some(base.powi(args.n as i64)? * section)
        } else {
            None
        };
        (value, args.terms.then(|| day_terms_to_json(&terms)), reference)
    };
    let mut text = value.to_string();
    let mut code = 0;
    if let Some(reference) = reference {
        let (tag, tag_code) = oracle_tag(&value, &reference);
        text.push_str(&tag);
        code = tag_code;
    }
    text.push('\n');
    if let Some(json) = terms_json {
        text.push_str(&json);
        text.push('\n');
    }
    Ok(Run { text, code })
}

fn run_fredholm(args: &FredholmArgs) -> Result<Run> {
    require_float_backend(args.backend, "fredholm")?;
    let sym = load_symbol::<ComplexFloat>(&args.symbol, &args.perturb)?;
    let (value, reference) = match args.which {
        Section::Th => (
            be_det(&sym, args.n, args.trunc)?,
            args.oracle.then(|| th_det(&sym, args.n).map(|(v, _)| v)).transpose()?,
        ),
        Section::T => (
            bocg_det_toeplitz(&sym, args.n, args.trunc)?,
            args.oracle.then(|| bc_toeplitz_det(&sym, args.n)).transpose()?,
        ),
    };
    let mut text = value.to_string();
    let mut code = 0;
    if let Some(reference) = reference {
        let (tag, tag_code) = oracle_tag(&value, &reference);
        text.push_str(&tag);
        code = tag_code;
    }
    text.push('\n');
    Ok(Run { text, code })
}

fn run_locus(args: &LocusArgs) -> Result<Run> {
    require_float_backend(args.backend, "locus")?;
    let sym = load_symbol::<ComplexFloat>(&args.symbol, &args.perturb)?;
    let samples = locus_scan(&sym, args.kind.kind(), args.window, args.res, args.gap_fraction)?;
    let flagged = samples.iter().filter(|s| s.flagged).count();
    let mut summary = format!("flagged {flagged} of {} cells", samples.len());
    if args.compare {
        let cmp = locus_compare(&sym, args.window, args.res, args.gap_fraction)?;
        summary.push_str(&format!(
            " | toeplitz-only flags {} | th-only flags {}",
            cmp.only_toeplitz.len(),
            cmp.only_th.len()
        ));
    }
    deliver_csv(&args.out, &locus_to_csv(&samples), summary)
}

fn run_eigs(args: &EigsArgs) -> Result<Run> {
    require_float_backend(args.backend, "eigs")?;
    let sym = load_symbol::<ComplexFloat>(&args.symbol, &args.perturb)?;
    let locus = match (args.window, args.res) {
        (Some(window), Some(res)) => {
            Some(locus_scan(&sym, args.which.kind(), window, res, args.gap_fraction)?)
        }
        _ => None,
    };
    let cloud = eig_cloud(&sym, args.n, args.which.kind(), locus.as_deref())?;
    let summary = format!(
        "{} eigenvalues | min distance to phi(1) {:.3e}",
        cloud.eigenvalues.len(),
        cloud.min_dist_special
    );
    deliver_csv(&args.out, &eigs_to_csv(&cloud), summary)
}

// ---------------------------------------------------------------------------
// Identity suites
// ---------------------------------------------------------------------------

struct Suite {
    name: &'static str,
    passed: bool,
    detail: String,
}

/// Pair-product and inversion identities, float draws then exact draws.
fn suite_z_identities(seed: u64, trials: usize) -> Suite {
    let mut s = Sampler::new(seed.wrapping_add(1));
    let mut worst = 0.0f64;
    let mut exact_bad = 0usize;
    for _ in 0..trials {
        let a = ParamMultiset::new(s.points(2, 0.9).unwrap());
        let b = ParamMultiset::new(s.points(2, 0.9).unwrap());
        let c = ParamMultiset::new(s.points(1, 0.9).unwrap());
        for (l, r) in [
            identity_symmetry(&a, &b).unwrap(),
            identity_additivity(&a, &b, &c).unwrap(),
            identity_zo_factorization(&a, &b).unwrap(),
            identity_difference_product(&a, &b).unwrap(),
            identity_inversion_pair(&a, &b).unwrap(),
            identity_inversion_ordered(&a).unwrap(),
        ] {
            worst = worst.max(rel_err(l, r));
        }
    }
    for _ in 0..trials {
        let sym = s.symbol_exact(2).unwrap();
        let a = ParamMultiset::from_slice(&sym.a);
        let b = ParamMultiset::from_slice(&sym.b);
        for (l, r) in [
            identity_symmetry(&a, &b).unwrap(),
            identity_zo_factorization(&a, &b).unwrap(),
            identity_difference_product(&a, &b).unwrap(),
            identity_inversion_pair(&a, &b).unwrap(),
            identity_inversion_ordered(&a).unwrap(),
        ] {
            if l != r {
                exact_bad += 1;
            }
        }
    }
    Suite {
        name: "z-identities",
        passed: worst <= 1e-12 && exact_bad == 0,
        detail: format!(
            "max float residual {worst:.1e}; {} exact mismatches",
            exact_bad
        ),
    }
}

/// Alternant determinant against its closed product form.
fn suite_cauchy_det(seed: u64, trials: usize) -> Suite {
    let mut s = Sampler::new(seed.wrapping_add(2));
    let mut worst = 0.0f64;
    let mut exact_bad = 0usize;
    for _ in 0..trials {
        let m = s.size(1, 6);
        let pts = s.points(2 * m, 0.9).unwrap();
        let (sv, tv) = pts.split_at(m);
        let (direct, closed) = cauchy_type_det(sv, tv).unwrap();
        worst = worst.max(rel_err(direct, closed));
    }
    for _ in 0..trials {
        let sym = s.symbol_exact(2).unwrap();
        let (direct, closed) = cauchy_type_det(&sym.a, &sym.b).unwrap();
        if direct != closed {
            exact_bad += 1;
        }
    }
    Suite {
        name: "cauchy-det",
        passed: worst <= 1e-9 && exact_bad == 0,
        detail: format!(
            "max float residual {worst:.1e}; {} exact mismatches",
            exact_bad
        ),
    }
}

/// Cross-term residual of the kernel reduction: identically zero, exactly.
fn suite_vanishing_residual(seed: u64, trials: usize) -> Suite {
    let mut s = Sampler::new(seed.wrapping_add(3));
    let mut probes = 0usize;
    let mut nonzero = 0usize;
    for _ in 0..trials {
        let k = s.size(1, 3);
        let sym = s.symbol_exact(k).unwrap();
        for i in 0..sym.b.len() {
            probes += 1;
            if !Scalar::is_zero(&vanishing_residual(&sym, i).unwrap()) {
                nonzero += 1;
            }
        }
    }
    Suite {
        name: "vanishing-residual",
        passed: nonzero == 0,
        detail: format!("{nonzero} nonzero of {probes} exact probes"),
    }
}

/// Generalized-Vandermonde tail sums: closed form against brute enumeration,
/// plus the exact cancellations for repeated parameters.
fn suite_tail_cancellation(seed: u64, trials: usize) -> Suite {
    let mut s = Sampler::new(seed.wrapping_add(4));
    let mut worst = 0.0f64;
    let mut exact_bad = 0usize;
    for _ in 0..trials {
        let pts = s.points(4, 0.6).unwrap();
        let (t, sv) = (pts[0..2].to_vec(), pts[2..4].to_vec());
        let n = s.size(1, 3);
        let closed = d_i_tail_sum(&t, &sv, n).unwrap();
        let mut brute = ComplexFloat::new(0.0, 0.0);
        for i1 in n as i64..n as i64 + 60 {
            for i2 in n as i64..n as i64 + 60 {
                brute = brute + d_i_det(&[i1, i2], &t, &sv).unwrap();
            }
        }
        worst = worst.max(rel_err(closed, brute));
    }
    for _ in 0..trials {
        let sym = s.symbol_exact(2).unwrap();
        let repeated = vec![sym.b[0].clone(), sym.b[0].clone()];
        let n = s.size(1, 4);
        if !Scalar::is_zero(&d_i_tail_sum(&sym.a, &repeated, n).unwrap()) {
            exact_bad += 1;
        }
        let dup_t = vec![sym.c[0].clone(), sym.c[0].clone()];
        if !Scalar::is_zero(&d_i_det(&[2, 5], &dup_t, &sym.b).unwrap()) {
            exact_bad += 1;
        }
    }
    Suite {
        name: "tail-cancellation",
        passed: worst <= 1e-9 && exact_bad == 0,
        detail: format!(
            "max float residual {worst:.1e}; {} surviving cancellations",
            exact_bad
        ),
    }
}

fn run_identities(args: &IdentitiesArgs) -> Result<Run> {
    if args.trials == 0 {
        return Err(Error::Unsupported("--trials must be >= 1".into()));
    }
    let suites = [
        suite_z_identities(args.seed, args.trials),
        suite_cauchy_det(args.seed, args.trials),
        suite_vanishing_residual(args.seed, args.trials),
        suite_tail_cancellation(args.seed, args.trials),
    ];
    let mut text = format!("identity suites | seed {} | trials {}\n", args.seed, args.trials);
    let mut failures = 0usize;
    for suite in &suites {
        let verdict = if suite.passed { "PASS" } else { "FAIL" };
        if !suite.passed {
            failures += 1;
        }
        text.push_str(&format!("{:<20} {:<4} {}\n", suite.name, verdict, suite.detail));
    }
    if failures == 0 {
        text.push_str("all suites PASS\n");
        Ok(Run::ok(text))
    } else {
        text.push_str(&format!("{failures} suite(s) FAIL\n"));
        Ok(Run { text, code: 3 })
    }
}

fn dispatch(cmd: &Cmd) -> Result<Run> {
    match cmd {
        Cmd::Det(args) => run_det(args),
        Cmd::ToeplitzDet(args) => run_toeplitz_det(args),
        Cmd::Fredholm(args) => run_fredholm(args),
        Cmd::Identities(args) => run_identities(args),
        Cmd::Locus(args) => run_locus(args),
        Cmd::Eigs(args) => run_eigs(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(run) => {
            print!("{}", run.text);
            ExitCode::from(run.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
