//! Command-line surface for the resolvent-bounds library: norms of the
//! extremal Toeplitz family, resolvent bounds for arbitrary spectra,
//! witness certifications, randomized audits, and CSV sweeps.
//!
//! Output is JSON for single results and CSV (header row, 17 significant
//! digits) for tables. Exit codes: 0 success, 1 certification or audit
//! failure, 2 usage error. `RESOLVENT_BOUNDS_THREADS` caps the worker
//! pool; a fixed seed and configuration produce identical output bytes
//! regardless of thread count.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use resolvent_bounds::bounds::{
    bound_prop2, bound_theorem1, bound_theorem3, certify_sharpness_theorem1, ds_constant_sup,
    random_contraction_audit_detailed, sup_resolvent_r, BoundReport,
};
use resolvent_bounds::extremal::{
    count_trig_roots, root_census, scan_trig_roots, xnorm_auto, xnorm_char_eq_detailed,
    xnorm_limit, xnorm_oracle, ExtremalParams, RootCensus, XnormMethod,
};
use resolvent_bounds::geometry::Spectrum;
use resolvent_bounds::Error as CoreError;

/// Relative gap above which the two norm routes are considered divergent.
const GAP_TOL: f64 = 1e-8;
/// Relative gap above which a witness certificate fails.
const CERT_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "resolvent-bounds",
    version,
    about = "Spectral bounds on resolvent norms and condition numbers of contractions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Norm of the extremal Toeplitz matrix by both routes
    Xnorm(XnormArgs),
    /// Resolvent-norm bound at a point for a given spectrum
    Bound(BoundArgs),
    /// Witness certifications over the built-in grids
    Certify(CertifyArgs),
    /// Randomized no-counterexample audit against the bounds
    Audit(AuditArgs),
    /// Parameter sweep over matrix sizes, emitted as CSV
    Sweep(SweepArgs),
    /// Root census of the characteristic equation
    Roots(RootsArgs),
}

#[derive(Args)]
struct XnormArgs {
    /// Matrix size
    #[arg(long)]
    n: usize,
    /// Diagonal radius, in (0, 1]
    #[arg(long)]
    r: f64,
    /// Subdiagonal weight, in [0, 2]
    #[arg(long)]
    beta: f64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Sharp bound from the pseudo-hyperbolic distance and Stolz weight
    Theorem1,
    /// Closed-form relaxation, valid strictly inside the disk
    Theorem3,
    /// Reciprocal Euclidean distance, unimodular spectra only
    Prop2,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("spectrum_source")
    .required(true)
    .args(["spectrum", "spectrum_file"]))]
struct BoundArgs {
    /// Which estimate to evaluate
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Real part of the evaluation point
    #[arg(long, allow_negative_numbers = true)]
    zeta: f64,
    /// Imaginary part of the evaluation point
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    zeta_im: f64,
    /// Spectrum as an inline JSON array of {re, im, mult}
    #[arg(long)]
    spectrum: Option<String>,
    /// Path to a file holding the spectrum JSON
    #[arg(long)]
    spectrum_file: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Every certification family below
    All,
    /// Sharpness of the distance/Stolz bound on repeated real spectra
    Sharpness,
    /// Extremal resolvent supremum witnesses at interior points
    Supremum,
    /// Boundary condition-number witnesses for split spectra
    Boundary,
}

#[derive(Args)]
struct CertifyArgs {
    /// Certification family to run
    #[arg(long, value_enum, default_value_t = Family::All)]
    family: Family,
    /// Write the CSV table here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AuditArgs {
    /// Contraction size, 1 through 16
    #[arg(long)]
    n: usize,
    /// Number of random contractions to test
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Seed for the trial-indexed generators
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also write a CSV histogram of actual/bound ratios here
    #[arg(long)]
    histogram: Option<PathBuf>,
    /// Write the JSON summary here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest matrix size
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    /// Largest matrix size
    #[arg(long, required_unless_present = "lemma_cases")]
    n_max: Option<usize>,
    /// Diagonal radius, in (0, 1]
    #[arg(long, required_unless_present = "lemma_cases")]
    r: Option<f64>,
    /// Subdiagonal weight, in [0, 2]
    #[arg(long, required_unless_present = "lemma_cases")]
    beta: Option<f64>,
    /// Sweep the built-in root-counting case grid instead of a size range
    #[arg(long, conflicts_with_all = ["n_max", "r", "beta"])]
    lemma_cases: bool,
    /// Write the CSV table here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RootsArgs {
    /// Matrix size
    #[arg(long)]
    n: usize,
    /// Diagonal radius, in (0, 1]
    #[arg(long)]
    r: f64,
    /// Subdiagonal weight, in [0, 2]
    #[arg(long)]
    beta: f64,
    /// Write the JSON census here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Domain(CoreError),
    Census(CoreError),
    Io(PathBuf, std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) | CliError::Census(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot write {}: {e}", path.display()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Census(_) => 1,
            CliError::Domain(_) | CliError::Io(_, _) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Xnorm(args) => run_xnorm(args),
        Command::Bound(args) => run_bound(args),
        Command::Certify(args) => run_certify(args),
        Command::Audit(args) => run_audit(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Roots(args) => run_roots(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("RESOLVENT_BOUNDS_THREADS") {
        if let Ok(threads) = raw.trim().parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
            }
        }
    }
}

/// 17 significant digits: enough to round-trip any double.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    text.push('\n');
    text
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("csv write to memory cannot fail");
    for row in rows {
        writer.write_record(row).expect("csv write to memory cannot fail");
    }
    String::from_utf8(writer.into_inner().expect("csv flush to memory cannot fail"))
        .expect("csv output is ascii")
}

#[derive(Serialize)]
struct XnormReport {
    n: usize,
    r: f64,
    beta: f64,
    norm_char_eq: f64,
    norm_oracle: f64,
    rel_gap: f64,
    /// Roots backing the characteristic-equation value; null when that
    /// route fell back to the eigensolver or the closed form.
    root_census: Option<RootCensus>,
}

fn run_xnorm(args: XnormArgs) -> Result<u8, CliError> {
    let p = ExtremalParams::new(args.n, args.r, args.beta)?;
    let norm_oracle = xnorm_oracle(&p)?;
    let (norm_char_eq, root_census) = match xnorm_char_eq_detailed(&p) {
        Ok(outcome) => {
            if outcome.used_oracle_fallback {
                eprintln!(
                    "note: beta within {:.0e} of 1 - r^2; characteristic-equation route \
                     delegated to the eigensolver",
                    resolvent_bounds::extremal::ORACLE_FALLBACK_BAND
                );
            }
            (outcome.norm, outcome.census)
        }
        Err(CoreError::DegenerateBeta { .. }) => {
            eprintln!("note: beta = 1 - r^2 exactly; norm is 1 by the closed form");
            (1.0, None)
        }
        Err(e) => return Err(e.into()),
    };
    let rel_gap = (norm_char_eq - norm_oracle).abs() / norm_oracle;
    let report = XnormReport {
        n: args.n,
        r: args.r,
        beta: args.beta,
        norm_char_eq,
        norm_oracle,
        rel_gap,
        root_census,
    };
    emit(&args.output, &to_json(&report))?;
    if rel_gap < GAP_TOL {
        Ok(0)
    } else {
        eprintln!("error: norm routes disagree, relative gap {rel_gap:e} >= {GAP_TOL:e}");
        Ok(1)
    }
}

fn run_bound(args: BoundArgs) -> Result<u8, CliError> {
    let text = match (&args.spectrum, &args.spectrum_file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(path)) => {
            fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?
        }
        _ => unreachable!("clap enforces exactly one spectrum source"),
    };
    let sigma = Spectrum::from_json(&text)?;
    let zeta = Complex64::new(args.zeta, args.zeta_im);
    let report: BoundReport = match args.method {
        MethodArg::Theorem1 => bound_theorem1(&sigma, zeta)?,
        MethodArg::Theorem3 => bound_theorem3(&sigma, zeta)?,
        MethodArg::Prop2 => bound_prop2(&sigma, zeta)?,
    };
    emit(&args.output, &to_json(&report))?;
    Ok(0)
}

struct CertRow {
    cells: Vec<String>,
    failed: bool,
    log: Option<String>,
}

#[allow(clippy::too_many_arguments)]
fn cert_row(
    family: &str,
    lambda: Option<f64>,
    zeta: Option<f64>,
    r: Option<f64>,
    rho1: Option<f64>,
    n: Option<usize>,
    n2: Option<usize>,
    gap: Option<f64>,
    status: &str,
) -> Vec<String> {
    let opt_f = |v: Option<f64>| v.map(fmt17).unwrap_or_default();
    let opt_u = |v: Option<usize>| v.map(|u| u.to_string()).unwrap_or_default();
    vec![
        family.to_string(),
        opt_f(lambda),
        opt_f(zeta),
        opt_f(r),
        opt_f(rho1),
        opt_u(n),
        opt_u(n2),
        opt_f(gap),
        status.to_string(),
    ]
}

fn certify_sharpness_rows() -> Result<Vec<CertRow>, CliError> {
    let lambdas = [-0.9f64, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9];
    let zetas = [-1.0f64, -0.5, 0.0, 0.5, 1.0];
    let mut grid = Vec::new();
    for &lambda in &lambdas {
        for &zeta in &zetas {
            for n in 1..=8usize {
                grid.push((lambda, zeta, n));
            }
        }
    }
    grid.into_par_iter()
        .map(|(lambda, zeta, n)| {
            if (zeta - lambda).abs() < 1e-6 {
                return Ok(CertRow {
                    cells: cert_row(
                        "sharpness",
                        Some(lambda),
                        Some(zeta),
                        None,
                        None,
                        Some(n),
                        None,
                        None,
                        "skip",
                    ),
                    failed: false,
                    log: Some(format!(
                        "skipping sharpness row lambda={lambda}, zeta={zeta}, n={n}: \
                         evaluation point meets the spectrum"
                    )),
                });
            }
            let gap = certify_sharpness_theorem1(lambda, n, zeta)?;
            let status = if gap < CERT_TOL { "pass" } else { "fail" };
            Ok(CertRow {
                cells: cert_row(
                    "sharpness",
                    Some(lambda),
                    Some(zeta),
                    None,
                    None,
                    Some(n),
                    None,
                    Some(gap),
                    status,
                ),
                failed: gap >= CERT_TOL,
                log: None,
            })
        })
        .collect()
}

fn certify_supremum_rows() -> Result<Vec<CertRow>, CliError> {
    let mut grid = Vec::new();
    for &zeta in &[0.0, 0.3, 0.6, 0.9] {
        for &r in &[0.3, 0.5, 0.7] {
            for &n in &[2usize, 4, 8] {
                grid.push((zeta, r, n));
            }
        }
    }
    grid.into_par_iter()
        .map(|(zeta, r, n)| {
            let sup = sup_resolvent_r(Complex64::new(zeta, 0.0), r, n)?;
            let gap = sup.certificate_gap;
            let status = if gap < CERT_TOL { "pass" } else { "fail" };
            Ok(CertRow {
                cells: cert_row(
                    "supremum",
                    None,
                    Some(zeta),
                    Some(r),
                    None,
                    Some(n),
                    None,
                    Some(gap),
                    status,
                ),
                failed: gap >= CERT_TOL,
                log: None,
            })
        })
        .collect()
}

fn certify_boundary_rows() -> Result<Vec<CertRow>, CliError> {
    let mut grid = Vec::new();
    for n1 in 1..=6usize {
        for &n2 in &[1usize, 3] {
            for &rho1 in &[0.0, 0.4, 0.8] {
                grid.push((n1, n2, rho1));
            }
        }
    }
    grid.into_par_iter()
        .map(|(n1, n2, rho1)| {
            let sup = ds_constant_sup(n1, n2, rho1)?;
            let gap = sup.certificate_gap;
            let status = if gap < CERT_TOL { "pass" } else { "fail" };
            Ok(CertRow {
                cells: cert_row(
                    "boundary",
                    None,
                    None,
                    None,
                    Some(rho1),
                    Some(n1),
                    Some(n2),
                    Some(gap),
                    status,
                ),
                failed: gap >= CERT_TOL,
                log: None,
            })
        })
        .collect()
}

fn run_certify(args: CertifyArgs) -> Result<u8, CliError> {
    let mut rows = Vec::new();
    if matches!(args.family, Family::All | Family::Sharpness) {
        rows.extend(certify_sharpness_rows()?);
    }
    if matches!(args.family, Family::All | Family::Supremum) {
        rows.extend(certify_supremum_rows()?);
    }
    if matches!(args.family, Family::All | Family::Boundary) {
        rows.extend(certify_boundary_rows()?);
    }
    for row in &rows {
        if let Some(log) = &row.log {
            eprintln!("{log}");
        }
    }
    let failures = rows.iter().filter(|r| r.failed).count();
    let cells: Vec<Vec<String>> = rows.into_iter().map(|r| r.cells).collect();
    let table = csv_table(
        &["family", "lambda", "zeta", "r", "rho1", "n", "n2", "gap", "status"],
        &cells,
    );
    emit(&args.output, &table)?;
    if failures == 0 {
        Ok(0)
    } else {
        eprintln!("error: {failures} certificate(s) with gap >= {CERT_TOL:e}");
        Ok(1)
    }
}

fn run_audit(args: AuditArgs) -> Result<u8, CliError> {
    let (summary, ratios) = random_contraction_audit_detailed(args.n, args.trials, args.seed)?;
    emit(&args.output, &to_json(&summary))?;
    if let Some(path) = &args.histogram {
        let mut counts = [0usize; 21];
        for &ratio in &ratios {
            let bin = ((ratio / 0.05) as usize).min(20);
            counts[bin] += 1;
        }
        let rows: Vec<Vec<String>> = counts
            .iter()
            .enumerate()
            .map(|(i, &count)| {
                vec![
                    format!("{:.2}", 0.05 * i as f64),
                    format!("{:.2}", 0.05 * (i + 1) as f64),
                    count.to_string(),
                ]
            })
            .collect();
        let table = csv_table(&["ratio_low", "ratio_high", "count"], &rows);
        fs::write(path, table).map_err(|e| CliError::Io(path.clone(), e))?;
    }
    if summary.violations == 0 {
        Ok(0)
    } else {
        eprintln!("error: {} trial(s) violated a bound", summary.violations);
        Ok(1)
    }
}

/// Root-counting case grid: triples straddling every threshold of the
/// trigonometric-root count, including both weight-window boundaries.
const LEMMA_CASES: &[(usize, f64, f64)] = &[
    (3, 1.0, 1.3),
    (6, 1.0, 0.7),
    (2, 0.6, 0.4),
    (5, 0.6, 0.4),
    (1, 0.5, 1.5),
    (2, 0.5, 1.5),
    (4, 0.8, 1.5),
    (5, 0.8, 1.5),
    (1, 0.3, 1.8),
    (2, 0.3, 1.8),
    (1, 0.5, 1.6),
    (2, 0.5, 1.6),
    (6, 0.5, 1.6),
    (7, 0.9, 0.5),
    (8, 0.9, 0.5),
    (1, 0.2, 0.3),
    (2, 0.2, 0.3),
    (5, 0.2, 0.3),
    (2, 0.5, 0.6),
    (5, 0.5, 0.6),
    (4, 0.8, 1.0),
    (5, 0.8, 1.0),
];

fn sweep_row(n: usize, r: f64, beta: f64) -> Result<Vec<String>, CliError> {
    let p = ExtremalParams::new(n, r, beta)?;
    let (norm, method) = xnorm_auto(&p)?;
    let method = match method {
        XnormMethod::ClosedForm => "closed_form",
        XnormMethod::CharEq => "char_eq",
        XnormMethod::Oracle => "oracle",
    };
    let limit = xnorm_limit(r, beta).ok();
    let (predicted, found) = match count_trig_roots(&p) {
        Ok(count) => {
            let scanned = scan_trig_roots(&p, 512usize.max(8 * n))?;
            (Some(count), Some(2 * scanned.len()))
        }
        Err(_) => (None, None),
    };
    Ok(vec![
        n.to_string(),
        fmt17(r),
        fmt17(beta),
        fmt17(norm),
        method.to_string(),
        limit.map(fmt17).unwrap_or_default(),
        predicted.map(|v| v.to_string()).unwrap_or_default(),
        found.map(|v| v.to_string()).unwrap_or_default(),
    ])
}

fn run_sweep(args: SweepArgs) -> Result<u8, CliError> {
    let grid: Vec<(usize, f64, f64)> = if args.lemma_cases {
        LEMMA_CASES.to_vec()
    } else {
        let n_max = args.n_max.expect("clap requires n_max without --lemma-cases");
        let r = args.r.expect("clap requires r without --lemma-cases");
        let beta = args.beta.expect("clap requires beta without --lemma-cases");
        if args.n_min == 0 || args.n_min > n_max {
            return Err(CoreError::OutOfDomain {
                details: format!("need 1 <= n_min <= n_max, got {} and {n_max}", args.n_min),
            }
            .into());
        }
        (args.n_min..=n_max).map(|n| (n, r, beta)).collect()
    };
    let rows: Vec<Vec<String>> = grid
        .into_par_iter()
        .map(|(n, r, beta)| sweep_row(n, r, beta))
        .collect::<Result<_, _>>()?;
    let table = csv_table(
        &["n", "r", "beta", "norm", "method", "limit", "predicted_roots", "found_roots"],
        &rows,
    );
    emit(&args.output, &table)?;
    Ok(0)
}

fn run_roots(args: RootsArgs) -> Result<u8, CliError> {
    let p = ExtremalParams::new(args.n, args.r, args.beta)?;
    let census = root_census(&p).map_err(|e| match e {
        CoreError::NoRootFound { .. } | CoreError::GridTooCoarse { .. } => CliError::Census(e),
        other => CliError::Domain(other),
    })?;
    emit(&args.output, &to_json(&census))?;
    Ok(0)
}
