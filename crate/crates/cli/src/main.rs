//! Command-line surface for the frame toolkit: design frames with prescribed
//! data, evaluate potentials against their sharp bounds, transport frames
//! onto perturbed frame operators, and run local-minimality probes.
//!
//! All payloads are JSON. Frames are `{"d": .., "m": .., "vectors":
//! [[[re, im], ..], ..]}`; operators are row-major nested arrays of
//! `[re, im]` pairs. Exit codes: 0 success, 1 usage or input error,
//! 2 mathematical infeasibility, 3 numerical non-convergence.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use framecraft::cgu::{self, CyclicUnitaryGroup};
use framecraft::frame::matrix_from_rows;
use framecraft::majorization::{self, NormProfile, Spectrum};
use framecraft::perturb;
use framecraft::potential::{self, Potential, ProbeConstraint};
use framecraft::synthesis;
use framecraft::{Error, Frame, HermitianOperator};

#[derive(Parser)]
#[command(
    name = "framecraft",
    version,
    about = "Design and analysis of finite frames: prescribed-spectrum synthesis, \
             convex potentials with sharp bounds, and frame-operator perturbation transports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a frame and emit it as JSON
    #[command(subcommand)]
    Design(DesignCommand),
    /// Evaluate a potential on a frame, with bounds and attainment flags
    Potential(PotentialArgs),
    /// Transport a frame onto a target frame operator
    #[command(subcommand)]
    Perturb(PerturbCommand),
    /// Randomized local-minimality probe around a frame
    Probe(ProbeArgs),
}

#[derive(Subcommand)]
enum DesignCommand {
    /// Tight frame with prescribed squared norms (requires zero irregularity)
    Tight(TightArgs),
    /// Potential minimizer with prescribed squared norms
    Minimizer(TightArgs),
    /// Frame with prescribed spectrum and prescribed squared norms
    SchurHorn(SchurHornArgs),
    /// Orbit minimizer under a cyclic unitary group
    CguMinimizer(CguArgs),
}

#[derive(Args)]
struct TightArgs {
    /// Squared norms, comma separated (sorted non-increasingly)
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<f64>,
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check the construction postconditions and append a verification block
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct SchurHornArgs {
    /// Prescribed frame-operator eigenvalues, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<f64>,
    /// Squared norms, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct CguArgs {
    /// Seed squared norms, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<f64>,
    /// Ambient dimension (must be a multiple of the group order)
    #[arg(long)]
    d: usize,
    /// Group order
    #[arg(long)]
    n: usize,
    /// Generator matrix file (row-major [re, im] pairs); defaults to the
    /// canonical block cyclic shift on d coordinates
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct PotentialArgs {
    /// Frame JSON file
    #[arg(long = "in")]
    input: PathBuf,
    /// Potential name: bf, power:N, xlogx
    #[arg(long)]
    f: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PerturbCommand {
    /// Polar transport: exact operator hit, norms uncontrolled
    Polar(PerturbArgs),
    /// Norm-preserving transport via a unitary-group section solve
    NormPreserving(PerturbArgs),
}

#[derive(Args)]
struct PerturbArgs {
    /// Frame JSON file
    #[arg(long = "in")]
    input: PathBuf,
    /// Target operator file (row-major [re, im] matrix)
    #[arg(long)]
    target: PathBuf,
    /// Solver tolerance (default 1e-10; FRAMECRAFT_TOL overrides)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    /// Frame JSON file
    #[arg(long = "in")]
    input: PathBuf,
    /// Potential name: bf, power:N, xlogx
    #[arg(long)]
    f: String,
    /// Constraint set sampled by the probe
    #[arg(long, value_enum, default_value_t = ConstraintArg::Norms)]
    constraint: ConstraintArg,
    /// Perturbation radius in vector-vector distance
    #[arg(long, default_value_t = 1e-2)]
    radius: f64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    /// Keep every vector norm (the set B(a))
    Norms,
    /// Keep only the total squared norm (the set A(c))
    Trace,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("{}", error_json(&err));
            std::process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible(_)
        | Error::InfeasibleTight { .. }
        | Error::InfeasibleBasis
        | Error::NoDescent
        | Error::DegeneratePolar => 2,
        Error::NoConvergence { .. } => 3,
        _ => 1,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidInput(_) => "invalid-input",
        Error::NoDescent => "no-descent",
        Error::StepTooLarge { .. } => "step-too-large",
        Error::Infeasible(_) => "infeasible",
        Error::InfeasibleTight { .. } => "infeasible-tight",
        Error::BudgetExceeded { .. } => "budget-exceeded",
        Error::InvalidGroupOrder { .. } => "invalid-order",
        Error::NonPrimitiveGroup { .. } => "non-primitive",
        Error::InfeasibleBasis => "infeasible-basis",
        Error::DegeneratePolar => "degenerate-polar",
        Error::NoConvergence { .. } => "no-convergence",
    }
}

fn error_json(err: &Error) -> String {
    let mut payload = json!({
        "error": err.to_string(),
        "kind": error_kind(err),
    });
    if let Error::NoConvergence { report } = err {
        payload["report"] = serde_json::to_value(report).expect("report serializes");
    }
    payload.to_string()
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Design(design) => run_design(design),
        Command::Potential(args) => run_potential(args),
        Command::Perturb(mode) => run_perturb(mode),
        Command::Probe(args) => run_probe(args),
    }
}

// --- IO helpers ---------------------------------------------------------------

fn io_error(context: &str, err: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("{context}: {err}"))
}

fn read_frame(path: &Path) -> Result<Frame, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io_error(&format!("cannot read {}", path.display()), e))?;
    serde_json::from_str(&text)
        .map_err(|e| io_error(&format!("cannot parse frame from {}", path.display()), e))
}

fn read_operator(path: &Path) -> Result<HermitianOperator, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io_error(&format!("cannot read {}", path.display()), e))?;
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text)
        .map_err(|e| io_error(&format!("cannot parse matrix from {}", path.display()), e))?;
    HermitianOperator::new(matrix_from_rows(&rows)?)
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("JSON serialization");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| io_error(&format!("cannot write {}", path.display()), e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn profile_from_args(a: &[f64]) -> Result<NormProfile, Error> {
    NormProfile::from_unsorted(a.to_vec())
}

fn default_tol() -> f64 {
    std::env::var("FRAMECRAFT_TOL")
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
        .unwrap_or(perturb::DEFAULT_SOLVE_TOL)
}

// --- design -------------------------------------------------------------------

fn run_design(design: DesignCommand) -> Result<(), Error> {
    match design {
        DesignCommand::Tight(args) => {
            let a = profile_from_args(&args.a)?;
            let frame = synthesis::tight_frame(&a, args.d)?;
            let expected = vec![a.total() / args.d as f64; args.d];
            finish_design(frame, &a, &expected, args.verify, args.out.as_deref())
        }
        DesignCommand::Minimizer(args) => {
            let a = profile_from_args(&args.a)?;
            let frame = synthesis::minimizer_frame(&a, args.d)?;
            let expected = majorization::constrained_minimal_vector(&a, args.d)?;
            finish_design(
                frame,
                &a,
                expected.as_slice(),
                args.verify,
                args.out.as_deref(),
            )
        }
        DesignCommand::SchurHorn(args) => {
            let a = profile_from_args(&args.a)?;
            let lambda = Spectrum::from_unsorted(args.lambda.clone())?;
            let frame = synthesis::schur_horn_frame(&lambda, &a)?;
            finish_design(
                frame,
                &a,
                lambda.as_slice(),
                args.verify,
                args.out.as_deref(),
            )
        }
        DesignCommand::CguMinimizer(args) => {
            let a = profile_from_args(&args.a)?;
            if args.n == 0 || args.d % args.n != 0 {
                return Err(Error::InvalidInput(format!(
                    "group order n={} must divide the dimension d={}",
                    args.n, args.d
                )));
            }
            let generator = match &args.input {
                Some(path) => read_operator_raw(path)?,
                None => cgu::block_shift_generator(args.n, args.d / args.n),
            };
            let group = CyclicUnitaryGroup::new(generator, args.n)?;
            if group.dim() != args.d {
                return Err(Error::InvalidInput(format!(
                    "generator is {}x{} but --d is {}",
                    group.dim(),
                    group.dim(),
                    args.d
                )));
            }
            let frame = cgu::cgu_minimizer(&group, &a)?;
            let repeated = cgu::repeated_profile(&a, args.n)?;
            let expected = majorization::constrained_minimal_vector(&repeated, args.d)?;
            finish_design(
                frame,
                &repeated,
                expected.as_slice(),
                args.verify,
                args.out.as_deref(),
            )
        }
    }
}

/// Reads a matrix file without the Hermitian gate (group generators are
/// unitary, not Hermitian).
fn read_operator_raw(path: &Path) -> Result<framecraft::CMatrix, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io_error(&format!("cannot read {}", path.display()), e))?;
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text)
        .map_err(|e| io_error(&format!("cannot parse matrix from {}", path.display()), e))?;
    matrix_from_rows(&rows)
}

fn finish_design(
    frame: Frame,
    profile: &NormProfile,
    expected_spectrum: &[f64],
    verify: bool,
    out: Option<&Path>,
) -> Result<(), Error> {
    let mut payload = serde_json::to_value(&frame).expect("frame serializes");
    if verify {
        let norms = frame.squared_norms();
        let max_norm_error = norms
            .iter()
            .zip(profile.as_slice())
            .map(|(n, a)| (n - a).abs())
            .fold(0.0, f64::max);
        let spectrum = frame.frame_operator().spectrum()?;
        let max_spectrum_error = spectrum
            .as_slice()
            .iter()
            .zip(expected_spectrum)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        let ok = max_norm_error <= 1e-9 && max_spectrum_error <= 1e-8;
        payload["verification"] = json!({
            "ok": ok,
            "max_norm_error": max_norm_error,
            "max_spectrum_error": max_spectrum_error,
            "expected_spectrum": expected_spectrum,
        });
        if !ok {
            emit(&payload, out)?;
            return Err(Error::InvalidInput(format!(
                "verification failed: norm error {max_norm_error:.3e}, spectrum error {max_spectrum_error:.3e}"
            )));
        }
    }
    emit(&payload, out)
}

// --- potential ----------------------------------------------------------------

fn run_potential(args: PotentialArgs) -> Result<(), Error> {
    let frame = read_frame(&args.input)?;
    let f = Potential::parse(&args.f)?;
    let value = potential::eval_potential(&f, &frame.frame_operator())?;
    let gram_value = potential::eval_potential_gram(&f, &frame)?;
    let bounds_block = match NormProfile::from_unsorted(frame.squared_norms()) {
        Ok(profile) if frame.dim() <= profile.len() => {
            let (lower, upper) = potential::potential_bounds_profile(&f, &profile, frame.dim())?;
            let lower_attained = (value - lower).abs() <= 1e-9 * lower.abs().max(1.0);
            let upper_attained = (value - upper).abs() <= 1e-9 * upper.abs().max(1.0);
            json!({
                "lower": lower,
                "upper": upper,
                "lower_attained": lower_attained,
                "upper_attained": upper_attained,
            })
        }
        _ => Value::Null, // zero vectors or m < d: profile bounds undefined
    };
    let mut payload = json!({
        "potential": f.name(),
        "d": frame.dim(),
        "m": frame.len(),
        "value": value,
        "gram_value": gram_value,
        "bounds": bounds_block,
        "tight": frame.frame_bounds().is_tight(),
    });
    if f == Potential::benedetto_fickus() {
        payload["welch_ratio"] = json!(potential::welch_ratio(&frame)?);
    }
    emit(&payload, args.out.as_deref())
}

// --- perturb ------------------------------------------------------------------

fn run_perturb(mode: PerturbCommand) -> Result<(), Error> {
    match mode {
        PerturbCommand::Polar(args) => {
            let frame = read_frame(&args.input)?;
            let target = read_operator(&args.target)?;
            let moved = perturb::polar_transport(&frame, &target)?;
            let payload = json!({
                "mode": "polar",
                "frame": serde_json::to_value(&moved).expect("frame serializes"),
                "vv_distance": frame.vv_distance(&moved)?,
            });
            emit(&payload, args.out.as_deref())
        }
        PerturbCommand::NormPreserving(args) => {
            let frame = read_frame(&args.input)?;
            let target = read_operator(&args.target)?;
            let tol = args.tol.unwrap_or_else(default_tol);
            let (moved, report) = perturb::norm_preserving_transport(&frame, &target, tol)?;
            let mut payload = json!({
                "mode": "norm-preserving",
                "frame": serde_json::to_value(&moved).expect("frame serializes"),
                "vv_distance": frame.vv_distance(&moved)?,
                "report": serde_json::to_value(&report).expect("report serializes"),
            });
            if report.reducible_warning {
                payload["warning"] = json!(
                    "frame is reducible (orthogonally partitionable); the section solve is not guaranteed"
                );
            }
            emit(&payload, args.out.as_deref())
        }
    }
}

// --- probe --------------------------------------------------------------------

fn run_probe(args: ProbeArgs) -> Result<(), Error> {
    let frame = read_frame(&args.input)?;
    let f = Potential::parse(&args.f)?;
    let constraint = match args.constraint {
        ConstraintArg::Norms => ProbeConstraint::FixedNorms,
        ConstraintArg::Trace => ProbeConstraint::FixedTotal,
    };
    let report =
        potential::local_min_probe(&frame, &f, constraint, args.radius, args.samples, args.seed)?;
    let payload = json!({
        "potential": f.name(),
        "constraint": match args.constraint {
            ConstraintArg::Norms => "norms",
            ConstraintArg::Trace => "trace",
        },
        "radius": args.radius,
        "samples": args.samples,
        "seed": args.seed,
        "base_value": report.base_value,
        "best_value": report.best_value,
        "descent_found": report.descent_found,
        "best_frame": serde_json::to_value(&report.best_frame).expect("frame serializes"),
    });
    emit(&payload, args.out.as_deref())
}
