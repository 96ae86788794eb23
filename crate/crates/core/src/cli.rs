//! Command-line front end: dataset simulation, analytic evaluation,
//! criterion grid scans and moment tables.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 data quality, 5 numerical
//! inconsistency. Scalar results go to stdout as JSON; grids go to CSV
//! files with a JSON provenance sidecar recording the run configuration
//! and a SHA-256 checksum of any input dataset.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bhdsim::{self, SimConfig};
use crate::error::Error;
use crate::estimator::{
    estimate_gbm, det_with_error, phase_uniformity, sample_moment, CovarianceMode,
    DatasetCriterion, QuadratureDataset,
};
use crate::gbm::{grid_scan, CriterionResult, CriterionSource, GbmSpec, Grid, PresetKind};
use crate::states::StateModel;

/// Bins of the phase-uniformity gate applied to ingested datasets.
const PHASE_BINS: usize = 20;

/// Significance magnitude below which a scan point is flagged as not
/// statistically conclusive.
const SIGNIFICANCE_MASK: f64 = 5.0;

#[derive(Parser, Debug)]
#[command(
    name = "nonclass",
    version,
    about = "Nonclassicality criteria for single-mode optical states",
    long_about = "Evaluates matrix determinant criteria for nonclassicality, either \
                  analytically from a closed-form state model or statistically from \
                  balanced-homodyne quadrature data with error propagation."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate balanced-homodyne quadrature records to a dataset file.
    Simulate(SimulateArgs),
    /// Evaluate one criterion determinant; JSON result on stdout.
    Eval(EvalArgs),
    /// Scan a criterion family over a phase-space grid; CSV output.
    Scan(ScanArgs),
    /// Estimate normally ordered moments from a dataset; JSON on stdout.
    Moments(MomentsArgs),
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Full simulation configuration as a JSON file.
    #[arg(long, conflicts_with_all = ["state", "samples", "seed"])]
    config: Option<PathBuf>,
    /// State model JSON file.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Detection efficiency in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    efficiency: f64,
    /// Number of quadrature records.
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Phase schedule: uniform random draws or a triangular sweep.
    #[arg(long, value_enum, default_value_t = PhaseModeArg::Uniform)]
    phase_mode: PhaseModeArg,
    /// Sweep period in samples (triangular mode only).
    #[arg(long, default_value_t = 10_000)]
    sweep_period: u64,
    /// Output dataset path.
    #[arg(long)]
    out: PathBuf,
    /// Force deterministic output (generation is always deterministic;
    /// the flag is recorded in provenance).
    #[arg(long)]
    reproducible: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PhaseModeArg {
    Uniform,
    Sweep,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    criterion: CriterionArgs,
    /// Phase-space point for beta-parameterized presets, as `re,im`.
    #[arg(long, default_value = "0,0", value_parser = parse_beta)]
    beta: Complex64,
    /// Covariance mode for statistical error propagation.
    #[arg(long, value_enum, default_value_t = CovArg::Full)]
    cov: CovArg,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Criterion family (scans accept presets only).
    #[arg(long)]
    preset: String,
    /// Grid bounds as `remin:remax:step,immin:immax:step`.
    #[arg(long, value_parser = parse_grid)]
    grid: Grid,
    /// Covariance mode for statistical error propagation.
    #[arg(long, value_enum, default_value_t = CovArg::Full)]
    cov: CovArg,
    /// Output CSV path; a `<out>.meta.json` sidecar records provenance.
    #[arg(long)]
    out: PathBuf,
    /// Recorded in provenance; evaluation order is always deterministic.
    #[arg(long)]
    reproducible: bool,
}

#[derive(Args, Debug)]
struct MomentsArgs {
    /// Dataset path.
    #[arg(long)]
    data: PathBuf,
    /// Highest total moment order k + l.
    #[arg(long, default_value_t = 2)]
    limit: u32,
}

/// Exactly one of an analytic state model or a dataset.
#[derive(Args, Debug)]
struct SourceArgs {
    /// State model JSON file (analytic evaluation).
    #[arg(long, conflicts_with = "data")]
    state: Option<PathBuf>,
    /// Quadrature dataset file (statistical evaluation).
    #[arg(long)]
    data: Option<PathBuf>,
}

/// Preset name or an explicit criterion spec; exactly one.
#[derive(Args, Debug)]
struct CriterionArgs {
    /// Named criterion family.
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// Explicit criterion spec as a JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CovArg {
    Full,
    Diagonal,
}

impl From<CovArg> for CovarianceMode {
    fn from(v: CovArg) -> CovarianceMode {
        match v {
            CovArg::Full => CovarianceMode::Full,
            CovArg::Diagonal => CovarianceMode::Diagonal,
        }
    }
}

fn parse_beta(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => re
            .trim()
            .parse::<f64>()
            .map(|r| Complex64::new(r, 0.0))
            .map_err(|e| format!("bad beta '{s}': {e}")),
        [re, im] => {
            let r = re.trim().parse::<f64>().map_err(|e| format!("bad beta '{s}': {e}"))?;
            let i = im.trim().parse::<f64>().map_err(|e| format!("bad beta '{s}': {e}"))?;
            Ok(Complex64::new(r, i))
        }
        _ => Err(format!("beta must be 're' or 're,im', got '{s}'")),
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let axes: Vec<&str> = s.split(',').collect();
    if axes.len() != 2 {
        return Err("grid must be 'remin:remax:step,immin:immax:step'".into());
    }
    let parse_axis = |axis: &str| -> Result<[f64; 3], String> {
        let parts: Vec<&str> = axis.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("axis '{axis}' must be 'min:max:step'"));
        }
        let mut out = [0.0; 3];
        for (k, p) in parts.iter().enumerate() {
            out[k] = p.trim().parse::<f64>().map_err(|e| format!("axis '{axis}': {e}"))?;
        }
        Ok(out)
    };
    let re = parse_axis(axes[0])?;
    let im = parse_axis(axes[1])?;
    let grid = Grid {
        re_min: re[0],
        re_max: re[1],
        re_step: re[2],
        im_min: im[0],
        im_max: im[1],
        im_step: im[2],
    };
    grid.validate().map_err(|e| e.to_string())?;
    Ok(grid)
}

/// Map a library error to the documented exit code.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Parse { .. } => 3,
        Error::DataQuality(_) | Error::InsufficientData(_) => 4,
        Error::NumericalInconsistency(_) | Error::Range { .. } | Error::Pole => 5,
        _ => 2,
    }
}

/// Parse the process arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Moments(a) => cmd_moments(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> crate::Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad {what} JSON in {}: {e}", path.display())))
}

fn load_state(path: &Path) -> crate::Result<StateModel> {
    let state: StateModel = read_json(path, "state model")?;
    state.validate()?;
    Ok(state)
}

fn load_dataset(path: &Path) -> crate::Result<QuadratureDataset> {
    let (data, report) = bhdsim::read_dataset(path)?;
    if report.normalized_phases > 0 {
        eprintln!(
            "warning: {} phase values outside [0, pi) were normalized",
            report.normalized_phases
        );
    }
    let uniformity = phase_uniformity(&data, PHASE_BINS)?;
    if !uniformity.pass {
        return Err(Error::DataQuality(format!(
            "phase distribution is not uniform (chi2 {:.1} over {} bins, limit {:.1})",
            uniformity.chi2, PHASE_BINS, uniformity.threshold
        )));
    }
    Ok(data)
}

fn sha256_file(path: &Path) -> crate::Result<String> {
    let bytes = fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

/// Provenance record written next to every output file.
#[derive(Serialize)]
struct Provenance<'a> {
    tool: &'a str,
    version: &'a str,
    command: &'a str,
    config: serde_json::Value,
    dataset_sha256: Option<String>,
    reproducible: bool,
}

fn write_sidecar(out: &Path, prov: &Provenance) -> crate::Result<()> {
    let mut side = out.as_os_str().to_owned();
    side.push(".meta.json");
    let text = serde_json::to_string_pretty(prov).expect("provenance serializes");
    fs::write(PathBuf::from(side), text)?;
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> crate::Result<()> {
    let config: SimConfig = if let Some(path) = &args.config {
        read_json(path, "simulation config")?
    } else {
        let state_path = args
            .state
            .as_ref()
            .ok_or_else(|| Error::Config("simulate needs --config or --state".into()))?;
        let samples = args
            .samples
            .ok_or_else(|| Error::Config("simulate needs --samples with --state".into()))?;
        SimConfig {
            state: load_state(state_path)?,
            efficiency: args.efficiency,
            samples,
            seed: args.seed,
            phase_mode: match args.phase_mode {
                PhaseModeArg::Uniform => bhdsim::PhaseMode::UniformRandom,
                PhaseModeArg::Sweep => bhdsim::PhaseMode::TriangularSweep { period: args.sweep_period },
            },
        }
    };
    let data = bhdsim::generate(&config)?;
    bhdsim::write_dataset(&data, &args.out)?;
    let prov = Provenance {
        tool: "nonclass",
        version: env!("CARGO_PKG_VERSION"),
        command: "simulate",
        config: serde_json::to_value(&config).expect("config serializes"),
        dataset_sha256: Some(sha256_file(&args.out)?),
        reproducible: args.reproducible,
    };
    write_sidecar(&args.out, &prov)?;
    eprintln!("wrote {} records to {}", data.len(), args.out.display());
    Ok(())
}

fn resolve_spec(criterion: &CriterionArgs, beta: Complex64) -> crate::Result<GbmSpec> {
    match (&criterion.preset, &criterion.spec) {
        (Some(name), None) => crate::gbm::preset(name, beta),
        (None, Some(path)) => {
            let spec: GbmSpec = read_json(path, "criterion spec")?;
            spec.validate()?;
            Ok(spec)
        }
        _ => Err(Error::Config("give exactly one of --preset or --spec".into())),
    }
}

/// JSON document emitted by `eval`.
#[derive(Serialize)]
struct EvalOutput {
    spec: GbmSpec,
    result: CriterionResult,
    samples: Option<usize>,
    dataset_sha256: Option<String>,
}

fn cmd_eval(args: EvalArgs) -> crate::Result<()> {
    let spec = resolve_spec(&args.criterion, args.beta)?;
    let output = match (&args.source.state, &args.source.data) {
        (Some(state_path), None) => {
            let state = load_state(state_path)?;
            EvalOutput {
                result: state.evaluate(&spec)?,
                spec,
                samples: None,
                dataset_sha256: None,
            }
        }
        (None, Some(data_path)) => {
            let data = load_dataset(data_path)?;
            let matrix = estimate_gbm(&data, &spec)?;
            EvalOutput {
                result: det_with_error(&matrix, args.cov.into())?,
                spec,
                samples: Some(matrix.samples()),
                dataset_sha256: Some(sha256_file(data_path)?),
            }
        }
        _ => return Err(Error::Config("give exactly one of --state or --data".into())),
    };
    println!("{}", serde_json::to_string_pretty(&output).expect("output serializes"));
    Ok(())
}

fn cmd_scan(args: ScanArgs) -> crate::Result<()> {
    let family = PresetKind::from_name(&args.preset)?;
    let mut dataset_sha256 = None;
    let points = match (&args.source.state, &args.source.data) {
        (Some(state_path), None) => {
            let state = load_state(state_path)?;
            grid_scan(&state, family, &args.grid)?
        }
        (None, Some(data_path)) => {
            let data = load_dataset(data_path)?;
            dataset_sha256 = Some(sha256_file(data_path)?);
            let source = DatasetCriterion { data: &data, cov_mode: args.cov.into() };
            grid_scan(&source, family, &args.grid)?
        }
        _ => return Err(Error::Config("give exactly one of --state or --data".into())),
    };

    let mut csv = String::from("re_beta,im_beta,det,sigma,significance,significant,status\n");
    let mut failures = 0usize;
    for p in &points {
        match &p.result {
            Ok(r) => {
                let (sig, flag) = match r.significance {
                    Some(s) => (format!("{s:.6e}"), (s.abs() >= SIGNIFICANCE_MASK).to_string()),
                    None => (String::new(), String::new()),
                };
                writeln!(
                    csv,
                    "{:.6e},{:.6e},{:.6e},{:.6e},{},{},ok",
                    p.beta.re, p.beta.im, r.det, r.sigma, sig, flag
                )
                .expect("string write");
            }
            Err(e) => {
                failures += 1;
                writeln!(
                    csv,
                    "{:.6e},{:.6e},,,,,{}",
                    p.beta.re,
                    p.beta.im,
                    e.to_string().replace(',', ";")
                )
                .expect("string write");
            }
        }
    }
    fs::write(&args.out, csv)?;
    let prov = Provenance {
        tool: "nonclass",
        version: env!("CARGO_PKG_VERSION"),
        command: "scan",
        config: serde_json::json!({
            "preset": family.name(),
            "grid": args.grid,
            "cov": match args.cov { CovArg::Full => "full", CovArg::Diagonal => "diagonal" },
            "state": args.source.state.as_ref().map(|p| p.display().to_string()),
            "data": args.source.data.as_ref().map(|p| p.display().to_string()),
        }),
        dataset_sha256,
        reproducible: args.reproducible,
    };
    write_sidecar(&args.out, &prov)?;
    if failures == points.len() {
        return Err(Error::NumericalInconsistency(format!(
            "all {failures} grid points failed"
        )));
    }
    eprintln!(
        "wrote {} points ({} failed) to {}",
        points.len(),
        failures,
        args.out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct MomentRow {
    k: u32,
    l: u32,
    value: [f64; 2],
    std_error: f64,
}

fn cmd_moments(args: MomentsArgs) -> crate::Result<()> {
    let data = load_dataset(&args.data)?;
    let mut rows = Vec::new();
    for k in 0..=args.limit {
        for l in 0..=(args.limit - k) {
            let e = sample_moment(&data, k, l)?;
            rows.push(MomentRow {
                k,
                l,
                value: [e.value.re, e.value.im],
                std_error: e.std_error(),
            });
        }
    }
    let out = serde_json::json!({
        "samples": data.len(),
        "dataset_sha256": sha256_file(&args.data)?,
        "moments": rows,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("output serializes"));
    Ok(())
}
