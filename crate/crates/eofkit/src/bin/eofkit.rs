//! Command-line front end: state generation, the three EoF routes,
//! verification sweeps and JSON reports.
//!
//! Exit status: 0 on success, 1 on validation failure (bad state file,
//! norm violation, residual above tolerance, ...), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eofkit::measurement::{estimate_eof_with, substream_seed, EstimateOptions, ShotPlan};
use eofkit::projection::{spectrum_census, EnumerationMode};
use eofkit::reconstruction::{reconstruct_eof, verify_theorem, Basis};
use eofkit::state::{eof_direct, gen_state, schmidt_rank, PureState, StateKind};

#[derive(Parser)]
#[command(
    name = "eofkit",
    version,
    about = "Entanglement of formation for bipartite pure states: direct, block-reconstructed, and shot-estimated"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum KindArg {
    Bell,
    MaxEntangled,
    HaarRandom,
    SchmidtDiag,
    Product,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Paper,
    Rect,
}

impl From<ModeArg> for EnumerationMode {
    fn from(value: ModeArg) -> Self {
        match value {
            ModeArg::Paper => EnumerationMode::Paper,
            ModeArg::Rect => EnumerationMode::Rect,
        }
    }
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Paper => "paper",
            ModeArg::Rect => "rect",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Schmidt,
    Raw,
}

impl From<BasisArg> for Basis {
    fn from(value: BasisArg) -> Self {
        match value {
            BasisArg::Schmidt => Basis::Schmidt,
            BasisArg::Raw => Basis::Raw,
        }
    }
}

impl BasisArg {
    fn name(self) -> &'static str {
        match self {
            BasisArg::Schmidt => "schmidt",
            BasisArg::Raw => "raw",
        }
    }
}

#[derive(Args)]
struct OutArg {
    /// Write the JSON output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a state file.
    Gen {
        /// State family to generate.
        #[arg(long)]
        kind: KindArg,
        /// Side-A dimension (doubles as d for max_entangled).
        #[arg(long)]
        m: Option<usize>,
        /// Side-B dimension.
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated Schmidt values for schmidt_diag.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        /// Seed for the random kinds.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Direct EoF: entropy of the Schmidt spectrum.
    Direct {
        /// State file to analyze.
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Reconstruct the EoF from the two-qubit block sum.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Block enumeration range and normalization.
        #[arg(long, value_enum, default_value_t = ModeArg::Rect)]
        mode: ModeArg,
        /// Basis the block sum is evaluated in.
        #[arg(long, value_enum, default_value_t = BasisArg::Schmidt)]
        basis: BasisArg,
        /// Acknowledge that raw-basis totals are demonstrative only.
        #[arg(long)]
        allow_uncertified: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Estimate the EoF from simulated finite-shot measurements.
    Measure {
        #[arg(long = "in")]
        input: PathBuf,
        /// Shots per observable.
        #[arg(long)]
        shots: u64,
        /// Master seed for the measurement sub-streams.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Rect)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = BasisArg::Schmidt)]
        basis: BasisArg,
        #[arg(long)]
        allow_uncertified: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Randomized sweep checking the reconstruction against the direct
    /// route.
    Verify {
        /// Side-A dimension of the random states.
        #[arg(long)]
        m: usize,
        /// Side-B dimension of the random states.
        #[arg(long)]
        n: usize,
        /// Number of random states.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Rect)]
        mode: ModeArg,
        /// Maximum residual accepted as a pass.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Multiplicity census of projected-block eigenvalues (Schmidt
    /// basis).
    Census {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Rect)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Provenance block embedded in every report.
#[derive(Serialize)]
struct RunConfig {
    command: &'static str,
    input: Option<String>,
    out: Option<String>,
    kind: Option<&'static str>,
    m: Option<usize>,
    n: Option<usize>,
    lambda: Option<Vec<f64>>,
    mode: Option<&'static str>,
    basis: Option<&'static str>,
    shots: Option<u64>,
    seed: Option<u64>,
    count: Option<usize>,
    tol: Option<f64>,
    allow_uncertified: bool,
}

impl RunConfig {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            input: None,
            out: None,
            kind: None,
            m: None,
            n: None,
            lambda: None,
            mode: None,
            basis: None,
            shots: None,
            seed: None,
            count: None,
            tol: None,
            allow_uncertified: false,
        }
    }
}

#[derive(Serialize)]
struct DirectReport {
    config: RunConfig,
    eof_bits: f64,
    schmidt_values: Vec<f64>,
}

#[derive(Serialize)]
struct ReconstructOutput {
    config: RunConfig,
    #[serde(flatten)]
    report: eofkit::reconstruction::ReconstructionReport,
}

#[derive(Serialize)]
struct MeasureOutput {
    config: RunConfig,
    #[serde(flatten)]
    report: eofkit::measurement::EstimateReport,
}

#[derive(Serialize)]
struct VerifyReport {
    config: RunConfig,
    max_residual: f64,
    mean_residual: f64,
    states_checked: usize,
    pass: bool,
}

#[derive(Serialize)]
struct CensusReport {
    config: RunConfig,
    m: usize,
    n: usize,
    schmidt_rank: usize,
    multiplicities: std::collections::BTreeMap<usize, usize>,
    /// `(m−1)²` (paper) or `(m−1)(n−1)` (rect); meaningful for full-rank
    /// spectra.
    full_rank_expected_multiplicity: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn emit(out: &OutArg, json: String) -> Result<(), String> {
    match &out.out {
        Some(path) => fs::write(path, json + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn load_state(path: &PathBuf) -> Result<PureState, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PureState::from_json(&text, false).map_err(|e| e.to_string())
}

fn require_certified(basis: BasisArg, allow_uncertified: bool) -> Result<(), String> {
    if basis == BasisArg::Raw && !allow_uncertified {
        return Err(
            "--basis raw is demonstrative only (no correctness guarantee); \
             pass --allow-uncertified to proceed"
                .into(),
        );
    }
    Ok(())
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Gen {
            kind,
            m,
            n,
            lambda,
            seed,
            out,
        } => {
            let state_kind = match kind {
                KindArg::Bell => StateKind::Bell,
                KindArg::MaxEntangled => {
                    let d = m.ok_or("max_entangled needs --m (the local dimension)")?;
                    StateKind::MaxEntangled { d }
                }
                KindArg::HaarRandom => {
                    let m = m.ok_or("haar_random needs --m")?;
                    let n = n.ok_or("haar_random needs --n")?;
                    StateKind::HaarRandom { m, n }
                }
                KindArg::SchmidtDiag => {
                    let lambdas = lambda.ok_or("schmidt_diag needs --lambda")?;
                    let n = n.unwrap_or(lambdas.len());
                    StateKind::SchmidtDiag { lambdas, n }
                }
                KindArg::Product => {
                    let m = m.ok_or("product needs --m")?;
                    let n = n.ok_or("product needs --n")?;
                    StateKind::Product { m, n }
                }
            };
            let state = gen_state(&state_kind, seed).map_err(|e| e.to_string())?;
            // The state file is the whole output; it carries no config
            // block because its schema is fixed.
            emit(&out, state.to_json())
        }
        Command::Direct { input, out } => {
            let state = load_state(&input)?;
            let mut config = RunConfig::new("direct");
            config.input = Some(input.display().to_string());
            config.out = out.out.as_ref().map(|p| p.display().to_string());
            let report = DirectReport {
                eof_bits: eof_direct(&state),
                schmidt_values: state.schmidt().values,
                config,
            };
            emit(&out, pretty(&report))
        }
        Command::Reconstruct {
            input,
            mode,
            basis,
            allow_uncertified,
            out,
        } => {
            require_certified(basis, allow_uncertified)?;
            let state = load_state(&input)?;
            let report = reconstruct_eof(&state, mode.into(), basis.into())
                .map_err(|e| e.to_string())?;
            let mut config = RunConfig::new("reconstruct");
            config.input = Some(input.display().to_string());
            config.out = out.out.as_ref().map(|p| p.display().to_string());
            config.mode = Some(mode.name());
            config.basis = Some(basis.name());
            config.allow_uncertified = allow_uncertified;
            emit(&out, pretty(&ReconstructOutput { config, report }))
        }
        Command::Measure {
            input,
            shots,
            seed,
            mode,
            basis,
            allow_uncertified,
            out,
        } => {
            require_certified(basis, allow_uncertified)?;
            let state = load_state(&input)?;
            let plan = ShotPlan::new(shots, seed).map_err(|e| e.to_string())?;
            let options = EstimateOptions {
                basis: basis.into(),
                ..EstimateOptions::default()
            };
            let report = estimate_eof_with(&state, &plan, mode.into(), &options)
                .map_err(|e| e.to_string())?;
            let mut config = RunConfig::new("measure");
            config.input = Some(input.display().to_string());
            config.out = out.out.as_ref().map(|p| p.display().to_string());
            config.mode = Some(mode.name());
            config.basis = Some(basis.name());
            config.shots = Some(shots);
            config.seed = Some(seed);
            config.allow_uncertified = allow_uncertified;
            emit(&out, pretty(&MeasureOutput { config, report }))
        }
        Command::Verify {
            m,
            n,
            count,
            seed,
            mode,
            tol,
            out,
        } => {
            if count == 0 {
                return Err("--count must be at least 1".into());
            }
            let mut max_residual = 0.0f64;
            let mut sum = 0.0f64;
            for i in 0..count {
                let state = gen_state(
                    &StateKind::HaarRandom { m, n },
                    substream_seed(seed, i as u64, 0),
                )
                .map_err(|e| e.to_string())?;
                let residual = verify_theorem(&state, mode.into()).map_err(|e| e.to_string())?;
                max_residual = max_residual.max(residual);
                sum += residual;
            }
            let pass = max_residual <= tol;
            let mut config = RunConfig::new("verify");
            config.out = out.out.as_ref().map(|p| p.display().to_string());
            config.m = Some(m);
            config.n = Some(n);
            config.mode = Some(mode.name());
            config.seed = Some(seed);
            config.count = Some(count);
            config.tol = Some(tol);
            let report = VerifyReport {
                config,
                max_residual,
                mean_residual: sum / count as f64,
                states_checked: count,
                pass,
            };
            emit(&out, pretty(&report))?;
            if pass {
                Ok(())
            } else {
                Err(format!(
                    "max residual {max_residual:.3e} exceeds tolerance {tol:.3e}"
                ))
            }
        }
        Command::Census { input, mode, out } => {
            let state = load_state(&input)?.to_schmidt_basis();
            let multiplicities =
                spectrum_census(&state, mode.into()).map_err(|e| e.to_string())?;
            let m = state.dim_a();
            let n = state.dim_b();
            let rank = schmidt_rank(&state.schmidt().values);
            let expected = match EnumerationMode::from(mode) {
                EnumerationMode::Paper => (m - 1) * (m - 1),
                EnumerationMode::Rect => (m - 1) * (n - 1),
            };
            let mut config = RunConfig::new("census");
            config.input = Some(input.display().to_string());
            config.out = out.out.as_ref().map(|p| p.display().to_string());
            config.mode = Some(mode.name());
            let report = CensusReport {
                config,
                m,
                n,
                schmidt_rank: rank,
                multiplicities,
                full_rank_expected_multiplicity: expected,
            };
            emit(&out, pretty(&report))
        }
    }
}
