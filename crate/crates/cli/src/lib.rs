// Copyright 2026 The SES Compiler Authors
// SPDX-License-Identifier: Apache-2.0

//! The `ses` command line: compile, prepare, simulate, expect and
//! bench-decompose.
//!
//! Exit codes are the only success channel: 0 success, 2 unreadable or
//! malformed input, 3 matrix not unitary, 4 verification failed, 5 state not
//! normalized, 6 observable not Hermitian.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ses_core::decompose::{HERMITIAN_TOL, UNITARY_TOL};
use ses_core::formats::{MatrixFile, ScheduleFile, StateFile};
use ses_core::linalg::global_phase_fidelity;
use ses_core::pulse::DEFAULT_GMAX_MHZ;
use ses_core::random::haar_unitary;
use ses_core::sim::{measure, schedule_unitary};
use ses_core::stats::fit_power_law;
use ses_core::{
    aba_decompose, compile_unitary, expectation_exact, expectation_protocol, prepare_state_schedule, run_schedule,
    spectral_decompose, Complex64, DensityMatrixState, DeviceParams, PrepMode, QuantumState, Readout, SesError,
    SesState,
};

/// Accepted distance of `|psi|^2` from 1 for state files.
pub const STATE_NORM_TOL: f64 = 1e-6;

/// Required global-phase fidelity of compiled schedules.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "ses", version, about = "Pulse compiler and simulator for single-excitation-subspace qubit chips")]
pub struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct DeviceArgs {
    /// Coupling strength g_max/2pi in MHz.
    #[arg(long = "gmax", default_value_t = DEFAULT_GMAX_MHZ)]
    pub gmax: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Linear,
    ThreeStep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a unitary matrix file into a pulse schedule.
    Compile {
        unitary: PathBuf,
        #[command(flatten)]
        device: DeviceArgs,
        /// Where to write the schedule (stdout if omitted and --json is not set).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a schedule preparing a target state from |1).
    Prepare {
        state: PathBuf,
        #[arg(long, value_enum, default_value = "three-step")]
        mode: ModeArg,
        #[command(flatten)]
        device: DeviceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a schedule on the exact simulator.
    Simulate {
        schedule: PathBuf,
        /// Initial qubit (1-based) or a state file.
        #[arg(long, default_value = "1")]
        initial: String,
        /// Number of readouts to sample.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, env = "SES_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Estimate an observable on a state or density matrix.
    Expect {
        observable: PathBuf,
        /// State file, or matrix file holding a density matrix.
        state: PathBuf,
        #[arg(long, conflicts_with = "exact")]
        shots: Option<u64>,
        /// Read probabilities straight off the simulator (the default without --shots).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        device: DeviceArgs,
        #[arg(long, env = "SES_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Time aba_decompose over matrix sizes and fit a power law.
    BenchDecompose {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, env = "SES_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub mod exit {
    pub const PARSE: i32 = 2;
    pub const NOT_UNITARY: i32 = 3;
    pub const VERIFICATION: i32 = 4;
    pub const NOT_NORMALIZED: i32 = 5;
    pub const NOT_HERMITIAN: i32 = 6;
}

impl From<SesError> for CliError {
    fn from(e: SesError) -> Self {
        let code = match e {
            SesError::NotUnitary { .. } => exit::NOT_UNITARY,
            SesError::NotHermitian { .. } => exit::NOT_HERMITIAN,
            SesError::NotNormalized { .. } => exit::NOT_NORMALIZED,
            SesError::Format(_)
            | SesError::InvalidMatrix(_)
            | SesError::DimensionMismatch { .. }
            | SesError::InvalidDevice(_)
            | SesError::InvalidPulse(_)
            | SesError::InvalidDensityMatrix(_)
            | SesError::NotSymmetric { .. } => exit::PARSE,
            _ => exit::VERIFICATION,
        };
        Self::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", path.display())))
}

fn device(args: &DeviceArgs) -> CliResult<DeviceParams> {
    Ok(DeviceParams::new(args.gmax, DeviceParams::default().name)?)
}

/// Reads a state file, accepting `|psi|^2` within [`STATE_NORM_TOL`] of 1.
pub fn load_state(path: &Path) -> CliResult<SesState> {
    state_from_file(&StateFile::parse(&read(path)?)?)
}

fn state_from_file(file: &StateFile) -> CliResult<SesState> {
    let amps = file.amplitudes()?;
    let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
    if (norm_sqr - 1.0).abs() > STATE_NORM_TOL || norm_sqr.is_nan() {
        return Err(SesError::NotNormalized { norm_sqr }.into());
    }
    Ok(SesState::normalized(amps)?)
}

fn load_state_or_density(path: &Path) -> CliResult<QuantumState> {
    let text = read(path)?;
    if let Ok(file) = StateFile::parse(&text) {
        return Ok(state_from_file(&file)?.into());
    }
    let m = MatrixFile::parse(&text)?.to_matrix()?;
    Ok(DensityMatrixState::new(m)?.into())
}

fn pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// What a command prints.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
}

#[derive(Serialize)]
struct ScheduleSummary {
    steps: usize,
    total_theta: f64,
    duration_ns: f64,
    g_max_mhz_over_2pi: f64,
}

fn summary(file: &ScheduleFile) -> ScheduleSummary {
    ScheduleSummary {
        steps: file.steps.len(),
        total_theta: file.total_theta,
        duration_ns: file.duration_ns,
        g_max_mhz_over_2pi: file.g_max_mhz_over_2pi,
    }
}

fn emit_schedule(file: &ScheduleFile, out: Option<&Path>, json: bool, text: &mut String) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, &file.to_json()),
        None if !json => {
            text.push_str(&file.to_json());
            text.push('\n');
            Ok(())
        }
        None => Ok(()),
    }
}

fn verification(fidelity: f64) -> CliResult<()> {
    if fidelity >= 1.0 - VERIFY_TOL {
        Ok(())
    } else {
        Err(CliError::new(exit::VERIFICATION, format!("verification fidelity {fidelity} below 1 - {VERIFY_TOL:e}")))
    }
}

fn cmd_compile(path: &Path, dev: &DeviceArgs, out: Option<&Path>, json: bool) -> CliResult<Output> {
    let u = MatrixFile::parse(&read(path)?)?.to_matrix()?;
    u.check_unitary(UNITARY_TOL)?;
    let schedule = compile_unitary(&u, &device(dev)?)?;
    let fidelity = global_phase_fidelity(&schedule_unitary(&schedule)?, &u)?;
    let file = ScheduleFile::from_schedule(&schedule);
    let s = summary(&file);
    let mut text = format!(
        "steps {}\ntotal_theta {:.6} rad\nduration {:.4} ns at g_max/2pi = {} MHz\nfidelity {:.15}\n",
        s.steps, s.total_theta, s.duration_ns, s.g_max_mhz_over_2pi, fidelity
    );
    emit_schedule(&file, out, json, &mut text)?;
    let mut report = json!({ "summary": s, "fidelity": fidelity, "source": file.metadata.source });
    if out.is_none() {
        report["schedule"] = serde_json::to_value(&file).expect("schedule is serializable");
    }
    verification(fidelity)?;
    Ok(Output { json: report, text })
}

fn cmd_prepare(path: &Path, mode: ModeArg, dev: &DeviceArgs, out: Option<&Path>, json: bool) -> CliResult<Output> {
    let target = load_state(path)?;
    let mode = match mode {
        ModeArg::Linear => PrepMode::Linear,
        ModeArg::ThreeStep => PrepMode::ThreeStep,
    };
    let (schedule, plan) = prepare_state_schedule(&target, &device(dev)?, mode)?;
    let n = target.dim();
    let fin = run_schedule(&SesState::basis(n, 0), &schedule)?;
    let fidelity = fin.overlap(&target);
    let bound_ok = plan.m() < n;
    let file = ScheduleFile::from_schedule(&schedule);
    let s = summary(&file);
    let mut text = format!(
        "mode {}\nreduction steps M = {} (bound n-1 = {}: {})\nsteps {}\ntotal_theta {:.6} rad\nduration {:.4} ns\nfidelity {:.15}\n",
        file.metadata.source,
        plan.m(),
        n - 1,
        if bound_ok { "ok" } else { "violated" },
        s.steps,
        s.total_theta,
        s.duration_ns,
        fidelity
    );
    emit_schedule(&file, out, json, &mut text)?;
    let mut report = json!({
        "summary": s,
        "m": plan.m(),
        "m_bound_ok": bound_ok,
        "fidelity": fidelity,
        "source": file.metadata.source,
    });
    if out.is_none() {
        report["schedule"] = serde_json::to_value(&file).expect("schedule is serializable");
    }
    if !bound_ok {
        return Err(CliError::new(exit::VERIFICATION, format!("M = {} exceeds n - 1 = {}", plan.m(), n - 1)));
    }
    verification(fidelity)?;
    Ok(Output { json: report, text })
}

fn cmd_simulate(path: &Path, initial: &str, shots: Option<u64>, seed: u64) -> CliResult<Output> {
    let schedule = ScheduleFile::parse(&read(path)?)?.to_schedule()?;
    let n = schedule.dim();
    let start = match initial.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => SesState::basis(n, i - 1),
        Ok(i) => return Err(CliError::new(exit::PARSE, format!("initial qubit {i} outside 1..={n}"))),
        Err(_) => load_state(Path::new(initial))?,
    };
    let fin = run_schedule(&start, &schedule)?;
    let mut report = json!({
        "n": n,
        "amplitudes": pairs(fin.amplitudes()),
        "populations": fin.weights(),
    });
    if let Some(shots) = shots {
        let rec = measure(&fin, shots, seed)?;
        report["shots"] = json!(rec.shots);
        report["counts"] = json!(rec.counts);
        report["seed"] = json!(rec.seed);
        report["rng"] = json!(rec.rng);
    }
    let text = serde_json::to_string_pretty(&report).expect("report is serializable") + "\n";
    Ok(Output { json: report, text })
}

fn cmd_expect(
    obs_path: &Path,
    state_path: &Path,
    shots: Option<u64>,
    dev: &DeviceArgs,
    seed: u64,
) -> CliResult<Output> {
    let o = MatrixFile::parse(&read(obs_path)?)?.to_matrix()?;
    o.check_hermitian(HERMITIAN_TOL)?;
    let obs = spectral_decompose(&o)?;
    let state = load_state_or_density(state_path)?;
    let trace = expectation_exact(&state.to_density(), &obs)?;
    let readout = match shots {
        Some(shots) => Readout::Sampled { shots, seed },
        None => Readout::Exact,
    };
    let est = expectation_protocol(&state, &obs, &device(dev)?, readout)?;
    let report = json!({
        "value": est.value,
        "error_bound": est.std_error_bound,
        "shots": est.shots,
        "seed": shots.map(|_| seed),
        "trace_value": trace,
        "pulses": est.pulses,
    });
    let text = match shots {
        Some(n) => format!("<O> = {} +- {} ({n} shots, seed {seed})\n", est.value, est.std_error_bound),
        None => format!("<O> = {} (exact readout)\nTr(rho O) = {trace}\n", est.value),
    };
    if shots.is_none() && (est.value - trace).abs() > VERIFY_TOL * trace.abs().max(1.0) {
        return Err(CliError::new(
            exit::VERIFICATION,
            format!("protocol value {} differs from trace {trace}", est.value),
        ));
    }
    Ok(Output { json: report, text })
}

fn cmd_bench(sizes: &[usize], reps: usize, seed: u64) -> CliResult<Output> {
    use rand::SeedableRng;
    if sizes.is_empty() || sizes.contains(&0) || reps == 0 {
        return Err(CliError::new(exit::PARSE, "sizes must be positive and reps at least 1"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut text = format!("{:>6}  {:>14}\n", "n", "mean_us");
    for &n in sizes {
        let u = haar_unitary(n, &mut rng);
        let start = Instant::now();
        for _ in 0..reps {
            aba_decompose(&u)?;
        }
        let mean_us = start.elapsed().as_secs_f64() * 1e6 / reps as f64;
        text.push_str(&format!("{n:>6}  {mean_us:>14.1}\n"));
        rows.push((n, mean_us));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.0 as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let fit = fit_power_law(&xs, &ys);
    match fit {
        Some(f) => text.push_str(&format!("fit: {:.3} * n^{:.3} us\n", f.coefficient, f.exponent)),
        None => text.push_str("fit: needs two or more distinct sizes\n"),
    }
    let report = json!({
        "reps": reps,
        "rows": rows.iter().map(|(n, t)| json!({ "n": n, "mean_us": t })).collect::<Vec<_>>(),
        "coefficient_us": fit.map(|f| f.coefficient),
        "exponent": fit.map(|f| f.exponent),
    });
    Ok(Output { json: report, text })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Compile { unitary, device, out } => cmd_compile(unitary, device, out.as_deref(), cli.json),
        Command::Prepare { state, mode, device, out } => cmd_prepare(state, *mode, device, out.as_deref(), cli.json),
        Command::Simulate { schedule, initial, shots, seed } => cmd_simulate(schedule, initial, *shots, *seed),
        Command::Expect { observable, state, shots, exact: _, device, seed } => {
            cmd_expect(observable, state, *shots, device, *seed)
        }
        Command::BenchDecompose { sizes, reps, seed } => cmd_bench(sizes, *reps, *seed),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("report is serializable"))
            } else {
                write!(stdout, "{}", out.text)
            };
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}
