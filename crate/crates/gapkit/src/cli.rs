//! The `gapkit` command-line interface: thin argument parsing and file I/O
//! around the library pipeline. Exit code 0 on success, 2 on validation
//! errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corrections::{correct_spectrum, egelstaff_correct, CorrectionKind};
use crate::correlators::{
    load_correlation_csv, three_time_correlator, two_time_correlator, write_correlation_csv,
    write_three_time_csv, DEFAULT_THREE_TIME_LAG,
};
use crate::diagnostics::{temperature_invariance, three_point_significance, DEFAULT_SURROGATES};
use crate::error::{Error, Result};
use crate::oracle::{
    analytic_alpha_boltzmann, analytic_alpha_wigner, concatenated_trace, mc_correlator,
    BathModeSet, CouplingForm, InitialDistribution, QuadraticCoupling, DEFAULT_QUADRATIC_FRACTION,
};
use crate::spectral::{
    apply_gaussian_window, classical_tdcd, symmetric_grid, Spectrum, WindowSpec, DEFAULT_FREQ_MAX,
    DEFAULT_FREQ_STEP, DEFAULT_WINDOW_FRACTION,
};
use crate::trajectory::{load_trajectory, write_trajectory, LoadOverrides};
use crate::units::PhysicalContext;

#[derive(Parser)]
#[command(
    name = "gapkit",
    version,
    about = "Bath spectral densities from energy-gap time traces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-time correlator of a gap trajectory (CSV out: lag_fs,value_cm2).
    Correlate(CorrelateArgs),
    /// Three-time correlator grid (CSV out: k_fs,j_fs,value_cm3).
    Threepoint(ThreepointArgs),
    /// Gaussian-windowed cosine transform of a correlator into the classical
    /// coupling density on a symmetric frequency grid (JSON out).
    Spectrum(SpectrumArgs),
    /// Semiclassical correction of a classical spectrum (or, for egelstaff,
    /// of a correlator CSV) into J(omega) and the corrected G(omega).
    Correct(CorrectArgs),
    /// Shifted-harmonic-surface bath simulator: Monte Carlo correlators,
    /// concatenated gap traces, or analytic reference correlators.
    Oracle(OracleArgs),
    /// Temperature-invariance report for two corrected spectra (JSON out).
    CompareTemps(CompareTempsArgs),
    /// Three-time significance report against permutation surrogates
    /// (JSON out).
    Significance(SignificanceArgs),
}

#[derive(Args)]
struct CorrelateArgs {
    /// Trajectory CSV (header time_fs,gap_cm1).
    #[arg(long)]
    input: PathBuf,
    /// Largest lag index; defaults to min(N/4, 400).
    #[arg(long)]
    max_lag: Option<usize>,
    #[arg(long)]
    temperature_kelvin: Option<f64>,
    /// Detrending mode; only mean removal is implemented and `none` is the
    /// single accepted value (reserved for drift handling).
    #[arg(long, default_value = "none")]
    detrend: Detrend,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct ThreepointArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THREE_TIME_LAG)]
    max_k: usize,
    #[arg(long, default_value_t = DEFAULT_THREE_TIME_LAG)]
    max_j: usize,
    #[arg(long)]
    temperature_kelvin: Option<f64>,
    #[arg(long, default_value = "none")]
    detrend: Detrend,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Correlator CSV (header lag_fs,value_cm2).
    #[arg(long)]
    input: PathBuf,
    /// Gaussian window variance as a fraction of t_max^2.
    #[arg(long, default_value_t = DEFAULT_WINDOW_FRACTION)]
    window_fraction: f64,
    /// Skip the window entirely.
    #[arg(long, conflicts_with = "window_fraction")]
    no_window: bool,
    /// Largest |frequency| of the symmetric output grid, cm^-1.
    #[arg(long, default_value_t = DEFAULT_FREQ_MAX)]
    freq_max: f64,
    /// Grid step, cm^-1.
    #[arg(long, default_value_t = DEFAULT_FREQ_STEP)]
    freq_step: f64,
    /// Temperature tag for the output; falls back to the CSV metadata.
    #[arg(long)]
    temperature_kelvin: Option<f64>,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CorrectArgs {
    /// Spectrum JSON (or correlator CSV for --method egelstaff).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// Temperature for the correction; falls back to the input's tag.
    #[arg(long)]
    temperature_kelvin: Option<f64>,
    /// Window fraction for the egelstaff route (applied to the correlator
    /// before resampling).
    #[arg(long, default_value_t = DEFAULT_WINDOW_FRACTION)]
    window_fraction: f64,
    /// Frequency grid bound for the egelstaff route, cm^-1.
    #[arg(long, default_value_t = DEFAULT_FREQ_MAX)]
    freq_max: f64,
    #[arg(long, default_value_t = DEFAULT_FREQ_STEP)]
    freq_step: f64,
    /// Where to write J(omega).
    #[arg(long)]
    output: PathBuf,
    /// Optionally also write the corrected G(omega).
    #[arg(long)]
    output_g: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    /// Mode table CSV (header omega_cm1,huang_rhys).
    #[arg(long)]
    modes: PathBuf,
    #[arg(long)]
    temperature_kelvin: f64,
    #[arg(long, value_enum, default_value = "boltzmann")]
    distribution: DistributionArg,
    /// Monte Carlo samples (or concatenated segments for --emit trace).
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 4.0)]
    dt_fs: f64,
    /// Time points per correlator / per trace segment.
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    #[arg(long, value_enum, default_value = "linear")]
    coupling: CouplingArg,
    /// Fraction of the linear gap spread contributed by the quadratic term.
    #[arg(long, default_value_t = DEFAULT_QUADRATIC_FRACTION)]
    quadratic_fraction: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum)]
    emit: EmitArg,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct CompareTempsArgs {
    /// First corrected spectrum (JSON).
    #[arg(long)]
    a: PathBuf,
    /// Second corrected spectrum (JSON), same method, different temperature.
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct SignificanceArgs {
    /// Trajectory CSV.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SURROGATES)]
    surrogates: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_THREE_TIME_LAG)]
    max_k: usize,
    #[arg(long, default_value_t = DEFAULT_THREE_TIME_LAG)]
    max_j: usize,
    /// Two-time lag bound for the report; defaults to min(N/4, 400).
    #[arg(long)]
    max_lag: Option<usize>,
    #[arg(long)]
    temperature_kelvin: Option<f64>,
    #[arg(long, default_value = "none")]
    detrend: Detrend,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Detrend {
    /// Mean removal only.
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Standard,
    Harmonic,
    Schofield,
    Egelstaff,
    SchofieldHarmonic,
}

impl From<MethodArg> for CorrectionKind {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Standard => CorrectionKind::Standard,
            MethodArg::Harmonic => CorrectionKind::Harmonic,
            MethodArg::Schofield => CorrectionKind::Schofield,
            MethodArg::Egelstaff => CorrectionKind::Egelstaff,
            MethodArg::SchofieldHarmonic => CorrectionKind::SchofieldHarmonic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DistributionArg {
    Boltzmann,
    Wigner,
}

impl From<DistributionArg> for InitialDistribution {
    fn from(d: DistributionArg) -> Self {
        match d {
            DistributionArg::Boltzmann => InitialDistribution::Boltzmann,
            DistributionArg::Wigner => InitialDistribution::Wigner,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CouplingArg {
    Linear,
    Quadratic,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    /// Ensemble Monte Carlo correlator with standard errors.
    Correlator,
    /// One long concatenated gap trace for the estimator pipeline.
    Trace,
    /// Closed-form correlator for the chosen distribution.
    Analytic,
}

/// Parses and runs, returning the process exit code. Usage errors print
/// through clap; validation and I/O errors print to stderr and yield 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors.
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Correlate(args) => cmd_correlate(args),
        Command::Threepoint(args) => cmd_threepoint(args),
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Correct(args) => cmd_correct(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::CompareTemps(args) => cmd_compare_temps(args),
        Command::Significance(args) => cmd_significance(args),
    }
}

fn overrides(temperature_kelvin: Option<f64>) -> LoadOverrides {
    LoadOverrides {
        temperature_kelvin,
        ..Default::default()
    }
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    let file = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    Ok(BufWriter::new(file))
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")
        .map_err(|e| Error::io(path.display().to_string(), e))
}

fn cmd_correlate(args: CorrelateArgs) -> Result<()> {
    let traj = load_trajectory(&args.input, &overrides(args.temperature_kelvin))?;
    let max_lag = args
        .max_lag
        .unwrap_or_else(|| crate::correlators::default_max_lag(traj.len()));
    let series = two_time_correlator(&traj, max_lag)?;
    let mut w = create(&args.output)?;
    write_correlation_csv(&mut w, &series, None, Some(traj.temperature))
        .map_err(|e| Error::io(args.output.display().to_string(), e))
}

fn cmd_threepoint(args: ThreepointArgs) -> Result<()> {
    let traj = load_trajectory(&args.input, &overrides(args.temperature_kelvin))?;
    let grid = three_time_correlator(&traj, args.max_k, args.max_j)?;
    write_three_time_csv(&args.output, &grid)
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<()> {
    let (series, meta_temp) = load_correlation_csv(&args.input)?;
    let windowed = if args.no_window {
        series
    } else {
        let spec = WindowSpec::new(args.window_fraction, series.t_max())?;
        apply_gaussian_window(&series, &spec)
    };
    let grid = symmetric_grid(args.freq_max, args.freq_step);
    let mut spectrum = classical_tdcd(&windowed, &grid)?;
    spectrum.temperature = args.temperature_kelvin.or(meta_temp);
    spectrum.write_json(&args.output)
}

fn cmd_correct(args: CorrectArgs) -> Result<()> {
    let kind: CorrectionKind = args.method.into();
    if kind == CorrectionKind::Egelstaff {
        let (series, meta_temp) = load_correlation_csv(&args.input)?;
        let temperature = args
            .temperature_kelvin
            .or(meta_temp)
            .ok_or(Error::MissingTemperature)?;
        let ctx = PhysicalContext::new(temperature)?;
        let spec = WindowSpec::new(args.window_fraction, series.t_max())?;
        let windowed = apply_gaussian_window(&series, &spec);
        let grid = symmetric_grid(args.freq_max, args.freq_step);
        let result = egelstaff_correct(&windowed, &ctx, &grid)?;
        for warning in &result.warnings {
            eprintln!("warning: {warning}");
        }
        result.j.write_json(&args.output)?;
        if let Some(path) = &args.output_g {
            result.corrected_g.write_json(path)?;
        }
        return Ok(());
    }

    let g_cl = Spectrum::read_json(&args.input)?;
    let temperature = args
        .temperature_kelvin
        .or(g_cl.temperature)
        .ok_or(Error::MissingTemperature)?;
    let ctx = PhysicalContext::new(temperature)?;
    let pair = correct_spectrum(&g_cl, kind, &ctx)?;
    pair.j.write_json(&args.output)?;
    if let Some(path) = &args.output_g {
        pair.corrected_g.write_json(path)?;
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let modes = BathModeSet::load_csv(&args.modes)?;
    let ctx = PhysicalContext::new(args.temperature_kelvin)?;
    let dist: InitialDistribution = args.distribution.into();
    let form =
        match args.coupling {
            CouplingArg::Linear => CouplingForm::Linear,
            CouplingArg::Quadratic => CouplingForm::Quadratic(
                QuadraticCoupling::diagonal_fraction(&modes, &ctx, args.quadratic_fraction)?,
            ),
        };
    if args.steps < 2 {
        return Err(Error::InvalidArgument("--steps must be at least 2".into()));
    }
    let times: Vec<f64> = (0..args.steps).map(|k| k as f64 * args.dt_fs).collect();

    match args.emit {
        EmitArg::Correlator => {
            let mc = mc_correlator(&modes, &ctx, dist, &form, args.samples, &times, args.seed)?;
            let mut w = create(&args.output)?;
            write_correlation_csv(
                &mut w,
                &mc.series,
                Some(&mc.std_err),
                Some(ctx.temperature_kelvin()),
            )
            .map_err(|e| Error::io(args.output.display().to_string(), e))
        }
        EmitArg::Trace => {
            let traj = concatenated_trace(
                &modes,
                &ctx,
                dist,
                &form,
                args.samples,
                args.steps,
                args.dt_fs,
                args.seed,
            )?;
            let mut w = create(&args.output)?;
            write_trajectory(&mut w, &traj)
                .map_err(|e| Error::io(args.output.display().to_string(), e))
        }
        EmitArg::Analytic => {
            let values = match dist {
                InitialDistribution::Boltzmann => analytic_alpha_boltzmann(&modes, &ctx, &times),
                InitialDistribution::Wigner => analytic_alpha_wigner(&modes, &ctx, &times),
            };
            let series = crate::correlators::CorrelationSeries::from_values(args.dt_fs, values)?;
            let mut w = create(&args.output)?;
            write_correlation_csv(&mut w, &series, None, Some(ctx.temperature_kelvin()))
                .map_err(|e| Error::io(args.output.display().to_string(), e))
        }
    }
}

fn cmd_compare_temps(args: CompareTempsArgs) -> Result<()> {
    let a = Spectrum::read_json(&args.a)?;
    let b = Spectrum::read_json(&args.b)?;
    let report = temperature_invariance(&a, &b)?;
    write_json(&args.output, &report)
}

fn cmd_significance(args: SignificanceArgs) -> Result<()> {
    let traj = load_trajectory(&args.input, &overrides(args.temperature_kelvin))?;
    let max_lag = args
        .max_lag
        .unwrap_or_else(|| crate::correlators::default_max_lag(traj.len()));
    let c2 = two_time_correlator(&traj, max_lag)?;
    let c3 = three_time_correlator(&traj, args.max_k, args.max_j)?;
    let report = three_point_significance(&traj, &c2, &c3, args.surrogates, args.seed)?;
    write_json(&args.output, &report)
}
