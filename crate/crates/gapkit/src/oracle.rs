//! Shifted-harmonic-surface bath: phase-space sampling, exact classical
//! propagation, gap traces with linear or quadratic coupling, Monte Carlo
//! correlators, and the closed-form references they are checked against.
//!
//! Internally each mode's angular frequency is carried in rad/fs
//! (`RAD_PER_FS_PER_CM1` times the wavenumber) with hbar absorbed into the
//! unit system; every public interface stays in cm^-1. Monte Carlo draws use
//! counter-based per-sample RNG sub-streams derived from (seed, sample
//! index), so results are identical regardless of thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use num_complex::Complex64;

use crate::correlators::CorrelationSeries;
use crate::error::{Error, Result};
use crate::spectral::{Spectrum, SpectrumKind};
use crate::trajectory::{GapTrajectory, TrajectoryStats};
use crate::units::{PhysicalContext, RAD_PER_FS_PER_CM1};

/// Number of Monte Carlo samples each parallel work unit integrates before
/// the per-block partial sums are reduced in fixed order.
const MC_BLOCK: usize = 1024;

/// Default fraction of the linear gap standard deviation contributed by the
/// quadratic coupling term in [`QuadraticCoupling::diagonal_fraction`].
pub const DEFAULT_QUADRATIC_FRACTION: f64 = 0.1;

/// One harmonic bath mode: frequency in cm^-1 and dimensionless Huang-Rhys
/// displacement factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    pub huang_rhys: f64,
}

impl BathMode {
    /// Coupling constant kappa = Omega * sqrt(X) in cm^-1 (hbar*Omega is the
    /// wavenumber itself in this unit system).
    pub fn kappa(&self) -> f64 {
        self.omega * self.huang_rhys.sqrt()
    }
}

/// A discrete set of harmonic modes defining the oracle bath.
#[derive(Debug, Clone)]
pub struct BathModeSet {
    modes: Vec<BathMode>,
}

impl BathModeSet {
    pub fn new(modes: Vec<BathMode>) -> Result<Self> {
        for (index, m) in modes.iter().enumerate() {
            let ok = m.omega.is_finite()
                && m.omega > 0.0
                && m.huang_rhys.is_finite()
                && m.huang_rhys >= 0.0;
            if !ok {
                return Err(Error::InvalidBathMode {
                    index,
                    omega: m.omega,
                    huang_rhys: m.huang_rhys,
                });
            }
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[BathMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// lambda_R = sum_j Omega_j X_j in cm^-1.
    pub fn reorganization_energy(&self) -> f64 {
        self.modes.iter().map(|m| m.omega * m.huang_rhys).sum()
    }

    /// Reads a mode table from CSV with header `omega_cm1,huang_rhys`;
    /// `#`-prefixed comment lines are allowed.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self> {
        let mut header_seen = false;
        let mut modes = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::io("<modes csv>", e))?;
            let line = line.trim_end_matches('\r').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !header_seen {
                let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                if cols.len() < 2 || cols[0] != "omega_cm1" || cols[1] != "huang_rhys" {
                    return Err(Error::CsvFormat {
                        line: line_no,
                        message: format!("expected header `omega_cm1,huang_rhys`, got {line:?}"),
                    });
                }
                header_seen = true;
                continue;
            }
            let mut cols = line.split(',');
            let mut field = |name: &str| -> Result<f64> {
                let raw = cols.next().ok_or_else(|| Error::CsvFormat {
                    line: line_no,
                    message: format!("missing {name} column"),
                })?;
                raw.trim().parse::<f64>().map_err(|_| Error::CsvFormat {
                    line: line_no,
                    message: format!("non-numeric {name} cell {raw:?}"),
                })
            };
            modes.push(BathMode {
                omega: field("omega_cm1")?,
                huang_rhys: field("huang_rhys")?,
            });
        }
        Self::new(modes)
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_csv(BufReader::new(file))
    }
}

/// One phase-space initial condition (Q0, P0) per mode, in the internal
/// mass-scaled units consistent with Omega in rad/fs.
#[derive(Debug, Clone)]
pub struct PhaseSample {
    pub coords: Vec<(f64, f64)>,
}

/// Which thermal phase-space density the initial conditions are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialDistribution {
    Boltzmann,
    Wigner,
}

impl std::str::FromStr for InitialDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "boltzmann" => Ok(InitialDistribution::Boltzmann),
            "wigner" => Ok(InitialDistribution::Wigner),
            other => Err(Error::InvalidArgument(format!(
                "unknown distribution {other:?} (expected boltzmann|wigner)"
            ))),
        }
    }
}

impl std::fmt::Display for InitialDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InitialDistribution::Boltzmann => "boltzmann",
            InitialDistribution::Wigner => "wigner",
        })
    }
}

/// Classical thermal state: per mode Q0 ~ N(0, kT/Omega^2), P0 ~ N(0, kT).
pub fn sample_boltzmann<R: Rng + ?Sized>(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    rng: &mut R,
) -> PhaseSample {
    let kt_ang = RAD_PER_FS_PER_CM1 * ctx.thermal_energy();
    let coords = modes
        .modes
        .iter()
        .map(|m| {
            let omega = RAD_PER_FS_PER_CM1 * m.omega;
            let q_std = (kt_ang).sqrt() / omega;
            let p_std = kt_ang.sqrt();
            let gq: f64 = rng.sample(StandardNormal);
            let gp: f64 = rng.sample(StandardNormal);
            (q_std * gq, p_std * gp)
        })
        .collect();
    PhaseSample { coords }
}

/// Quantum thermal (Wigner) state: per mode
/// <Omega^2 Q0^2> = <P0^2> = (Omega/2) coth(zeta/2), zeta = Omega / kT.
pub fn sample_wigner<R: Rng + ?Sized>(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    rng: &mut R,
) -> PhaseSample {
    let coords = modes
        .modes
        .iter()
        .map(|m| {
            let omega = RAD_PER_FS_PER_CM1 * m.omega;
            let zeta = ctx.beta_hbar_omega(m.omega);
            let coth = 1.0 / (zeta / 2.0).tanh();
            let p_var = omega / 2.0 * coth;
            let q_var = coth / (2.0 * omega);
            let gq: f64 = rng.sample(StandardNormal);
            let gp: f64 = rng.sample(StandardNormal);
            (q_var.sqrt() * gq, p_var.sqrt() * gp)
        })
        .collect();
    PhaseSample { coords }
}

fn draw_sample<R: Rng + ?Sized>(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    dist: InitialDistribution,
    rng: &mut R,
) -> PhaseSample {
    match dist {
        InitialDistribution::Boltzmann => sample_boltzmann(modes, ctx, rng),
        InitialDistribution::Wigner => sample_wigner(modes, ctx, rng),
    }
}

/// Exact free evolution of one mode: given (Q0, P0) and Omega in rad/fs,
/// returns (Q(t), P(t)).
pub fn propagate_mode(omega_ang: f64, q0: f64, p0: f64, t: f64) -> (f64, f64) {
    let (s, c) = (omega_ang * t).sin_cos();
    (q0 * c + p0 / omega_ang * s, p0 * c - q0 * omega_ang * s)
}

/// How the gap operator couples to the bath coordinates.
#[derive(Debug, Clone)]
pub enum CouplingForm {
    /// Gap linear in the coordinates, the shifted-surface form:
    /// Delta(t) = -sum_j Omega_j^2 dQ_j Q_j(t) with
    /// (Omega_j^2 dQ_j)^2 = 2 X_j Omega_j^3.
    Linear,
    /// Linear form plus a second-order term
    /// sum_jk xi_jk sqrt(nu_j nu_k) q_j(t) q_k(t), where q_j is the
    /// dimensionless coordinate sqrt(2 Omega_j) Q_j.
    Quadratic(QuadraticCoupling),
}

/// Symmetric dimensionless second-order coupling coefficients.
#[derive(Debug, Clone)]
pub struct QuadraticCoupling {
    n: usize,
    coeffs: Vec<f64>, // row-major n x n
}

impl QuadraticCoupling {
    pub fn new(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "coupling matrix must have {} entries, got {}",
                n * n,
                coeffs.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if coeffs[i * n + j] != coeffs[j * n + i] {
                    return Err(Error::AsymmetricCoupling { n, i, j });
                }
            }
        }
        Ok(Self { n, coeffs })
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs[i * self.n + j]
    }

    /// Diagonal coefficients scaled so that, under Boltzmann statistics at
    /// `ctx`, the quadratic term contributes `fraction` of the linear gap
    /// standard deviation (spread evenly across modes). Small enough to keep
    /// the two-time correlator near-linear, large enough for the three-time
    /// diagnostic to light up at the default fraction.
    pub fn diagonal_fraction(
        modes: &BathModeSet,
        ctx: &PhysicalContext,
        fraction: f64,
    ) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidArgument(
                "quadratic coupling needs at least one mode".into(),
            ));
        }
        if !(fraction.is_finite() && fraction >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "invalid quadratic fraction {fraction}"
            )));
        }
        let n = modes.len();
        let s_lin = analytic_alpha_boltzmann(modes, ctx, &[0.0])[0].sqrt();
        let kt = ctx.thermal_energy();
        let mut coeffs = vec![0.0; n * n];
        for (j, m) in modes.modes.iter().enumerate() {
            let v = 2.0 * kt / m.omega; // <q_j^2> under Boltzmann
            coeffs[j * n + j] = fraction * s_lin / (m.omega * v * (2.0 * n as f64).sqrt());
        }
        Self::new(n, coeffs)
    }
}

/// Per-mode constants used by the gap evaluation.
struct ModeParams {
    omega_ang: f64,
    /// Linear coupling in cm^-1 per unit internal coordinate:
    /// sqrt(2 X) Omega_ang^{3/2} / (2 pi c).
    lin: f64,
    /// sqrt(2 Omega_ang), turning Q into the dimensionless coordinate.
    qtilde: f64,
    /// Mode frequency in cm^-1.
    nu: f64,
}

fn mode_params(modes: &BathModeSet) -> Vec<ModeParams> {
    modes
        .modes
        .iter()
        .map(|m| {
            let omega_ang = RAD_PER_FS_PER_CM1 * m.omega;
            ModeParams {
                omega_ang,
                lin: (2.0 * m.huang_rhys).sqrt() * omega_ang.powf(1.5) / RAD_PER_FS_PER_CM1,
                qtilde: (2.0 * omega_ang).sqrt(),
                nu: m.omega,
            }
        })
        .collect()
}

/// cos/sin of each mode's phase at each requested time.
struct PhaseTables {
    cos: Vec<f64>, // [mode * n_times + t]
    sin: Vec<f64>,
    n_times: usize,
}

fn phase_tables(params: &[ModeParams], times: &[f64]) -> PhaseTables {
    let n_times = times.len();
    let mut cos = Vec::with_capacity(params.len() * n_times);
    let mut sin = Vec::with_capacity(params.len() * n_times);
    for p in params {
        for &t in times {
            let (s, c) = (p.omega_ang * t).sin_cos();
            cos.push(c);
            sin.push(s);
        }
    }
    PhaseTables { cos, sin, n_times }
}

/// Evaluates the gap (cm^-1) at every tabulated time for one phase sample.
fn eval_gap(
    params: &[ModeParams],
    tables: &PhaseTables,
    sample: &PhaseSample,
    form: &CouplingForm,
    out: &mut [f64],
) {
    let nt = tables.n_times;
    out.fill(0.0);
    for (j, p) in params.iter().enumerate() {
        let (q0, p0) = sample.coords[j];
        let a = -p.lin * q0;
        let b = -p.lin * p0 / p.omega_ang;
        let cos = &tables.cos[j * nt..(j + 1) * nt];
        let sin = &tables.sin[j * nt..(j + 1) * nt];
        for t in 0..nt {
            out[t] += a * cos[t] + b * sin[t];
        }
    }
    if let CouplingForm::Quadratic(xi) = form {
        let n = params.len();
        // Dimensionless coordinates q_j(t) = u_j cos + w_j sin.
        let mut qt = vec![0.0; n * nt];
        for (j, p) in params.iter().enumerate() {
            let (q0, p0) = sample.coords[j];
            let u = p.qtilde * q0;
            let w = p.qtilde * p0 / p.omega_ang;
            let cos = &tables.cos[j * nt..(j + 1) * nt];
            let sin = &tables.sin[j * nt..(j + 1) * nt];
            for t in 0..nt {
                qt[j * nt + t] = u * cos[t] + w * sin[t];
            }
        }
        for j in 0..n {
            for k in 0..n {
                let c = xi.coeff(j, k);
                if c == 0.0 {
                    continue;
                }
                let scale = c * (params[j].nu * params[k].nu).sqrt();
                for t in 0..nt {
                    out[t] += scale * qt[j * nt + t] * qt[k * nt + t];
                }
            }
        }
    }
}

/// Energy gap along one exactly propagated trajectory, in cm^-1.
pub fn gap_trace(
    modes: &BathModeSet,
    sample: &PhaseSample,
    times: &[f64],
    form: &CouplingForm,
) -> Vec<f64> {
    let params = mode_params(modes);
    let tables = phase_tables(&params, times);
    let mut out = vec![0.0; times.len()];
    eval_gap(&params, &tables, sample, form, &mut out);
    out
}

/// Ensemble Monte Carlo correlator with per-lag standard errors.
#[derive(Debug, Clone)]
pub struct McCorrelation {
    pub series: CorrelationSeries,
    /// Standard error of the mean, per lag, from the sample variance across
    /// realizations.
    pub std_err: Vec<f64>,
    pub n_samples: usize,
}

/// Ensemble average of Delta(t) Delta(0) over fresh phase samples.
///
/// `times` must be uniform and start at 0. Deterministic for a given
/// (seed, n_samples) independent of thread count.
pub fn mc_correlator(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    dist: InitialDistribution,
    form: &CouplingForm,
    n_samples: usize,
    times: &[f64],
    seed: u64,
) -> Result<McCorrelation> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples(n_samples));
    }
    if times.len() < 2 || times[0] != 0.0 {
        return Err(Error::InvalidArgument(
            "mc_correlator needs a uniform time grid starting at 0".into(),
        ));
    }
    let dt = times[1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-6 * dt {
            return Err(Error::InvalidArgument(
                "mc_correlator needs a uniform time grid starting at 0".into(),
            ));
        }
    }

    let params = mode_params(modes);
    let tables = phase_tables(&params, times);
    let nt = times.len();

    let n_blocks = n_samples.div_ceil(MC_BLOCK);
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..n_blocks)
        .into_par_iter()
        .map(|block| {
            let mut sum = vec![0.0; nt];
            let mut sum_sq = vec![0.0; nt];
            let mut gap = vec![0.0; nt];
            let lo = block * MC_BLOCK;
            let hi = ((block + 1) * MC_BLOCK).min(n_samples);
            for i in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let sample = draw_sample(modes, ctx, dist, &mut rng);
                eval_gap(&params, &tables, &sample, form, &mut gap);
                let delta0 = gap[0];
                for t in 0..nt {
                    let v = delta0 * gap[t];
                    sum[t] += v;
                    sum_sq[t] += v * v;
                }
            }
            (sum, sum_sq)
        })
        .collect();

    // Fixed-order reduction keeps the result independent of scheduling.
    let mut sum = vec![0.0; nt];
    let mut sum_sq = vec![0.0; nt];
    for (s, q) in partials {
        for t in 0..nt {
            sum[t] += s[t];
            sum_sq[t] += q[t];
        }
    }

    let n = n_samples as f64;
    let values: Vec<f64> = sum.iter().map(|s| s / n).collect();
    let std_err: Vec<f64> = values
        .iter()
        .zip(&sum_sq)
        .map(|(&mean, &sq)| {
            let var = ((sq - n * mean * mean) / (n - 1.0)).max(0.0);
            (var / n).sqrt()
        })
        .collect();

    let variance = values[0];
    Ok(McCorrelation {
        series: CorrelationSeries {
            dt,
            values,
            origin_stats: TrajectoryStats {
                mean: 0.0,
                variance,
                std_dev: variance.max(0.0).sqrt(),
            },
        },
        std_err,
        n_samples,
    })
}

/// One long gap trace built by concatenating freshly sampled segments, so the
/// discrete estimator pipeline can be exercised end-to-end on oracle data.
/// Within each segment the dynamics are exact; successive segments are
/// independent draws.
#[allow(clippy::too_many_arguments)]
pub fn concatenated_trace(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    dist: InitialDistribution,
    form: &CouplingForm,
    segments: usize,
    steps_per_segment: usize,
    dt: f64,
    seed: u64,
) -> Result<GapTrajectory> {
    if segments == 0 || steps_per_segment == 0 || segments * steps_per_segment < 2 {
        return Err(Error::TooFewRows);
    }
    let params = mode_params(modes);
    let times: Vec<f64> = (0..steps_per_segment).map(|k| k as f64 * dt).collect();
    let tables = phase_tables(&params, &times);

    let pieces: Vec<Vec<f64>> = (0..segments)
        .into_par_iter()
        .map(|seg| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(seg as u64);
            let sample = draw_sample(modes, ctx, dist, &mut rng);
            let mut gap = vec![0.0; times.len()];
            eval_gap(&params, &tables, &sample, form, &mut gap);
            gap
        })
        .collect();

    let samples: Vec<f64> = pieces.into_iter().flatten().collect();
    let label = format!(
        "oracle-{dist}-{}",
        match form {
            CouplingForm::Linear => "linear",
            CouplingForm::Quadratic(_) => "quadratic",
        }
    );
    GapTrajectory::new(dt, samples, ctx.temperature_kelvin(), label)
}

/// Closed form for the Boltzmann-sampled classical gap correlator:
/// sum_j (Omega_j)^2 X_j cos(Omega_j t) * (2 / zeta_j), in cm^-2.
pub fn analytic_alpha_boltzmann(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    times: &[f64],
) -> Vec<f64> {
    alpha_with_factor(modes, times, |m| 2.0 / ctx.beta_hbar_omega(m.omega))
}

/// Closed form for the Wigner-sampled semiclassical gap correlator:
/// sum_j (Omega_j)^2 X_j cos(Omega_j t) * coth(zeta_j / 2), in cm^-2.
pub fn analytic_alpha_wigner(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    times: &[f64],
) -> Vec<f64> {
    alpha_with_factor(modes, times, |m| {
        1.0 / (ctx.beta_hbar_omega(m.omega) / 2.0).tanh()
    })
}

fn alpha_with_factor(
    modes: &BathModeSet,
    times: &[f64],
    factor: impl Fn(&BathMode) -> f64,
) -> Vec<f64> {
    let terms: Vec<(f64, f64)> = modes
        .modes
        .iter()
        .map(|m| {
            let amp = m.omega * m.omega * m.huang_rhys * factor(m);
            (amp, RAD_PER_FS_PER_CM1 * m.omega)
        })
        .collect();
    times
        .iter()
        .map(|&t| terms.iter().map(|(amp, w)| amp * (w * t).cos()).sum())
        .collect()
}

/// The quantum two-time bath correlator
/// alpha(t) = sum_j kappa_j^2 [coth(zeta_j/2) cos(Omega_j t) - i sin(Omega_j t)].
/// Its real part equals [`analytic_alpha_wigner`] term by term.
pub fn analytic_quantum_alpha(
    modes: &BathModeSet,
    ctx: &PhysicalContext,
    times: &[f64],
) -> Vec<Complex64> {
    let terms: Vec<(f64, f64, f64)> = modes
        .modes
        .iter()
        .map(|m| {
            let kappa_sq = m.kappa() * m.kappa();
            let coth = 1.0 / (ctx.beta_hbar_omega(m.omega) / 2.0).tanh();
            (kappa_sq, coth, RAD_PER_FS_PER_CM1 * m.omega)
        })
        .collect();
    times
        .iter()
        .map(|&t| {
            terms
                .iter()
                .map(|&(k2, coth, w)| {
                    let (s, c) = (w * t).sin_cos();
                    Complex64::new(k2 * coth * c, -k2 * s)
                })
                .sum()
        })
        .collect()
}

/// The temperature-independent asymmetric coupling density of the discrete
/// bath, J(nu) = pi sum_j kappa_j^2 [delta(nu - Omega_j) - delta(nu + Omega_j)],
/// with each delta replaced by a unit-area Gaussian of standard deviation
/// `broadening` cm^-1. The area under the +Omega_j lobe is pi kappa_j^2 in
/// the angular measure.
pub fn analytic_j(modes: &BathModeSet, broadening: f64, freq_grid: &[f64]) -> Result<Spectrum> {
    if !(broadening.is_finite() && broadening > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "broadening must be positive, got {broadening}"
        )));
    }
    if freq_grid.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    let norm = 1.0 / (broadening * (2.0 * std::f64::consts::PI).sqrt());
    let lines: Vec<(f64, f64)> = modes
        .modes
        .iter()
        .map(|m| {
            // pi kappa^2 in the angular measure -> divide by 2 pi c for the
            // cm^-1 grid.
            let area = std::f64::consts::PI * m.kappa() * m.kappa() / RAD_PER_FS_PER_CM1;
            (area, m.omega)
        })
        .collect();
    let values = freq_grid
        .iter()
        .map(|&nu| {
            lines
                .iter()
                .map(|&(area, omega)| {
                    let up = (nu - omega) / broadening;
                    let down = (nu + omega) / broadening;
                    area * norm * ((-0.5 * up * up).exp() - (-0.5 * down * down).exp())
                })
                .sum()
        })
        .collect();
    Ok(Spectrum {
        kind: SpectrumKind::J,
        temperature: None,
        correction: None,
        frequencies: freq_grid.to_vec(),
        values,
    })
}

/// The legacy route to the spectral density: cosine-transform a real
/// correlator and scale with the Standard prefactor,
/// j(nu) = (1/pi) tanh(x/2) G(nu), on a nonnegative frequency grid.
pub fn j_from_real_alpha(
    series: &CorrelationSeries,
    ctx: &PhysicalContext,
    freq_grid: &[f64],
) -> Result<Spectrum> {
    if freq_grid.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    if let Some(&nu) = freq_grid.iter().find(|&&nu| nu < 0.0) {
        return Err(Error::NegativeFrequency(nu));
    }
    let transform = crate::spectral::cosine_transform(&series.values, series.dt, freq_grid);
    let values = freq_grid
        .iter()
        .zip(&transform)
        .map(|(&nu, &g)| {
            let x = ctx.beta_hbar_omega(nu);
            (x / 2.0).tanh() * g / std::f64::consts::PI
        })
        .collect();
    Ok(Spectrum {
        kind: SpectrumKind::SpectralDensityJ,
        temperature: Some(ctx.temperature_kelvin()),
        correction: None,
        frequencies: freq_grid.to_vec(),
        values,
    })
}
