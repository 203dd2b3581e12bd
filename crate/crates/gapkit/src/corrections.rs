//! Semiclassical a posteriori corrections mapping a classical coupling
//! density onto approximations of the quantum one, detailed balance, and the
//! reconstruction of the complex quantum correlator from J.
//!
//! Five methods are supported. Four act as pointwise prefactors in
//! x = beta*hbar*omega on the classical G; Egelstaff instead resamples the
//! classical correlator at sqrt(t^2 + (beta hbar / 2)^2) before the
//! transform, so it has its own entry point.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlators::CorrelationSeries;
use crate::error::{Error, Result};
use crate::spectral::{cosine_transform, Spectrum, SpectrumKind};
use crate::units::{PhysicalContext, RAD_PER_FS_PER_CM1};

/// Below this |x| the exponential forms are replaced by series limits to
/// avoid catastrophic cancellation.
const SMALL_X: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectionKind {
    Standard,
    Harmonic,
    Schofield,
    Egelstaff,
    SchofieldHarmonic,
}

impl CorrectionKind {
    pub const ALL: [CorrectionKind; 5] = [
        CorrectionKind::Standard,
        CorrectionKind::Harmonic,
        CorrectionKind::Schofield,
        CorrectionKind::Egelstaff,
        CorrectionKind::SchofieldHarmonic,
    ];

    /// The four kinds that act as pointwise prefactors.
    pub const POINTWISE: [CorrectionKind; 4] = [
        CorrectionKind::Standard,
        CorrectionKind::Harmonic,
        CorrectionKind::Schofield,
        CorrectionKind::SchofieldHarmonic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CorrectionKind::Standard => "standard",
            CorrectionKind::Harmonic => "harmonic",
            CorrectionKind::Schofield => "schofield",
            CorrectionKind::Egelstaff => "egelstaff",
            CorrectionKind::SchofieldHarmonic => "schofield-harmonic",
        }
    }
}

impl std::str::FromStr for CorrectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(CorrectionKind::Standard),
            "harmonic" => Ok(CorrectionKind::Harmonic),
            "schofield" => Ok(CorrectionKind::Schofield),
            "egelstaff" => Ok(CorrectionKind::Egelstaff),
            "schofield-harmonic" => Ok(CorrectionKind::SchofieldHarmonic),
            other => Err(Error::InvalidArgument(format!(
                "unknown correction method {other:?} \
                 (expected standard|harmonic|schofield|egelstaff|schofield-harmonic)"
            ))),
        }
    }
}

impl std::fmt::Display for CorrectionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// x / (1 - e^-x) with a series limit below `SMALL_X`.
fn harmonic_factor(x: f64) -> f64 {
    if x.abs() < SMALL_X {
        1.0 + x / 2.0 + x * x / 12.0
    } else {
        x / (-(-x).exp_m1())
    }
}

/// Prefactor turning G_cl(omega) into the corrected G(omega).
pub fn g_prefactor(kind: CorrectionKind, x: f64) -> Result<f64> {
    match kind {
        CorrectionKind::Standard => Ok(2.0 / (1.0 + (-x).exp())),
        CorrectionKind::Harmonic => Ok(harmonic_factor(x)),
        CorrectionKind::Schofield => Ok((x / 2.0).exp()),
        CorrectionKind::SchofieldHarmonic => Ok((x / 4.0).exp() * harmonic_factor(x).sqrt()),
        CorrectionKind::Egelstaff => Err(Error::EgelstaffNotPointwise),
    }
}

/// Prefactor turning G_cl(omega) into the corrected J(omega) = G_asym(omega).
///
/// The Standard/Harmonic/Schofield prefactors are odd in x; the
/// Schofield-Harmonic one is even, so it must be applied on nu >= 0 and
/// extended oddly (as [`correct_spectrum`] does).
pub fn j_prefactor(kind: CorrectionKind, x: f64) -> Result<f64> {
    match kind {
        CorrectionKind::Standard => Ok((x / 2.0).tanh()),
        CorrectionKind::Harmonic => Ok(x / 2.0),
        CorrectionKind::Schofield => Ok((x / 2.0).sinh()),
        CorrectionKind::SchofieldHarmonic => Ok((x / 2.0 * (x / 2.0).sinh()).sqrt()),
        CorrectionKind::Egelstaff => Err(Error::EgelstaffNotPointwise),
    }
}

/// A corrected coupling density and its asymmetric part, mutually consistent
/// under detailed balance.
#[derive(Debug, Clone)]
pub struct CorrectedPair {
    pub corrected_g: Spectrum,
    pub j: Spectrum,
}

/// Applies a pointwise correction to a classical G on a reflection-symmetric
/// grid. J is built on nu >= 0 and extended oddly; for Schofield-Harmonic the
/// corrected G is derived from that J through detailed balance so the pair is
/// always consistent, for the other kinds the column prefactor is used
/// directly (the identity holds exactly there).
pub fn correct_spectrum(
    g_cl: &Spectrum,
    kind: CorrectionKind,
    ctx: &PhysicalContext,
) -> Result<CorrectedPair> {
    g_cl.require_kind(SpectrumKind::ClassicalG)?;
    g_cl.require_symmetric_grid()?;
    if kind == CorrectionKind::Egelstaff {
        return Err(Error::EgelstaffNotPointwise);
    }

    let n = g_cl.frequencies.len();
    let mut j_values = vec![0.0; n];
    for i in 0..n {
        let nu = g_cl.frequencies[i];
        if nu > 0.0 {
            let x = ctx.beta_hbar_omega(nu);
            let v = j_prefactor(kind, x)? * g_cl.values[i];
            j_values[i] = v;
            j_values[n - 1 - i] = -v;
        }
    }
    let j = Spectrum {
        kind: SpectrumKind::J,
        temperature: Some(ctx.temperature_kelvin()),
        correction: Some(kind),
        frequencies: g_cl.frequencies.clone(),
        values: j_values,
    };

    let corrected_g = if kind == CorrectionKind::SchofieldHarmonic {
        let mut g = detailed_balance_g_from_j(&j, ctx)?;
        g.correction = Some(kind);
        g
    } else {
        let values = g_cl
            .frequencies
            .iter()
            .zip(&g_cl.values)
            .map(|(&nu, &v)| Ok(g_prefactor(kind, ctx.beta_hbar_omega(nu))? * v))
            .collect::<Result<Vec<f64>>>()?;
        Spectrum {
            kind: SpectrumKind::CorrectedG,
            temperature: Some(ctx.temperature_kelvin()),
            correction: Some(kind),
            frequencies: g_cl.frequencies.clone(),
            values,
        }
    };

    Ok(CorrectedPair { corrected_g, j })
}

/// Detailed balance: G(nu) = 2 / (1 - e^-x) * J(nu). Since J(0) = 0 the
/// zero-frequency node is defined by linear interpolation of its neighbors.
pub fn detailed_balance_g_from_j(j: &Spectrum, ctx: &PhysicalContext) -> Result<Spectrum> {
    j.require_kind(SpectrumKind::J)?;
    let n = j.frequencies.len();
    let mut values = vec![0.0; n];
    let mut zero_nodes = Vec::new();
    for (i, value) in values.iter_mut().enumerate() {
        let nu = j.frequencies[i];
        if nu == 0.0 {
            zero_nodes.push(i);
        } else {
            let x = ctx.beta_hbar_omega(nu);
            *value = 2.0 / (-(-x).exp_m1()) * j.values[i];
        }
    }
    for i in zero_nodes {
        values[i] = match (i.checked_sub(1), i + 1 < n) {
            (Some(lo), true) => 0.5 * (values[lo] + values[i + 1]),
            (Some(lo), false) => values[lo],
            (None, true) => values[i + 1],
            (None, false) => 0.0,
        };
    }
    Ok(Spectrum {
        kind: SpectrumKind::CorrectedG,
        temperature: Some(ctx.temperature_kelvin()),
        correction: j.correction,
        frequencies: j.frequencies.clone(),
        values,
    })
}

/// Egelstaff output. The method is known to go negative at low frequencies
/// for some inputs; such points are reported as warnings rather than errors.
#[derive(Debug, Clone)]
pub struct EgelstaffResult {
    pub corrected_g: Spectrum,
    pub j: Spectrum,
    pub warnings: Vec<String>,
}

/// Egelstaff correction: resample the (already windowed) classical correlator
/// at t' = sqrt(t^2 + (beta hbar / 2)^2) by shape-preserving cubic
/// interpolation with zero extension beyond the last lag, cosine-transform,
/// then scale by e^(x/2) for G and sinh(x/2) for J.
pub fn egelstaff_correct(
    series: &CorrelationSeries,
    ctx: &PhysicalContext,
    freq_grid: &[f64],
) -> Result<EgelstaffResult> {
    if freq_grid.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    let shift = ctx.beta_hbar_time() / 2.0;
    let t_max = series.t_max();
    if t_max < shift {
        return Err(Error::SeriesShorterThanShift { t_max, shift });
    }

    let interp = MonotoneCubic::new(series.dt, &series.values);
    let resampled: Vec<f64> = (0..series.values.len())
        .map(|k| {
            let t = k as f64 * series.dt;
            let shifted = (t * t + shift * shift).sqrt();
            if shifted > t_max {
                0.0
            } else {
                interp.eval(shifted)
            }
        })
        .collect();

    let transform = cosine_transform(&resampled, series.dt, freq_grid);
    let mut g_values = Vec::with_capacity(freq_grid.len());
    let mut j_values = Vec::with_capacity(freq_grid.len());
    for (&nu, &f) in freq_grid.iter().zip(&transform) {
        let x = ctx.beta_hbar_omega(nu);
        g_values.push((x / 2.0).exp() * f);
        j_values.push((x / 2.0).sinh() * f);
    }

    let j = Spectrum {
        kind: SpectrumKind::J,
        temperature: Some(ctx.temperature_kelvin()),
        correction: Some(CorrectionKind::Egelstaff),
        frequencies: freq_grid.to_vec(),
        values: j_values,
    };
    let corrected_g = Spectrum {
        kind: SpectrumKind::CorrectedG,
        temperature: Some(ctx.temperature_kelvin()),
        correction: Some(CorrectionKind::Egelstaff),
        frequencies: freq_grid.to_vec(),
        values: g_values,
    };

    let mut warnings = Vec::new();
    let floor = -1e-12 * j.max_abs();
    let negatives: Vec<(f64, f64)> = j
        .frequencies
        .iter()
        .zip(&j.values)
        .filter(|(&nu, &v)| nu > 0.0 && v < floor)
        .map(|(&nu, &v)| (nu, v))
        .collect();
    if !negatives.is_empty() {
        let (worst_nu, worst) =
            negatives
                .iter()
                .copied()
                .fold((0.0, 0.0), |acc, p| if p.1 < acc.1 { p } else { acc });
        warnings.push(format!(
            "egelstaff J is negative at {} positive-frequency grid points (min {:.3e} at {} cm^-1)",
            negatives.len(),
            worst,
            worst_nu
        ));
    }

    Ok(EgelstaffResult {
        corrected_g,
        j,
        warnings,
    })
}

/// Reconstructs the complex quantum correlator from J:
/// C(t) = (1/2pi) integral e^{-i omega t} (coth(x/2) + 1) J(omega) d omega,
/// evaluated by trapezoid over the grid in the angular measure. The zero
/// node of the integrand is replaced by its analytic limit 2 J'(0) / (beta
/// hbar) with the slope taken from the neighboring grid points, and
/// C(-t) = C*(t) holds by construction.
pub fn reconstruct_correlator(
    j: &Spectrum,
    ctx: &PhysicalContext,
    time_grid: &[f64],
) -> Result<Vec<Complex64>> {
    j.require_kind(SpectrumKind::J)?;
    j.require_symmetric_grid()?;
    let n = j.frequencies.len();
    let max = j.max_abs();
    if max > 0.0 {
        let deviation = (0..n)
            .map(|i| (j.values[i] + j.values[n - 1 - i]).abs())
            .fold(0.0_f64, f64::max);
        if deviation > 1e-8 * max {
            return Err(Error::NonOddSpectrum { deviation });
        }
    }

    let beta_hbar = ctx.beta_hbar_time();
    let omegas: Vec<f64> = j
        .frequencies
        .iter()
        .map(|&nu| RAD_PER_FS_PER_CM1 * nu)
        .collect();
    // (coth(x/2) + 1) J at each node, with the x -> 0 limit at the zero node.
    let base: Vec<f64> = (0..n)
        .map(|i| {
            let nu = j.frequencies[i];
            if nu == 0.0 {
                let slope = match (i.checked_sub(1), i + 1 < n) {
                    (Some(lo), true) => {
                        (j.values[i + 1] - j.values[lo]) / (omegas[i + 1] - omegas[lo])
                    }
                    _ => 0.0,
                };
                2.0 * slope / beta_hbar
            } else {
                let x = ctx.beta_hbar_omega(nu);
                (1.0 / (x / 2.0).tanh() + 1.0) * j.values[i]
            }
        })
        .collect();

    let values = time_grid
        .par_iter()
        .map(|&t| {
            let f = |i: usize| {
                let phase = -omegas[i] * t;
                Complex64::new(phase.cos(), phase.sin()) * base[i]
            };
            let mut acc = Complex64::new(0.0, 0.0);
            let mut prev = f(0);
            for i in 1..n {
                let cur = f(i);
                acc += (prev + cur) * 0.5 * (omegas[i] - omegas[i - 1]);
                prev = cur;
            }
            acc / (2.0 * std::f64::consts::PI)
        })
        .collect();
    Ok(values)
}

/// Shape-preserving (Fritsch-Carlson) cubic interpolant on a uniform grid.
struct MonotoneCubic {
    dt: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    fn new(dt: f64, values: &[f64]) -> Self {
        let n = values.len();
        let mut slopes = vec![0.0; n];
        if n >= 2 {
            let secants: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / dt).collect();
            for i in 1..n - 1 {
                let (a, b) = (secants[i - 1], secants[i]);
                if a * b > 0.0 {
                    slopes[i] = 2.0 * a * b / (a + b);
                }
            }
            slopes[0] = edge_slope(secants[0], *secants.get(1).unwrap_or(&secants[0]));
            slopes[n - 1] = edge_slope(
                secants[n - 2],
                *secants.get(n.wrapping_sub(3)).unwrap_or(&secants[n - 2]),
            );
        }
        Self {
            dt,
            values: values.to_vec(),
            slopes,
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.values.len();
        if n == 1 {
            return self.values[0];
        }
        let idx = ((t / self.dt).floor() as usize).min(n - 2);
        let tau = (t - idx as f64 * self.dt) / self.dt;
        let (y0, y1) = (self.values[idx], self.values[idx + 1]);
        let (d0, d1) = (self.slopes[idx] * self.dt, self.slopes[idx + 1] * self.dt);
        let t2 = tau * tau;
        let t3 = t2 * tau;
        y0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + y1 * (-2.0 * t3 + 3.0 * t2)
            + d0 * (t3 - 2.0 * t2 + tau)
            + d1 * (t3 - t2)
    }
}

/// One-sided edge slope with the usual monotonicity clamps.
fn edge_slope(near: f64, far: f64) -> f64 {
    let d = (3.0 * near - far) / 2.0;
    if d * near <= 0.0 {
        0.0
    } else if near * far < 0.0 && d.abs() > 3.0 * near.abs() {
        3.0 * near
    } else {
        d
    }
}
