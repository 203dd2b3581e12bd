//! Gaussian apodization and Fourier transforms of correlation series, plus
//! the symmetric/antisymmetric decomposition and the conversions between the
//! asymmetric coupling density J and the positive-frequency spectral
//! density j.
//!
//! The transform is a direct cosine quadrature: grids are user-chosen in
//! cm^-1 and lag counts are a few hundred, so O(N_freq * K) summation is
//! simpler than an FFT and exact on arbitrary grids. Spectra carry values in
//! cm^-2 fs against the angular-frequency measure d(omega) = 2*pi*c d(nu).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use crate::corrections::CorrectionKind;
use crate::correlators::CorrelationSeries;
use crate::error::{Error, Result};
use crate::units::RAD_PER_FS_PER_CM1;

/// Grid-reflection tolerance, relative to the largest grid frequency.
const GRID_SYMMETRY_RTOL: f64 = 1e-9;

/// The paper-standard window variance fraction sigma_t^2 = 0.09 t_max^2.
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.09;

pub const DEFAULT_FREQ_MAX: f64 = 2000.0;
pub const DEFAULT_FREQ_STEP: f64 = 1.0;

/// What a frequency-gridded function represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpectrumKind {
    #[serde(rename = "classical_G")]
    ClassicalG,
    #[serde(rename = "corrected_G")]
    CorrectedG,
    #[serde(rename = "J")]
    J,
    #[serde(rename = "spectral_density_j")]
    SpectralDensityJ,
}

impl SpectrumKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumKind::ClassicalG => "classical_G",
            SpectrumKind::CorrectedG => "corrected_G",
            SpectrumKind::J => "J",
            SpectrumKind::SpectralDensityJ => "spectral_density_j",
        }
    }
}

/// A real function on a monotone frequency grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    #[serde(rename = "temperature_K")]
    pub temperature: Option<f64>,
    pub correction: Option<CorrectionKind>,
    #[serde(rename = "frequencies_cm1")]
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
}

impl Spectrum {
    pub fn with_temperature(mut self, temperature_kelvin: f64) -> Self {
        self.temperature = Some(temperature_kelvin);
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// True when the grid pairs under reflection about zero.
    pub fn has_symmetric_grid(&self) -> bool {
        let n = self.frequencies.len();
        if n == 0 {
            return false;
        }
        let scale = self.frequencies[n - 1].abs().max(1.0);
        (0..n).all(|i| {
            (self.frequencies[i] + self.frequencies[n - 1 - i]).abs() <= GRID_SYMMETRY_RTOL * scale
        })
    }

    pub(crate) fn require_symmetric_grid(&self) -> Result<()> {
        if self.has_symmetric_grid() {
            Ok(())
        } else {
            Err(Error::AsymmetricGrid)
        }
    }

    pub(crate) fn require_kind(&self, expected: SpectrumKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::WrongSpectrumKind {
                expected: expected.name(),
                found: self.kind.name(),
            })
        }
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer(&mut w, self)?;
        w.write_all(b"\n")
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Ok(())
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let spec: Spectrum = serde_json::from_reader(BufReader::new(file))?;
        if spec.frequencies.len() != spec.values.len() || spec.frequencies.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "{}: frequencies_cm1 and values must be equal-length and nonempty",
                path.display()
            )));
        }
        Ok(spec)
    }
}

/// Frequency grid -max..=max in steps of `step`, mirrored about zero.
pub fn symmetric_grid(max_cm1: f64, step_cm1: f64) -> Vec<f64> {
    let n = (max_cm1 / step_cm1).round() as i64;
    (-n..=n).map(|i| i as f64 * step_cm1).collect()
}

/// Frequency grid 0..=max in steps of `step`.
pub fn positive_grid(max_cm1: f64, step_cm1: f64) -> Vec<f64> {
    let n = (max_cm1 / step_cm1).round() as i64;
    (0..=n).map(|i| i as f64 * step_cm1).collect()
}

/// Gaussian apodization parameters: sigma_t^2 = variance_fraction * t_max^2.
#[derive(Debug, Clone, Copy)]
pub struct WindowSpec {
    pub variance_fraction: f64,
    pub t_max: f64,
}

impl WindowSpec {
    pub fn new(variance_fraction: f64, t_max: f64) -> Result<Self> {
        if !(variance_fraction.is_finite() && variance_fraction > 0.0)
            || !(t_max.is_finite() && t_max > 0.0)
        {
            return Err(Error::InvalidWindow {
                fraction: variance_fraction,
                t_max,
            });
        }
        Ok(Self {
            variance_fraction,
            t_max,
        })
    }

    /// The window variance sigma_t^2 in fs^2.
    pub fn sigma_t_sq(&self) -> f64 {
        self.variance_fraction * self.t_max * self.t_max
    }

    /// w(t) = exp(-t^2 / (2 sigma_t^2)); w(0) = 1, so the frequency-domain
    /// convolution kernel has unit area automatically.
    pub fn weight(&self, t: f64) -> f64 {
        (-t * t / (2.0 * self.sigma_t_sq())).exp()
    }
}

/// Multiplies the series by the Gaussian window. The lag-0 value is
/// unchanged.
pub fn apply_gaussian_window(series: &CorrelationSeries, spec: &WindowSpec) -> CorrelationSeries {
    let values = series
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| v * spec.weight(k as f64 * series.dt))
        .collect();
    CorrelationSeries {
        dt: series.dt,
        values,
        origin_stats: series.origin_stats,
    }
}

/// Classical coupling density: the cosine quadrature
/// G(nu) = dt * [C_0 + 2 sum_k C_k cos(2 pi c nu t_k)]
/// implied by the symmetric extension C(-t) = C(t). Even in nu.
pub fn classical_tdcd(series: &CorrelationSeries, freq_grid: &[f64]) -> Result<Spectrum> {
    if freq_grid.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    let values = cosine_transform(&series.values, series.dt, freq_grid);
    Ok(Spectrum {
        kind: SpectrumKind::ClassicalG,
        temperature: None,
        correction: None,
        frequencies: freq_grid.to_vec(),
        values,
    })
}

/// dt * [v_0 + 2 sum_{k>=1} v_k cos(omega t_k)] on each grid frequency.
pub(crate) fn cosine_transform(values: &[f64], dt: f64, freq_grid: &[f64]) -> Vec<f64> {
    freq_grid
        .par_iter()
        .map(|&nu| {
            let omega = RAD_PER_FS_PER_CM1 * nu;
            let mut acc = values[0];
            for (k, v) in values.iter().enumerate().skip(1) {
                acc += 2.0 * v * (omega * k as f64 * dt).cos();
            }
            acc * dt
        })
        .collect()
}

/// Splits a spectrum on a reflection-symmetric grid into its symmetric and
/// antisymmetric parts, G_sym/asym(nu) = (G(nu) +- G(-nu)) / 2. The
/// antisymmetric part is returned with kind `J`.
pub fn sym_asym_split(spec: &Spectrum) -> Result<(Spectrum, Spectrum)> {
    spec.require_symmetric_grid()?;
    let n = spec.frequencies.len();
    let mut sym = vec![0.0; n];
    let mut asym = vec![0.0; n];
    for i in 0..n {
        let v = spec.values[i];
        let r = spec.values[n - 1 - i];
        sym[i] = 0.5 * (v + r);
        asym[i] = 0.5 * (v - r);
    }
    let sym = Spectrum {
        kind: spec.kind,
        temperature: spec.temperature,
        correction: spec.correction,
        frequencies: spec.frequencies.clone(),
        values: sym,
    };
    let asym = Spectrum {
        kind: SpectrumKind::J,
        temperature: spec.temperature,
        correction: spec.correction,
        frequencies: spec.frequencies.clone(),
        values: asym,
    };
    Ok((sym, asym))
}

/// j(nu) = Theta(nu) J(nu) / pi: positive-frequency restriction scaled by pi.
pub fn spectral_density_from_asym(j_spec: &Spectrum) -> Result<Spectrum> {
    j_spec.require_kind(SpectrumKind::J)?;
    let mut frequencies = Vec::new();
    let mut values = Vec::new();
    for (&nu, &v) in j_spec.frequencies.iter().zip(&j_spec.values) {
        if nu >= 0.0 {
            frequencies.push(nu);
            values.push(v / std::f64::consts::PI);
        }
    }
    if frequencies.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    Ok(Spectrum {
        kind: SpectrumKind::SpectralDensityJ,
        temperature: j_spec.temperature,
        correction: j_spec.correction,
        frequencies,
        values,
    })
}

/// J(nu) = pi (j(nu) - j(-nu)): odd extension of the spectral density onto a
/// symmetric grid, scaled by pi.
pub fn asym_from_spectral_density(sd: &Spectrum) -> Result<Spectrum> {
    sd.require_kind(SpectrumKind::SpectralDensityJ)?;
    let m = sd.frequencies.len();
    let has_zero = sd.frequencies.first().map(|&nu| nu == 0.0).unwrap_or(false);
    let mut frequencies = Vec::with_capacity(2 * m);
    let mut values = Vec::with_capacity(2 * m);
    for i in (0..m).rev() {
        if has_zero && i == 0 {
            continue; // the zero node is emitted once, below
        }
        frequencies.push(-sd.frequencies[i]);
        values.push(-std::f64::consts::PI * sd.values[i]);
    }
    for i in 0..m {
        frequencies.push(sd.frequencies[i]);
        values.push(std::f64::consts::PI * sd.values[i]);
    }
    if has_zero {
        // J(0) = pi (j(0) - j(0)) = 0 regardless of the stored j(0).
        let zero_idx = m - 1;
        values[zero_idx] = 0.0;
    }
    Ok(Spectrum {
        kind: SpectrumKind::J,
        temperature: sd.temperature,
        correction: sd.correction,
        frequencies,
        values,
    })
}

/// Trapezoid integral of the spectrum over [lo, hi] cm^-1 in the angular
/// measure d(omega) = 2*pi*c d(nu). For a spectral line this is the lobe
/// area that the closed-form references quote.
pub fn lobe_area_angular(spec: &Spectrum, lo_cm1: f64, hi_cm1: f64) -> f64 {
    let mut area = 0.0;
    for i in 0..spec.frequencies.len().saturating_sub(1) {
        let (a, b) = (spec.frequencies[i], spec.frequencies[i + 1]);
        if a >= lo_cm1 && b <= hi_cm1 {
            area += 0.5 * (spec.values[i] + spec.values[i + 1]) * (b - a);
        }
    }
    area * RAD_PER_FS_PER_CM1
}

/// Full width at half maximum of the transform of the window itself,
/// measured numerically on a fine grid. Used to verify the broadening the
/// window introduces in frequency domain.
pub fn window_kernel_fwhm(spec: &WindowSpec, dt: f64) -> f64 {
    let count = (spec.t_max / dt).ceil() as usize + 1;
    let window: Vec<f64> = (0..count).map(|k| spec.weight(k as f64 * dt)).collect();
    let grid: Vec<f64> = (0..4000).map(|i| i as f64 * 0.01).collect();
    let transform = cosine_transform(&window, dt, &grid);
    let peak = transform[0];
    let half = peak / 2.0;
    let mut crossing = None;
    for i in 1..transform.len() {
        if transform[i - 1] >= half && transform[i] < half {
            let frac = (transform[i - 1] - half) / (transform[i - 1] - transform[i]);
            crossing = Some(grid[i - 1] + frac * (grid[i] - grid[i - 1]));
            break;
        }
    }
    2.0 * crossing.unwrap_or(f64::NAN)
}
