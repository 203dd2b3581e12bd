//! Decision tools: temperature-invariance scoring of corrected spectra,
//! three-time-correlator significance against permutation surrogates, and
//! experimental-profile rescaling.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corrections::CorrectionKind;
use crate::correlators::{three_time_on_centered, CorrelationSeries, ThreeTimeGrid};
use crate::error::{Error, Result};
use crate::spectral::{Spectrum, SpectrumKind};
use crate::trajectory::GapTrajectory;

/// Frequency bands (cm^-1) for the per-band invariance scores. The lowest
/// band covers the region most relevant for energy transfer; the highest is
/// the tail.
pub const INVARIANCE_BANDS: [(f64, f64); 3] = [(0.0, 200.0), (200.0, 600.0), (600.0, 2000.0)];

/// Default number of permutation surrogates.
pub const DEFAULT_SURROGATES: usize = 200;

/// Relative L2 mismatch between two spectra of the same correction method at
/// two temperatures. Zero means perfectly temperature-independent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub method: CorrectionKind,
    pub temperatures: (f64, f64),
    /// ||a - b||_2 / max(||a||_2, ||b||_2) over positive frequencies.
    pub relative_l2: f64,
    pub bands: Vec<BandDifference>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BandDifference {
    pub lo_cm1: f64,
    pub hi_cm1: f64,
    pub relative_l2: f64,
}

/// Compares two corrected spectra on the same grid. Both must carry the same
/// correction tag and two different temperatures. Symmetric in its arguments.
pub fn temperature_invariance(a: &Spectrum, b: &Spectrum) -> Result<InvarianceReport> {
    if a.kind != b.kind || !matches!(a.kind, SpectrumKind::J | SpectrumKind::SpectralDensityJ) {
        return Err(Error::WrongSpectrumKind {
            expected: "J",
            found: if a.kind != b.kind {
                b.kind.name()
            } else {
                a.kind.name()
            },
        });
    }
    if a.frequencies.len() != b.frequencies.len()
        || a.frequencies
            .iter()
            .zip(&b.frequencies)
            .any(|(x, y)| (x - y).abs() > 1e-9)
    {
        return Err(Error::GridMismatch);
    }
    let method = match (a.correction, b.correction) {
        (Some(x), Some(y)) if x == y => x,
        _ => {
            return Err(Error::MethodMismatch {
                a: a.correction.map(|c| c.name().to_string()),
                b: b.correction.map(|c| c.name().to_string()),
            })
        }
    };
    let temperatures = match (a.temperature, b.temperature) {
        (Some(x), Some(y)) if (x - y).abs() > 1e-9 => (x, y),
        _ => {
            return Err(Error::TemperatureMismatch {
                a: a.temperature,
                b: b.temperature,
            })
        }
    };

    let l2_in = |lo: f64, hi: f64| -> f64 {
        let mut num = 0.0;
        let mut norm_a = 0.0;
        let mut norm_b = 0.0;
        for ((&nu, &va), &vb) in a.frequencies.iter().zip(&a.values).zip(&b.values) {
            if nu > 0.0 && nu >= lo && nu < hi {
                num += (va - vb) * (va - vb);
                norm_a += va * va;
                norm_b += vb * vb;
            }
        }
        let denom = norm_a.max(norm_b).sqrt();
        if denom == 0.0 {
            0.0
        } else {
            num.sqrt() / denom
        }
    };

    let bands = INVARIANCE_BANDS
        .iter()
        .map(|&(lo, hi)| BandDifference {
            lo_cm1: lo,
            hi_cm1: hi,
            relative_l2: l2_in(lo, hi),
        })
        .collect();

    Ok(InvarianceReport {
        method,
        temperatures,
        relative_l2: l2_in(0.0, f64::INFINITY),
        bands,
    })
}

/// Peak statistics of the normalized two- and three-time correlators against
/// a permutation-surrogate noise floor.
///
/// The (0,0) entry of the three-time grid is the marginal third moment,
/// which permutations leave invariant; it carries no information about
/// temporal structure and is excluded from the peak statistic on both the
/// data and the surrogates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignificanceReport {
    /// max_k |C_k| / s^2 (1 at lag zero by construction).
    pub two_time_peak: f64,
    /// max_(k,j) != (0,0) |C(k,j)| / s^3.
    pub three_time_peak: f64,
    /// three_time_peak / two_time_peak.
    pub ratio: f64,
    /// 95th percentile (nearest-rank) of the surrogate peak distribution.
    pub noise_floor: f64,
    pub surrogates: usize,
    pub seed: u64,
}

/// Scores the three-time correlator of a trajectory against `surrogates`
/// random permutations of its centered samples. `c2` and `c3` must have been
/// computed from `traj`; the trajectory itself supplies the samples the
/// surrogates permute. Reproducible for a fixed seed.
pub fn three_point_significance(
    traj: &GapTrajectory,
    c2: &CorrelationSeries,
    c3: &ThreeTimeGrid,
    surrogates: usize,
    seed: u64,
) -> Result<SignificanceReport> {
    let stats = traj.stats();
    if stats.std_dev.is_nan() || stats.std_dev <= 0.0 {
        return Err(Error::ZeroStdDev);
    }
    let s2 = stats.variance;
    let s3 = stats.variance * stats.std_dev;

    let two_time_peak = c2.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())) / s2;
    let three_time_peak = grid_peak_excluding_origin(&c3.values) / s3;

    let centered = traj.centered();
    let peaks: Vec<f64> = (0..surrogates)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut shuffled = centered.clone();
            shuffled.shuffle(&mut rng);
            let grid = three_time_on_centered(&shuffled, c3.max_k, c3.max_j)
                .expect("surrogate grid bounds match the data grid");
            grid_peak_excluding_origin(&grid) / s3
        })
        .collect();

    let noise_floor = percentile_95(peaks);
    Ok(SignificanceReport {
        two_time_peak,
        three_time_peak,
        ratio: three_time_peak / two_time_peak,
        noise_floor,
        surrogates,
        seed,
    })
}

/// Max |value| over the row-major grid, skipping index 0, which holds the
/// (k, j) = (0, 0) entry.
fn grid_peak_excluding_origin(values: &[f64]) -> f64 {
    values.iter().skip(1).fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Nearest-rank 95th percentile.
fn percentile_95(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rank = ((0.95 * values.len() as f64).ceil() as usize).clamp(1, values.len());
    values[rank - 1]
}

/// Converts a tabulated experimental profile (nu, j~(nu)) into this crate's
/// spectral-density convention by multiplying with nu^2 (hbar omega in cm^-1
/// is numerically nu).
pub fn rescale_experimental_profile(profile: &[(f64, f64)]) -> Result<Spectrum> {
    if profile.is_empty() {
        return Err(Error::EmptyFrequencyGrid);
    }
    if let Some(&(nu, _)) = profile.iter().find(|(nu, _)| *nu < 0.0) {
        return Err(Error::NegativeFrequency(nu));
    }
    Ok(Spectrum {
        kind: SpectrumKind::SpectralDensityJ,
        temperature: None,
        correction: None,
        frequencies: profile.iter().map(|&(nu, _)| nu).collect(),
        values: profile.iter().map(|&(nu, v)| nu * nu * v).collect(),
    })
}
