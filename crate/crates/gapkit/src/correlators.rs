//! Discrete two-time and three-time correlator estimators.
//!
//! Both estimators center the samples by the mean and normalize each lag by
//! its term count, so the lag-0 two-time value equals the population variance
//! exactly. The three-time grid is evaluated by streaming inner sums in
//! O(N*K*J); the two-time inner product is the hot loop and is written so the
//! compiler can vectorize it, with rows parallelized across lags.

use rayon::prelude::*;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::trajectory::{GapTrajectory, TrajectoryStats};

/// Default cap on the two-time lag count: 400 lags at the common 4 fs step
/// span 1600 fs.
pub const DEFAULT_MAX_LAG_CAP: usize = 400;

/// Default side length of the three-time grid, bounding the O(N*K*J) cost.
pub const DEFAULT_THREE_TIME_LAG: usize = 100;

/// Default two-time lag for a series of length `n`: min(n/4, 400).
pub fn default_max_lag(n: usize) -> usize {
    (n / 4).min(DEFAULT_MAX_LAG_CAP)
}

/// A 1-D lag series of two-time gap-fluctuation correlators, cm^-2.
#[derive(Debug, Clone)]
pub struct CorrelationSeries {
    /// Lag step in fs.
    pub dt: f64,
    /// C_k for k = 0..=max_lag.
    pub values: Vec<f64>,
    /// Moments of the source trajectory; `values[0]` equals
    /// `origin_stats.variance` when estimated from a trajectory.
    pub origin_stats: TrajectoryStats,
}

impl CorrelationSeries {
    /// Wraps raw correlator values (e.g. an analytic closed form), synthesizing
    /// the origin stats so the lag-0 invariant holds.
    pub fn from_values(dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidDt(dt));
        }
        if values.is_empty() {
            return Err(Error::TooFewRows);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        let variance = values[0];
        Ok(Self {
            dt,
            values,
            origin_stats: TrajectoryStats {
                mean: 0.0,
                variance,
                std_dev: variance.max(0.0).sqrt(),
            },
        })
    }

    /// Largest lag time K*dt in fs.
    pub fn t_max(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.dt
    }

    /// Lag times in fs.
    pub fn times(&self) -> Vec<f64> {
        (0..self.values.len()).map(|k| k as f64 * self.dt).collect()
    }

    /// Values divided by s^2; starts at exactly 1 for an estimator-produced
    /// series. Errors on zero standard deviation.
    pub fn normalized(&self) -> Result<Vec<f64>> {
        let s2 = self.origin_stats.variance;
        if s2.is_nan() || s2 <= 0.0 {
            return Err(Error::ZeroStdDev);
        }
        Ok(self.values.iter().map(|v| v / s2).collect())
    }
}

/// A 2-D lag grid of three-time gap-fluctuation correlators, cm^-3.
#[derive(Debug, Clone)]
pub struct ThreeTimeGrid {
    pub dt: f64,
    pub max_k: usize,
    pub max_j: usize,
    /// Row-major (K+1) x (J+1): entry (k, j) at `k * (max_j + 1) + j`.
    pub values: Vec<f64>,
    pub origin_stats: TrajectoryStats,
}

impl ThreeTimeGrid {
    pub fn value(&self, k: usize, j: usize) -> f64 {
        self.values[k * (self.max_j + 1) + j]
    }

    /// Values divided by s^3. Errors on zero standard deviation.
    pub fn normalized(&self) -> Result<Vec<f64>> {
        let s = self.origin_stats.std_dev;
        if s.is_nan() || s <= 0.0 {
            return Err(Error::ZeroStdDev);
        }
        let s3 = s * s * s;
        Ok(self.values.iter().map(|v| v / s3).collect())
    }
}

/// Two-time correlator estimate
/// C_k = (1/(N-k)) sum_i (X_i - mean)(X_{i+k} - mean), k = 0..=max_lag.
pub fn two_time_correlator(traj: &GapTrajectory, max_lag: usize) -> Result<CorrelationSeries> {
    let n = traj.len();
    if max_lag > n - 2 {
        return Err(Error::LagOutOfRange { max_lag, len: n });
    }
    let stats = traj.stats();
    let centered = traj.centered();
    let values: Vec<f64> = (0..=max_lag)
        .into_par_iter()
        .map(|k| lagged_inner(&centered, k) / (n - k) as f64)
        .collect();
    Ok(CorrelationSeries {
        dt: traj.dt,
        values,
        origin_stats: stats,
    })
}

/// Three-time correlator estimate
/// C(k,j) = (1/(N-k-j)) sum_i dX_i dX_{i+k} dX_{i+k+j}
/// for 0 <= k <= max_k, 0 <= j <= max_j.
pub fn three_time_correlator(
    traj: &GapTrajectory,
    max_k: usize,
    max_j: usize,
) -> Result<ThreeTimeGrid> {
    let stats = traj.stats();
    let centered = traj.centered();
    let values = three_time_on_centered(&centered, max_k, max_j)?;
    Ok(ThreeTimeGrid {
        dt: traj.dt,
        max_k,
        max_j,
        values,
        origin_stats: stats,
    })
}

/// Core of the three-time estimator, shared with the surrogate evaluation in
/// the diagnostics. `centered` must already have zero mean.
pub(crate) fn three_time_on_centered(
    centered: &[f64],
    max_k: usize,
    max_j: usize,
) -> Result<Vec<f64>> {
    let n = centered.len();
    if max_k + max_j > n.saturating_sub(2) {
        return Err(Error::LagBudgetExceeded {
            budget: max_k + max_j,
            bound: n.saturating_sub(2),
        });
    }
    let cols = max_j + 1;
    let rows: Vec<Vec<f64>> = (0..=max_k)
        .into_par_iter()
        .map(|k| {
            // Stream the pair products for this k once, then take inner
            // products against the shifted series for each j.
            let pair: Vec<f64> = (0..n - k).map(|i| centered[i] * centered[i + k]).collect();
            (0..cols)
                .map(|j| {
                    let count = n - k - j;
                    let sum: f64 = pair[..count]
                        .iter()
                        .zip(&centered[k + j..k + j + count])
                        .map(|(p, x)| p * x)
                        .sum();
                    sum / count as f64
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

fn lagged_inner(centered: &[f64], k: usize) -> f64 {
    let n = centered.len();
    centered[..n - k]
        .iter()
        .zip(&centered[k..])
        .map(|(a, b)| a * b)
        .sum()
}

/// Writes a correlator series as CSV `lag_fs,value_cm2`, with optional
/// per-lag standard errors in a third column and `temperature_K` metadata
/// in a leading comment.
pub fn write_correlation_csv<W: Write>(
    mut w: W,
    series: &CorrelationSeries,
    std_err: Option<&[f64]>,
    temperature: Option<f64>,
) -> std::io::Result<()> {
    if let Some(t) = temperature {
        writeln!(w, "# temperature_K={t}")?;
    }
    match std_err {
        None => {
            writeln!(w, "lag_fs,value_cm2")?;
            for (k, v) in series.values.iter().enumerate() {
                writeln!(w, "{},{}", k as f64 * series.dt, v)?;
            }
        }
        Some(errs) => {
            writeln!(w, "lag_fs,value_cm2,std_err_cm2")?;
            for (k, (v, e)) in series.values.iter().zip(errs).enumerate() {
                writeln!(w, "{},{},{}", k as f64 * series.dt, v, e)?;
            }
        }
    }
    Ok(())
}

/// Reads a correlator CSV written by [`write_correlation_csv`]. Extra columns
/// beyond `value_cm2` are ignored. Returns the series and the temperature
/// metadata if present.
pub fn read_correlation_csv<R: BufRead>(reader: R) -> Result<(CorrelationSeries, Option<f64>)> {
    let mut temperature = None;
    let mut header_seen = false;
    let mut lags: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io("<correlator csv>", e))?;
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "temperature_K" {
                    temperature = value.trim().parse::<f64>().ok();
                }
            }
            continue;
        }
        if !header_seen {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() < 2 || cols[0] != "lag_fs" || cols[1] != "value_cm2" {
                return Err(Error::CsvFormat {
                    line: line_no,
                    message: format!("expected header `lag_fs,value_cm2`, got {line:?}"),
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
        lags.push(field("lag_fs")?);
        values.push(field("value_cm2")?);
    }
    if values.is_empty() {
        return Err(Error::TooFewRows);
    }
    let dt = if lags.len() >= 2 {
        lags[1] - lags[0]
    } else {
        return Err(Error::TooFewRows);
    };
    let series = CorrelationSeries::from_values(dt, values)?;
    Ok((series, temperature))
}

pub fn load_correlation_csv(path: impl AsRef<Path>) -> Result<(CorrelationSeries, Option<f64>)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_correlation_csv(BufReader::new(file))
}

/// Writes a three-time grid as CSV `k_fs,j_fs,value_cm3`, one row per entry.
pub fn write_three_time_csv(path: impl AsRef<Path>, grid: &ThreeTimeGrid) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut w = BufWriter::new(file);
    (|| -> std::io::Result<()> {
        writeln!(w, "k_fs,j_fs,value_cm3")?;
        for k in 0..=grid.max_k {
            for j in 0..=grid.max_j {
                writeln!(
                    w,
                    "{},{},{}",
                    k as f64 * grid.dt,
                    j as f64 * grid.dt,
                    grid.value(k, j)
                )?;
            }
        }
        Ok(())
    })()
    .map_err(|e| Error::io(path.display().to_string(), e))
}
