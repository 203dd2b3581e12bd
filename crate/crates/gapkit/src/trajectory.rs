//! Energy-gap trajectory loading, validation, and moments.
//!
//! The single ingestion format is CSV: a header row `time_fs,gap_cm1`, one
//! sample per row, with optional `#`-prefixed comment lines before the header
//! carrying `key=value` metadata (`temperature_K`, `site`). UTF-8, LF or CRLF.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Relative tolerance on time-grid uniformity when inferring dt.
const DT_UNIFORMITY_RTOL: f64 = 1e-6;

/// A uniformly sampled real energy-gap time series.
#[derive(Debug, Clone)]
pub struct GapTrajectory {
    /// Sampling step in fs.
    pub dt: f64,
    /// Energy gaps in cm^-1.
    pub samples: Vec<f64>,
    /// Temperature in kelvin.
    pub temperature: f64,
    /// Free-text label, e.g. a site id.
    pub label: String,
}

/// First and second moments of a trajectory, population convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryStats {
    /// Mean gap in cm^-1.
    pub mean: f64,
    /// Population variance (1/N) in cm^-2, so the lag-0 correlator equals it
    /// exactly.
    pub variance: f64,
    /// sqrt(variance) in cm^-1.
    pub std_dev: f64,
}

impl GapTrajectory {
    pub fn new(dt: f64, samples: Vec<f64>, temperature: f64, label: String) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidDt(dt));
        }
        if samples.len() < 2 {
            return Err(Error::TooFewRows);
        }
        if let Some(index) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidTemperature(temperature));
        }
        Ok(Self {
            dt,
            samples,
            temperature,
            label,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn stats(&self) -> TrajectoryStats {
        let n = self.samples.len() as f64;
        let mean = self.samples.iter().sum::<f64>() / n;
        let variance = self
            .samples
            .iter()
            .map(|x| {
                let d = x - mean;
                d * d
            })
            .sum::<f64>()
            / n;
        TrajectoryStats {
            mean,
            variance,
            std_dev: variance.sqrt(),
        }
    }

    /// Samples with the mean removed.
    pub fn centered(&self) -> Vec<f64> {
        let mean = self.stats().mean;
        self.samples.iter().map(|x| x - mean).collect()
    }
}

/// Optional metadata overrides when loading a trajectory. A `Some` field wins
/// over whatever the file carries.
#[derive(Debug, Clone, Default)]
pub struct LoadOverrides {
    pub temperature_kelvin: Option<f64>,
    pub dt_fs: Option<f64>,
    pub label: Option<String>,
}

/// Loads a trajectory from CSV (see module docs for the format). dt is
/// inferred from the time column, which must be uniform within 1e-6 relative
/// tolerance, unless overridden.
pub fn read_trajectory<R: BufRead>(reader: R, overrides: &LoadOverrides) -> Result<GapTrajectory> {
    let mut meta_temperature = None;
    let mut meta_label = None;
    let mut header_seen = false;
    let mut times: Vec<f64> = Vec::new();
    let mut gaps: Vec<f64> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io("<trajectory csv>", e))?;
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                match key.trim() {
                    "temperature_K" => {
                        let t = value.trim().parse::<f64>().map_err(|_| Error::CsvFormat {
                            line: line_no,
                            message: format!("non-numeric temperature_K value {value:?}"),
                        })?;
                        meta_temperature = Some(t);
                    }
                    "site" => meta_label = Some(value.trim().to_string()),
                    _ => {} // unknown metadata keys are ignored
                }
            }
            continue;
        }
        if !header_seen {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() < 2 || cols[0] != "time_fs" || cols[1] != "gap_cm1" {
                return Err(Error::CsvFormat {
                    line: line_no,
                    message: format!("expected header `time_fs,gap_cm1`, got {line:?}"),
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
        times.push(field("time_fs")?);
        gaps.push(field("gap_cm1")?);
    }

    if gaps.len() < 2 {
        return Err(Error::TooFewRows);
    }

    let inferred_dt = infer_uniform_dt(&times)?;
    let dt = overrides.dt_fs.unwrap_or(inferred_dt);
    let temperature = overrides
        .temperature_kelvin
        .or(meta_temperature)
        .ok_or(Error::MissingTemperature)?;
    let label = overrides.label.clone().or(meta_label).unwrap_or_default();

    GapTrajectory::new(dt, gaps, temperature, label)
}

pub fn load_trajectory(path: impl AsRef<Path>, overrides: &LoadOverrides) -> Result<GapTrajectory> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    read_trajectory(BufReader::new(file), overrides)
}

/// Writes a trajectory in the same CSV format `load_trajectory` reads.
pub fn write_trajectory<W: Write>(mut w: W, traj: &GapTrajectory) -> std::io::Result<()> {
    writeln!(w, "# temperature_K={}", traj.temperature)?;
    if !traj.label.is_empty() {
        writeln!(w, "# site={}", traj.label)?;
    }
    writeln!(w, "time_fs,gap_cm1")?;
    for (i, gap) in traj.samples.iter().enumerate() {
        writeln!(w, "{},{}", i as f64 * traj.dt, gap)?;
    }
    Ok(())
}

fn infer_uniform_dt(times: &[f64]) -> Result<f64> {
    let dt = times[1] - times[0];
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidDt(dt));
    }
    for (i, pair) in times.windows(2).enumerate() {
        let step = pair[1] - pair[0];
        if (step - dt).abs() > DT_UNIFORMITY_RTOL * dt.abs() {
            return Err(Error::NonUniformTimeGrid {
                // +2 skips the metadata-free view: report the row index within
                // the data block, 1-based on the second row of the pair.
                line: i + 2,
                found: step,
                expected: dt,
            });
        }
    }
    Ok(dt)
}
