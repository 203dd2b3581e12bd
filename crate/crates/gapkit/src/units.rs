//! Unit system and thermal quantities.
//!
//! Everything internal runs on one unit system: energies and frequencies in
//! wavenumbers (cm^-1), time in femtoseconds. In this system hbar*Omega is
//! numerically the wavenumber itself, so hbar never appears as a standalone
//! constant and the dimensionless combination beta*hbar*omega reduces to
//! nu / (k_B T in cm^-1).

use crate::error::{Error, Result};

/// Boltzmann constant in cm^-1 per kelvin, k_B / (100 h c), from the exact
/// SI values k_B = 1.380649e-23 J/K, h = 6.62607015e-34 J s,
/// c = 299792458 m/s. Numerically 0.695034800 cm^-1/K.
pub const BOLTZMANN_CM1_PER_KELVIN: f64 = 1.380_649e-23 / (6.626_070_15e-34 * 2.997_924_58e10);

/// Angular frequency per wavenumber, 2*pi*c in rad fs^-1 cm: converts a
/// frequency nu in cm^-1 to omega = RAD_PER_FS_PER_CM1 * nu in rad/fs.
/// Numerically 1.883651567e-4.
pub const RAD_PER_FS_PER_CM1: f64 = 2.0 * std::f64::consts::PI * 2.997_924_58e-5;

/// Temperature plus the fixed unit conventions. All dimensionless
/// beta*hbar*omega combinations used by the corrections and the oracle are
/// computed through this type so they agree everywhere.
///
/// Immutable value type; freely shareable between threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalContext {
    temperature: f64,
}

impl PhysicalContext {
    pub fn new(temperature_kelvin: f64) -> Result<Self> {
        if !(temperature_kelvin.is_finite() && temperature_kelvin > 0.0) {
            return Err(Error::InvalidTemperature(temperature_kelvin));
        }
        Ok(Self {
            temperature: temperature_kelvin,
        })
    }

    pub fn temperature_kelvin(&self) -> f64 {
        self.temperature
    }

    /// k_B T in cm^-1.
    pub fn thermal_energy(&self) -> f64 {
        BOLTZMANN_CM1_PER_KELVIN * self.temperature
    }

    /// The dimensionless beta*hbar*omega for a frequency in cm^-1.
    /// Odd in `freq_cm1`; negative frequencies are allowed.
    pub fn beta_hbar_omega(&self, freq_cm1: f64) -> f64 {
        freq_cm1 / self.thermal_energy()
    }

    /// beta*hbar in fs, the time-domain shift of the Egelstaff correction:
    /// 1 / (2*pi*c * k_B T[cm^-1]).
    pub fn beta_hbar_time(&self) -> f64 {
        1.0 / (RAD_PER_FS_PER_CM1 * self.thermal_energy())
    }
}
