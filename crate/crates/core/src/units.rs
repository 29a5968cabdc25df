//! Scalar quantities shared by the link models.
//!
//! Canonical units: watts for power, dB/km for attenuation, micrometers for
//! wavelength, degrees for angles, kilometers for link length and
//! nanoseconds for rise times. Each newtype stores its canonical unit and
//! offers accessors for the others it is used in.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_10;

use crate::error::{require_finite, require_non_negative, require_positive, Result};

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Degrees per radian as printed in the divergence-based geometric terms.
///
/// Only used as a formula coefficient. General angle conversion goes through
/// [`AngleDeg::radians`], which uses full precision.
pub const DEG_PER_RAD: f64 = 57.295;

/// dB/km per km⁻¹ (natural-log extinction).
const DB_PER_NEPER_KM: f64 = 10.0 / LN_10;

/// Optical or electrical power, stored in watts.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerLevel(f64);

impl PowerLevel {
    pub fn from_watts(watts: f64) -> Result<Self> {
        require_non_negative("power (W)", watts).map(Self)
    }

    pub fn from_milliwatts(mw: f64) -> Result<Self> {
        require_non_negative("power (mW)", mw).map(|v| Self(v * 1e-3))
    }

    pub fn from_microwatts(uw: f64) -> Result<Self> {
        require_non_negative("power (uW)", uw).map(|v| Self(v * 1e-6))
    }

    pub fn from_dbm(dbm: f64) -> Result<Self> {
        require_finite("power (dBm)", dbm).map(|v| Self(1e-3 * 10f64.powf(v / 10.0)))
    }

    pub fn watts(self) -> f64 {
        self.0
    }

    pub fn milliwatts(self) -> f64 {
        self.0 * 1e3
    }

    /// Power in dBm. Fails for zero power.
    pub fn dbm(self) -> Result<f64> {
        power_dbm_from_watts(self.0)
    }
}

/// `10·log10(p / 1 mW)` for `p` in watts.
pub fn power_dbm_from_watts(watts: f64) -> Result<f64> {
    let p = require_positive("power (W)", watts)?;
    Ok(10.0 * (p / 1e-3).log10())
}

/// Converts a natural-log extinction coefficient (km⁻¹) to dB/km.
pub fn attenuation_db_per_km(sigma_per_km: f64) -> Result<f64> {
    require_non_negative("attenuation coefficient (1/km)", sigma_per_km)
        .map(|s| s * DB_PER_NEPER_KM)
}

/// Attenuation coefficient, stored in dB/km.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttenuationCoeff(f64);

impl AttenuationCoeff {
    pub fn from_db_per_km(db_per_km: f64) -> Result<Self> {
        require_non_negative("attenuation (dB/km)", db_per_km).map(Self)
    }

    pub fn from_per_km(sigma: f64) -> Result<Self> {
        attenuation_db_per_km(sigma).map(Self)
    }

    pub fn db_per_km(self) -> f64 {
        self.0
    }

    /// Natural-log extinction coefficient in km⁻¹.
    pub fn per_km(self) -> f64 {
        self.0 / DB_PER_NEPER_KM
    }
}

/// Optical wavelength, stored in micrometers.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Wavelength(f64);

impl Wavelength {
    pub fn from_um(um: f64) -> Result<Self> {
        require_positive("wavelength (um)", um).map(Self)
    }

    pub fn from_nm(nm: f64) -> Result<Self> {
        require_positive("wavelength (nm)", nm).map(|v| Self(v * 1e-3))
    }

    pub fn um(self) -> f64 {
        self.0
    }

    pub fn nm(self) -> f64 {
        self.0 * 1e3
    }

    pub fn meters(self) -> f64 {
        self.0 * 1e-6
    }
}

/// Angle in degrees.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleDeg(f64);

impl AngleDeg {
    pub fn new(degrees: f64) -> Result<Self> {
        require_finite("angle (deg)", degrees).map(Self)
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        self.0.to_radians()
    }
}

/// Photon energy `h·c/λ` in joules.
pub fn photon_energy(lambda: Wavelength) -> f64 {
    PLANCK * SPEED_OF_LIGHT / lambda.meters()
}
