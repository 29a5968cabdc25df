//! Atmospheric losses on the free-space channel: fog (Kruse), rain, snow and
//! scintillation, and their composition into a per-path [`LossBreakdown`].
//!
//! Fog comes out of the Kruse model as a natural extinction coefficient in
//! km⁻¹ and is converted to dB/km only when composed with the rain and snow
//! terms, which are empirical fits already expressed in dB/km.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{require_non_negative, require_positive, Result};
use crate::units::{attenuation_db_per_km, Wavelength};

/// Visibility at and above which the size-distribution exponent is 1.3.
pub const KRUSE_HIGH_VISIBILITY_KM: f64 = 6.0;
/// Snow-loss exponent.
pub const SNOW_EXPONENT: f64 = 1.38;

/// One atmospheric state along the path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherCondition {
    pub visibility_km: f64,
    pub rain_rate_mm_per_hr: f64,
    pub snow_rate_mm_per_hr: f64,
    /// Refractive-index structure constant Cn², m^(-2/3).
    pub cn2: f64,
}

impl WeatherCondition {
    pub fn new(visibility_km: f64, rain_rate: f64, snow_rate: f64, cn2: f64) -> Result<Self> {
        let w = Self {
            visibility_km,
            rain_rate_mm_per_hr: rain_rate,
            snow_rate_mm_per_hr: snow_rate,
            cn2,
        };
        w.validate()?;
        Ok(w)
    }

    /// Clear air: 50 km visibility, no precipitation, no turbulence.
    pub fn clear() -> Self {
        Self {
            visibility_km: 50.0,
            rain_rate_mm_per_hr: 0.0,
            snow_rate_mm_per_hr: 0.0,
            cn2: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("visibility_km", self.visibility_km)?;
        require_non_negative("rain_rate_mm_per_hr", self.rain_rate_mm_per_hr)?;
        require_non_negative("snow_rate_mm_per_hr", self.snow_rate_mm_per_hr)?;
        require_non_negative("cn2", self.cn2)?;
        Ok(())
    }
}

impl Default for WeatherCondition {
    fn default() -> Self {
        Self::clear()
    }
}

/// Path losses by mechanism, all in dB over the full path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossBreakdown {
    pub fog_db: f64,
    pub rain_db: f64,
    pub snow_db: f64,
    pub scintillation_db: f64,
    pub total_db: f64,
}

impl LossBreakdown {
    fn from_components(fog_db: f64, rain_db: f64, snow_db: f64, scintillation_db: f64) -> Self {
        Self {
            fog_db,
            rain_db,
            snow_db,
            scintillation_db,
            total_db: fog_db + rain_db + snow_db + scintillation_db,
        }
    }
}

/// Kruse size-distribution exponent `q` for visibility `v` (km).
///
/// 1.3 for `v >= 6`, `0.585·v^(1/3)` below. The exponent is discontinuous at
/// 6 km; the 1.3 branch is also used above 50 km.
pub fn size_distribution_exponent(visibility_km: f64) -> Result<f64> {
    let v = require_positive("visibility_km", visibility_km)?;
    if v >= KRUSE_HIGH_VISIBILITY_KM {
        Ok(1.3)
    } else {
        Ok(0.585 * v.cbrt())
    }
}

/// Kruse fog extinction in km⁻¹: `(3.912/V)·(λ/λ₀)^(-q)`.
pub fn fog_attenuation(visibility_km: f64, lambda: Wavelength, lambda0: Wavelength) -> Result<f64> {
    let q = size_distribution_exponent(visibility_km)?;
    Ok(3.912 / visibility_km * (lambda.um() / lambda0.um()).powf(-q))
}

/// Rain loss in dB/km: `1.076·R^(2/3)`, `R` in mm/h.
pub fn rain_attenuation(rate_mm_per_hr: f64) -> Result<f64> {
    let r = require_non_negative("rain_rate_mm_per_hr", rate_mm_per_hr)?;
    Ok(1.076 * r.powf(2.0 / 3.0))
}

/// Snow loss in dB/km: `A·S^1.38` with `A = 5.42e-5·λ[nm] + 5.9458`.
pub fn snow_attenuation(rate_mm_per_hr: f64, lambda: Wavelength) -> Result<f64> {
    let s = require_non_negative("snow_rate_mm_per_hr", rate_mm_per_hr)?;
    let a = 5.42e-5 * lambda.nm() + 5.9458;
    Ok(a * s.powf(SNOW_EXPONENT))
}

/// Rytov-form scintillation variance
/// `4·23.17·(2π/λ[nm]·1e9)^(7/6)·Cn²·L^(11/6)`, `L` in meters.
pub fn scintillation_variance(lambda: Wavelength, cn2: f64, length_m: f64) -> Result<f64> {
    let cn2 = require_non_negative("cn2", cn2)?;
    let length_m = require_non_negative("path length (m)", length_m)?;
    let wavenumber = 2.0 * PI / lambda.nm() * 1e9;
    Ok(4.0 * (23.17 * wavenumber.powf(7.0 / 6.0)) * cn2 * length_m.powf(11.0 / 6.0))
}

/// Fade margin in dB taken as two standard deviations of the scintillation.
pub fn scintillation_margin_db(variance: f64) -> Result<f64> {
    let v = require_non_negative("scintillation variance", variance)?;
    Ok(2.0 * v.sqrt())
}

/// Composes all four mechanisms over a path of `length_km`.
///
/// Fog, rain and snow scale with length; the scintillation margin is a single
/// path term evaluated at the full length.
pub fn total_path_loss(
    weather: &WeatherCondition,
    lambda: Wavelength,
    lambda0: Wavelength,
    length_km: f64,
) -> Result<LossBreakdown> {
    weather.validate()?;
    let l = require_non_negative("length_km", length_km)?;
    let fog_db =
        attenuation_db_per_km(fog_attenuation(weather.visibility_km, lambda, lambda0)?)? * l;
    let rain_db = rain_attenuation(weather.rain_rate_mm_per_hr)? * l;
    let snow_db = snow_attenuation(weather.snow_rate_mm_per_hr, lambda)? * l;
    let scint_db =
        scintillation_margin_db(scintillation_variance(lambda, weather.cn2, 1000.0 * l)?)?;
    Ok(LossBreakdown::from_components(
        fog_db, rain_db, snow_db, scint_db,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn um(v: f64) -> Wavelength {
        Wavelength::from_um(v).unwrap()
    }

    #[test]
    fn exponent_branches() {
        assert_eq!(size_distribution_exponent(10.0).unwrap(), 1.3);
        assert_eq!(size_distribution_exponent(1.0).unwrap(), 0.585);
        assert_relative_eq!(
            size_distribution_exponent(3.0).unwrap(),
            0.8437159986298339,
            max_relative = 1e-12
        );
        assert!(size_distribution_exponent(0.0).is_err());
        assert!(size_distribution_exponent(-2.0).is_err());
    }

    #[test]
    fn exponent_is_discontinuous_at_six_km() {
        let below = size_distribution_exponent(6.0 - 1e-12).unwrap();
        assert_relative_eq!(below, 1.0630155468068017, max_relative = 1e-9);
        assert_eq!(size_distribution_exponent(6.0).unwrap(), 1.3);
        assert_eq!(size_distribution_exponent(75.0).unwrap(), 1.3);
    }

    #[test]
    fn fog_examples() {
        assert_relative_eq!(fog_attenuation(10.0, um(0.55), um(0.55)).unwrap(), 0.3912);
        assert_relative_eq!(fog_attenuation(50.0, um(0.55), um(0.55)).unwrap(), 0.07824);
        assert_relative_eq!(
            fog_attenuation(1.0, um(1.55), um(0.55)).unwrap(),
            2.133865176551996,
            max_relative = 1e-12
        );
    }

    #[test]
    fn rain_examples() {
        assert_eq!(rain_attenuation(0.0).unwrap(), 0.0);
        assert_eq!(rain_attenuation(1.0).unwrap(), 1.076);
        assert_relative_eq!(rain_attenuation(8.0).unwrap(), 4.304, max_relative = 1e-12);
        assert!(matches!(
            rain_attenuation(-1.0),
            Err(crate::Error::Negative {
                name: "rain_rate_mm_per_hr",
                ..
            })
        ));
    }

    #[test]
    fn snow_examples() {
        assert_eq!(snow_attenuation(0.0, um(1.55)).unwrap(), 0.0);
        assert_relative_eq!(
            snow_attenuation(1.0, um(1.55)).unwrap(),
            6.02981,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            snow_attenuation(2.0, um(0.85)).unwrap(),
            15.594942446733716,
            max_relative = 1e-12
        );
        assert!(snow_attenuation(-0.5, um(1.55)).is_err());
    }

    #[test]
    fn scintillation_examples() {
        assert_eq!(scintillation_variance(um(1.55), 0.0, 1000.0).unwrap(), 0.0);
        assert_relative_eq!(
            scintillation_variance(um(1.55), 1e-14, 1000.0).unwrap(),
            15.001760358719128,
            max_relative = 1e-12
        );
        let one = scintillation_variance(um(1.55), 1e-14, 700.0).unwrap();
        let two = scintillation_variance(um(1.55), 1e-14, 1400.0).unwrap();
        assert_relative_eq!(two / one, 2f64.powf(11.0 / 6.0), max_relative = 1e-12);
        assert!(scintillation_variance(um(1.55), -1e-15, 1.0).is_err());
    }

    #[test]
    fn scintillation_margin_examples() {
        assert_eq!(scintillation_margin_db(0.0).unwrap(), 0.0);
        assert_eq!(scintillation_margin_db(4.0).unwrap(), 4.0);
        assert_relative_eq!(
            scintillation_margin_db(14.9).unwrap(),
            7.720103626247513,
            max_relative = 1e-12
        );
        assert!(scintillation_margin_db(-1.0).is_err());
    }

    #[test]
    fn clear_air_only_fog_contributes() {
        let b = total_path_loss(&WeatherCondition::clear(), um(1.55), um(0.55), 3.0).unwrap();
        assert_eq!(b.rain_db, 0.0);
        assert_eq!(b.snow_db, 0.0);
        assert_eq!(b.scintillation_db, 0.0);
        assert_eq!(b.total_db, b.fog_db);
        assert!(b.fog_db > 0.0);
    }

    #[test]
    fn zero_length_path_is_lossless() {
        let w = WeatherCondition::new(0.5, 20.0, 3.0, 1e-13).unwrap();
        let b = total_path_loss(&w, um(1.55), um(0.55), 0.0).unwrap();
        assert_eq!(b, LossBreakdown::from_components(0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn fog_plus_rain_worked_example() {
        let w = WeatherCondition::new(1.0, 8.0, 0.0, 0.0).unwrap();
        let b = total_path_loss(&w, um(1.55), um(0.55), 1.0).unwrap();
        assert_relative_eq!(b.fog_db, 9.2672587130204, max_relative = 1e-12);
        assert_relative_eq!(b.rain_db, 4.304, max_relative = 1e-12);
        assert_relative_eq!(b.total_db, 13.5712587130204, max_relative = 1e-12);
    }

    #[test]
    fn invalid_weather_is_rejected() {
        assert!(WeatherCondition::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(WeatherCondition::new(1.0, -1.0, 0.0, 0.0).is_err());
        assert!(WeatherCondition::new(1.0, 0.0, 0.0, -1e-14).is_err());
    }
}
