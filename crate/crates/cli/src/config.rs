//! JSON configuration document.
//!
//! Every key carries its unit in its name. Absent keys keep the reference
//! design values; unknown keys are rejected so that typos surface early.

use serde::{Deserialize, Serialize};
use std::path::Path;

use optlink_core::fiber::SensitivityMode;
use optlink_core::sweep::{ReferenceWavelength, SweepConfig};
use optlink_core::{
    AngleDeg, FiberLinkConfig, FiberMode, FsoLinkConfig, LineCoding, PowerLevel, TransceiverPair,
    Wavelength, WeatherCondition,
};

use crate::CliError;

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default)]
    pub fso: FsoSection,
    #[serde(default)]
    pub weather: WeatherSection,
    #[serde(default)]
    pub fiber: FiberSection,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FsoSection {
    pub tx_power_mw: Option<f64>,
    pub wavelength_um: Option<f64>,
    pub divergence_deg: Option<f64>,
    pub rx_aperture_area_m2: Option<f64>,
    pub tx_lens_diameter_mm: Option<f64>,
    pub rx_lens_diameter_mm: Option<f64>,
    pub rx_lens_radius_mm: Option<f64>,
    pub tx_beam_waist_mm: Option<f64>,
    pub rx_sensitivity_uw: Option<f64>,
    pub optics_efficiency: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeatherSection {
    pub visibility_km: Option<f64>,
    pub rain_rate_mm_per_hr: Option<f64>,
    pub snow_rate_mm_per_hr: Option<f64>,
    pub cn2_m_minus_2_3: Option<f64>,
    pub reference_wavelength_um: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSection {
    /// Applied before every other fiber key.
    pub transceiver: Option<TransceiverPair>,
    pub source_power_mw: Option<f64>,
    pub coupling_loss_db: Option<f64>,
    pub modulator_loss_db: Option<f64>,
    pub fiber_loss_db_per_km: Option<f64>,
    pub wavelength_um: Option<f64>,
    pub photons_per_bit: Option<f64>,
    pub bit_rate_gbps: Option<f64>,
    /// Null means matched to the bit rate.
    pub tx_bandwidth_mhz: Option<f64>,
    pub rx_bandwidth_mhz: Option<f64>,
    pub modal_bandwidth_mhz_km: Option<f64>,
    pub modal_q: Option<f64>,
    pub source_spectral_width_nm: Option<f64>,
    pub dispersion_ns_per_nm_km: Option<f64>,
    pub pmd_coeff_ps_per_sqrt_km: Option<f64>,
    pub coding: Option<LineCoding>,
    pub mode: Option<FiberMode>,
    /// A fixed receiver requirement; null uses the photons-per-bit budget.
    pub rx_sensitivity_uw: Option<f64>,
}

fn invalid(key: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config {
        key: key.to_string(),
        reason: reason.to_string(),
    }
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(key, format_args!("must be > 0 (got {v})")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(invalid(key, format_args!("must be >= 0 (got {v})")))
    }
}

fn finite(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(key, format_args!("must be finite (got {v})")))
    }
}

fn set<T>(
    slot: &mut T,
    value: Option<f64>,
    key: &str,
    check: fn(&str, f64) -> Result<f64, CliError>,
    build: impl FnOnce(f64) -> optlink_core::Result<T>,
) -> Result<(), CliError> {
    if let Some(v) = value {
        let v = check(key, v)?;
        *slot = build(v).map_err(|e| invalid(key, e))?;
    }
    Ok(())
}

fn plain(v: f64) -> optlink_core::Result<f64> {
    Ok(v)
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Parse {
                path: if path.is_empty() || path == "." {
                    "<root>".into()
                } else {
                    path
                },
                reason: e.into_inner().to_string(),
            }
        })
    }

    /// The document describing `config`, used by `defaults --show`.
    pub fn describe(config: &SweepConfig) -> Self {
        let f = &config.fso;
        let w = &config.weather;
        let b = &config.fiber;
        Self {
            fso: FsoSection {
                tx_power_mw: Some(f.tx_power.milliwatts()),
                wavelength_um: Some(f.lambda.um()),
                divergence_deg: Some(f.divergence.degrees()),
                rx_aperture_area_m2: Some(f.rx_aperture_area_m2),
                tx_lens_diameter_mm: Some(f.tx_lens_diameter_mm),
                rx_lens_diameter_mm: Some(f.rx_lens_diameter_mm),
                rx_lens_radius_mm: Some(f.rx_lens_radius_mm),
                tx_beam_waist_mm: Some(f.tx_beam_waist_mm),
                rx_sensitivity_uw: Some(f.rx_sensitivity.watts() * 1e6),
                optics_efficiency: Some(f.optics_efficiency),
            },
            weather: WeatherSection {
                visibility_km: Some(w.visibility_km),
                rain_rate_mm_per_hr: Some(w.rain_rate_mm_per_hr),
                snow_rate_mm_per_hr: Some(w.snow_rate_mm_per_hr),
                cn2_m_minus_2_3: Some(w.cn2),
                reference_wavelength_um: Some(config.lambda0.0.um()),
            },
            fiber: FiberSection {
                transceiver: Some(b.transceiver),
                source_power_mw: Some(b.source_power.milliwatts()),
                coupling_loss_db: Some(b.coupling_loss_db),
                modulator_loss_db: Some(b.modulator_loss_db),
                fiber_loss_db_per_km: Some(b.fiber_loss_db_per_km),
                wavelength_um: Some(b.lambda.um()),
                photons_per_bit: Some(b.photons_per_bit),
                bit_rate_gbps: Some(b.bit_rate_bps * 1e-9),
                tx_bandwidth_mhz: b.tx_bandwidth_mhz,
                rx_bandwidth_mhz: b.rx_bandwidth_mhz,
                modal_bandwidth_mhz_km: Some(b.modal_bw_mhz_km),
                modal_q: Some(b.modal_q),
                source_spectral_width_nm: Some(b.source_spectral_width_nm),
                dispersion_ns_per_nm_km: Some(b.dispersion_ns_per_nm_km),
                pmd_coeff_ps_per_sqrt_km: Some(b.pmd_coeff_ps_sqrtkm),
                coding: Some(b.coding),
                mode: Some(b.mode),
                rx_sensitivity_uw: match b.sensitivity {
                    SensitivityMode::PhotonBudget => None,
                    SensitivityMode::Fixed(p) => Some(p.watts() * 1e6),
                },
            },
        }
    }

    /// Merges the document over the reference design and validates the result.
    pub fn resolve(&self) -> Result<SweepConfig, CliError> {
        let mut c = SweepConfig::default();
        self.apply_fso(&mut c.fso)?;
        self.apply_weather(&mut c.weather, &mut c.lambda0)?;
        self.apply_fiber(&mut c.fiber)?;
        c.fso.validate().map_err(|e| invalid("fso", e))?;
        c.weather.validate().map_err(|e| invalid("weather", e))?;
        c.fiber.validate().map_err(|e| invalid("fiber", e))?;
        Ok(c)
    }

    fn apply_fso(&self, f: &mut FsoLinkConfig) -> Result<(), CliError> {
        let s = &self.fso;
        set(
            &mut f.tx_power,
            s.tx_power_mw,
            "fso.tx_power_mw",
            positive,
            PowerLevel::from_milliwatts,
        )?;
        set(
            &mut f.lambda,
            s.wavelength_um,
            "fso.wavelength_um",
            positive,
            Wavelength::from_um,
        )?;
        set(
            &mut f.divergence,
            s.divergence_deg,
            "fso.divergence_deg",
            positive,
            AngleDeg::new,
        )?;
        set(
            &mut f.rx_aperture_area_m2,
            s.rx_aperture_area_m2,
            "fso.rx_aperture_area_m2",
            positive,
            plain,
        )?;
        set(
            &mut f.tx_lens_diameter_mm,
            s.tx_lens_diameter_mm,
            "fso.tx_lens_diameter_mm",
            positive,
            plain,
        )?;
        set(
            &mut f.rx_lens_diameter_mm,
            s.rx_lens_diameter_mm,
            "fso.rx_lens_diameter_mm",
            positive,
            plain,
        )?;
        set(
            &mut f.rx_lens_radius_mm,
            s.rx_lens_radius_mm,
            "fso.rx_lens_radius_mm",
            positive,
            plain,
        )?;
        set(
            &mut f.tx_beam_waist_mm,
            s.tx_beam_waist_mm,
            "fso.tx_beam_waist_mm",
            positive,
            plain,
        )?;
        set(
            &mut f.rx_sensitivity,
            s.rx_sensitivity_uw,
            "fso.rx_sensitivity_uw",
            positive,
            PowerLevel::from_microwatts,
        )?;
        if let Some(eta) = s.optics_efficiency {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(invalid(
                    "fso.optics_efficiency",
                    format_args!("must be in (0, 1] (got {eta})"),
                ));
            }
            f.optics_efficiency = eta;
        }
        Ok(())
    }

    fn apply_weather(
        &self,
        w: &mut WeatherCondition,
        lambda0: &mut ReferenceWavelength,
    ) -> Result<(), CliError> {
        let s = &self.weather;
        set(
            &mut w.visibility_km,
            s.visibility_km,
            "weather.visibility_km",
            positive,
            plain,
        )?;
        set(
            &mut w.rain_rate_mm_per_hr,
            s.rain_rate_mm_per_hr,
            "weather.rain_rate_mm_per_hr",
            non_negative,
            plain,
        )?;
        set(
            &mut w.snow_rate_mm_per_hr,
            s.snow_rate_mm_per_hr,
            "weather.snow_rate_mm_per_hr",
            non_negative,
            plain,
        )?;
        set(
            &mut w.cn2,
            s.cn2_m_minus_2_3,
            "weather.cn2_m_minus_2_3",
            non_negative,
            plain,
        )?;
        set(
            &mut lambda0.0,
            s.reference_wavelength_um,
            "weather.reference_wavelength_um",
            positive,
            Wavelength::from_um,
        )?;
        Ok(())
    }

    fn apply_fiber(&self, b: &mut FiberLinkConfig) -> Result<(), CliError> {
        let s = &self.fiber;
        if let Some(t) = s.transceiver {
            *b = b.with_transceiver(t);
        }
        set(
            &mut b.source_power,
            s.source_power_mw,
            "fiber.source_power_mw",
            positive,
            PowerLevel::from_milliwatts,
        )?;
        set(
            &mut b.coupling_loss_db,
            s.coupling_loss_db,
            "fiber.coupling_loss_db",
            non_negative,
            plain,
        )?;
        set(
            &mut b.modulator_loss_db,
            s.modulator_loss_db,
            "fiber.modulator_loss_db",
            non_negative,
            plain,
        )?;
        set(
            &mut b.fiber_loss_db_per_km,
            s.fiber_loss_db_per_km,
            "fiber.fiber_loss_db_per_km",
            non_negative,
            plain,
        )?;
        set(
            &mut b.lambda,
            s.wavelength_um,
            "fiber.wavelength_um",
            positive,
            Wavelength::from_um,
        )?;
        set(
            &mut b.photons_per_bit,
            s.photons_per_bit,
            "fiber.photons_per_bit",
            positive,
            plain,
        )?;
        set(
            &mut b.bit_rate_bps,
            s.bit_rate_gbps,
            "fiber.bit_rate_gbps",
            positive,
            |g| Ok(g * 1e9),
        )?;
        set(
            &mut b.tx_bandwidth_mhz,
            s.tx_bandwidth_mhz,
            "fiber.tx_bandwidth_mhz",
            positive,
            |v| Ok(Some(v)),
        )?;
        set(
            &mut b.rx_bandwidth_mhz,
            s.rx_bandwidth_mhz,
            "fiber.rx_bandwidth_mhz",
            positive,
            |v| Ok(Some(v)),
        )?;
        set(
            &mut b.modal_bw_mhz_km,
            s.modal_bandwidth_mhz_km,
            "fiber.modal_bandwidth_mhz_km",
            positive,
            plain,
        )?;
        if let Some(q) = s.modal_q {
            if !(0.5..=1.0).contains(&q) {
                return Err(invalid(
                    "fiber.modal_q",
                    format_args!("must be in [0.5, 1] (got {q})"),
                ));
            }
            b.modal_q = q;
        }
        set(
            &mut b.source_spectral_width_nm,
            s.source_spectral_width_nm,
            "fiber.source_spectral_width_nm",
            non_negative,
            plain,
        )?;
        set(
            &mut b.dispersion_ns_per_nm_km,
            s.dispersion_ns_per_nm_km,
            "fiber.dispersion_ns_per_nm_km",
            finite,
            plain,
        )?;
        set(
            &mut b.pmd_coeff_ps_sqrtkm,
            s.pmd_coeff_ps_per_sqrt_km,
            "fiber.pmd_coeff_ps_per_sqrt_km",
            non_negative,
            plain,
        )?;
        if let Some(c) = s.coding {
            b.coding = c;
        }
        if let Some(m) = s.mode {
            b.mode = m;
        }
        set(
            &mut b.sensitivity,
            s.rx_sensitivity_uw,
            "fiber.rx_sensitivity_uw",
            positive,
            |uw| PowerLevel::from_microwatts(uw).map(SensitivityMode::Fixed),
        )?;
        Ok(())
    }
}

/// Reads and resolves the document at `path`, or the reference design when
/// no path is given.
pub fn load_config(path: Option<&Path>) -> Result<SweepConfig, CliError> {
    match path {
        None => Ok(SweepConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                reason: e.to_string(),
            })?;
            ConfigDocument::parse(&text)?.resolve()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str) -> Result<SweepConfig, CliError> {
        ConfigDocument::parse(text)?.resolve()
    }

    #[test]
    fn empty_document_is_the_reference_design() {
        assert_eq!(resolve("{}").unwrap(), SweepConfig::default());
    }

    #[test]
    fn description_round_trips() {
        let c = SweepConfig::default();
        let text = serde_json::to_string(&ConfigDocument::describe(&c)).unwrap();
        assert_eq!(resolve(&text).unwrap(), c);
    }

    #[test]
    fn negative_power_names_the_key() {
        let e = resolve(r#"{"fso": {"tx_power_mw": -1}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("fso.tx_power_mw"), "{e}");
    }

    #[test]
    fn unknown_key_names_the_path() {
        let e = resolve(r#"{"fso": {"tx_power": 1}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("fso.tx_power"), "{e}");
        assert!(e.contains("unknown field"), "{e}");
        let e = resolve(r#"{"optics": {}}"#).unwrap_err().to_string();
        assert!(e.contains("optics"), "{e}");
    }

    #[test]
    fn wrong_type_names_the_path() {
        let e = resolve(r#"{"fiber": {"bit_rate_gbps": "fast"}}"#)
            .unwrap_err()
            .to_string();
        assert!(e.contains("fiber.bit_rate_gbps"), "{e}");
    }

    #[test]
    fn transceiver_brings_its_parameters() {
        let c = resolve(r#"{"fiber": {"transceiver": "LED_PIN"}}"#).unwrap();
        assert_eq!(c.fiber.coupling_loss_db, 1.5);
        assert_eq!(c.fiber.source_spectral_width_nm, 50.0);
        let c = resolve(r#"{"fiber": {"transceiver": "LD_APD"}}"#).unwrap();
        assert_eq!(c.fiber.coupling_loss_db, 8.0);
        assert_eq!(c.fiber.source_spectral_width_nm, 1.0);
    }

    #[test]
    fn explicit_keys_override_the_transceiver() {
        let c = resolve(r#"{"fiber": {"coupling_loss_db": 3, "transceiver": "LD_APD"}}"#).unwrap();
        assert_eq!(c.fiber.coupling_loss_db, 3.0);
    }

    #[test]
    fn fixed_sensitivity() {
        let c = resolve(r#"{"fiber": {"rx_sensitivity_uw": 2}}"#).unwrap();
        assert!(
            matches!(c.fiber.sensitivity, SensitivityMode::Fixed(p) if (p.watts() - 2e-6).abs() < 1e-18)
        );
    }

    #[test]
    fn modal_q_bounds() {
        assert!(resolve(r#"{"fiber": {"modal_q": 0.3}}"#)
            .unwrap_err()
            .to_string()
            .contains("fiber.modal_q"));
        assert!(resolve(r#"{"fiber": {"modal_q": 1}}"#).is_ok());
    }
}
