//! Wireless optical (FSO) link: range equation, ray and geometric losses,
//! fitted OSNR and RF-transmission responses, Shannon capacity and the
//! maximum closing distance.

use serde::{Deserialize, Serialize};

use crate::atmosphere::{total_path_loss, WeatherCondition};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::solve::bisect;
use crate::units::{AngleDeg, AttenuationCoeff, PowerLevel, Wavelength, DEG_PER_RAD};

/// Search bracket for [`max_fso_distance`], km.
pub const MAX_DISTANCE_BRACKET_KM: (f64, f64) = (1e-4, 100.0);
/// Bisection interval width for [`max_fso_distance`], km.
pub const MAX_DISTANCE_TOLERANCE_KM: f64 = 1e-7;

/// Validated input interval of a fitted polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitDomain {
    pub name: &'static str,
    pub low: f64,
    pub high: f64,
    pub unit: &'static str,
}

impl FitDomain {
    pub const fn new(name: &'static str, low: f64, high: f64, unit: &'static str) -> Self {
        assert!(low < high);
        Self {
            name,
            low,
            high,
            unit,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.low && x <= self.high
    }

    pub fn check(&self, x: f64) -> Result<f64> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::OutsideFitDomain {
                fit: self.name,
                value: x,
                low: self.low,
                high: self.high,
                unit: self.unit,
            })
        }
    }
}

/// OSNR-vs-distance fit; the cubic goes negative in dB near 1.32 km and
/// keeps falling.
pub const OSNR_DISTANCE_DOMAIN: FitDomain = FitDomain::new("OSNR vs link length", 0.0, 1.4, "km");
pub const OSNR_WAVELENGTH_DOMAIN: FitDomain =
    FitDomain::new("OSNR vs wavelength", 0.85, 1.55, "um");
pub const RF_FREQUENCY_DOMAIN: FitDomain =
    FitDomain::new("RF transmission vs frequency", 0.0, 2.0, "GHz");

/// Free-space link parameters. Defaults reproduce the reference design
/// (100 mW, 115° divergence, 0.1 m receiver, 2 µW sensitivity, 50 % optics).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsoLinkConfig {
    pub tx_power: PowerLevel,
    pub lambda: Wavelength,
    pub divergence: AngleDeg,
    pub rx_aperture_area_m2: f64,
    pub tx_lens_diameter_mm: f64,
    pub rx_lens_diameter_mm: f64,
    pub rx_lens_radius_mm: f64,
    pub tx_beam_waist_mm: f64,
    pub rx_sensitivity: PowerLevel,
    pub optics_efficiency: f64,
}

impl Default for FsoLinkConfig {
    fn default() -> Self {
        let rx_diameter_m = 0.1;
        Self {
            tx_power: PowerLevel::from_milliwatts(100.0).unwrap(),
            lambda: Wavelength::from_um(1.55).unwrap(),
            divergence: AngleDeg::new(115.0).unwrap(),
            rx_aperture_area_m2: std::f64::consts::PI
                * (rx_diameter_m / 2.0)
                * (rx_diameter_m / 2.0),
            tx_lens_diameter_mm: 100.0,
            rx_lens_diameter_mm: rx_diameter_m * 1e3,
            rx_lens_radius_mm: rx_diameter_m * 1e3 / 2.0,
            tx_beam_waist_mm: 10.0,
            rx_sensitivity: PowerLevel::from_microwatts(2.0).unwrap(),
            optics_efficiency: 0.5,
        }
    }
}

impl FsoLinkConfig {
    pub fn validate(&self) -> Result<()> {
        require_positive("tx_power", self.tx_power.watts())?;
        require_positive("divergence", self.divergence.degrees())?;
        require_positive("rx_aperture_area_m2", self.rx_aperture_area_m2)?;
        require_positive("tx_lens_diameter_mm", self.tx_lens_diameter_mm)?;
        require_positive("rx_lens_diameter_mm", self.rx_lens_diameter_mm)?;
        require_positive("rx_lens_radius_mm", self.rx_lens_radius_mm)?;
        require_positive("tx_beam_waist_mm", self.tx_beam_waist_mm)?;
        require_positive("rx_sensitivity", self.rx_sensitivity.watts())?;
        let eta = require_positive("optics_efficiency", self.optics_efficiency)?;
        if eta > 1.0 {
            return Err(Error::OutOfRange {
                name: "optics_efficiency",
                value: eta,
                low: 0.0,
                high: 1.0,
                unit: "",
            });
        }
        Ok(())
    }

    /// Divergence-limited collection factor `57.295·A_r/(θ·L)²` with θ in
    /// degrees and `L` in meters, capped at 1.
    pub fn geometric_factor(&self, length_km: f64) -> Result<f64> {
        let l = require_positive("length_km", length_km)?;
        let spread = self.divergence.degrees() * l * 1e3;
        Ok((DEG_PER_RAD * self.rx_aperture_area_m2 / (spread * spread)).min(1.0))
    }
}

/// Received power for a path with total atmospheric loss `loss_db`.
pub fn received_power_for_loss(
    cfg: &FsoLinkConfig,
    loss_db: f64,
    length_km: f64,
) -> Result<PowerLevel> {
    let geometric = cfg.geometric_factor(length_km)?;
    let loss_db = require_non_negative("path loss (dB)", loss_db)?;
    let p = cfg.tx_power.watts() * cfg.optics_efficiency * geometric * 10f64.powf(-loss_db / 10.0);
    PowerLevel::from_watts(p)
}

/// Range equation: `P_t·η·[57.295·A_r/(θL)²]·exp(-σL)`.
///
/// The geometric factor uses `L` in meters and is capped at 1; the extinction
/// uses σ in km⁻¹ and `L` in km.
pub fn received_power(
    cfg: &FsoLinkConfig,
    alpha: AttenuationCoeff,
    length_km: f64,
) -> Result<PowerLevel> {
    let l = require_positive("length_km", length_km)?;
    let geometric = cfg.geometric_factor(l)?;
    let p = cfg.tx_power.watts() * cfg.optics_efficiency * geometric * (-alpha.per_km() * l).exp();
    PowerLevel::from_watts(p)
}

/// Beam radius at the receiver in mm, assuming linear far-field growth at
/// the full divergence angle.
pub fn beam_radius(cfg: &FsoLinkConfig, length_km: f64) -> Result<f64> {
    let l = require_non_negative("length_km", length_km)?;
    Ok(cfg.tx_beam_waist_mm + 1e6 * l * (cfg.divergence.radians() / 2.0).tan())
}

/// Fraction of a Gaussian beam of radius `w` collected by a lens of radius
/// `R`, in dB: `10·log10(1 - exp(-2R²/w²))`. Always ≤ 0.
pub fn ray_loss_db(lens_radius_mm: f64, beam_radius_mm: f64) -> Result<f64> {
    let r = require_positive("lens_radius_mm", lens_radius_mm)?;
    let w = require_positive("beam_radius_mm", beam_radius_mm)?;
    let x = 2.0 * r * r / (w * w);
    // 1 - exp(-x) without cancellation for small x
    let collected = -(-x).exp_m1();
    if collected <= 0.0 {
        return Err(Error::NonPositive {
            name: "collected beam fraction",
            value: collected,
        });
    }
    Ok(10.0 * collected.log10())
}

/// Receiver/transmitter effective-area ratio from lens diameters and
/// divergence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometricCoupling {
    /// `(57.295·D_R/(D_T + 100·d·θ))²` as printed; exceeds 1 at short range.
    pub raw: f64,
}

impl GeometricCoupling {
    pub fn capped(&self) -> f64 {
        self.raw.min(1.0)
    }

    pub fn loss_db(&self) -> f64 {
        10.0 * self.capped().log10()
    }
}

/// `(57.295·D_R/(D_T + 100·d·θ))²` with diameters in mm, `d` in km and θ in
/// degrees.
pub fn geometric_coupling_ratio(
    cfg: &FsoLinkConfig,
    distance_km: f64,
) -> Result<GeometricCoupling> {
    let d = require_non_negative("distance_km", distance_km)?;
    let denom = cfg.tx_lens_diameter_mm + 100.0 * d * cfg.divergence.degrees();
    if denom == 0.0 {
        return Err(Error::ZeroDenominator("geometric coupling ratio"));
    }
    let ratio = DEG_PER_RAD * cfg.rx_lens_diameter_mm / denom;
    Ok(GeometricCoupling { raw: ratio * ratio })
}

/// Horner evaluation, coefficients from the constant term upward.
fn polynomial(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

const OSNR_DISTANCE: [f64; 4] = [17.35, -12.27, 7.05, -5.87];
const OSNR_WAVELENGTH: [f64; 4] = [3.85, -10.73, 2.13, 9.75];
const RF_UNAMPLIFIED: [f64; 4] = [10.82, -2.05, 7.42, -4.23];
const RF_AMPLIFIED: [f64; 4] = [3.09, 13.65, -2.56, 1.85];

/// Fitted OSNR (dB) against link length in km.
pub fn osnr_from_distance(length_km: f64) -> Result<f64> {
    OSNR_DISTANCE_DOMAIN
        .check(length_km)
        .map(|l| polynomial(&OSNR_DISTANCE, l))
}

/// Fitted OSNR (dB) against wavelength in µm.
pub fn osnr_from_wavelength(lambda: Wavelength) -> Result<f64> {
    OSNR_WAVELENGTH_DOMAIN
        .check(lambda.um())
        .map(|x| polynomial(&OSNR_WAVELENGTH, x))
}

/// Fitted RF transmission response (dB) at `freq_ghz`.
pub fn rf_transmission_db(freq_ghz: f64, amplified: bool) -> Result<f64> {
    let f = RF_FREQUENCY_DOMAIN.check(freq_ghz)?;
    Ok(if amplified {
        polynomial(&RF_AMPLIFIED, f)
    } else {
        polynomial(&RF_UNAMPLIFIED, f)
    })
}

/// Shannon capacity in bits/s for a dB signal-to-noise ratio.
pub fn channel_capacity(bandwidth_hz: f64, osnr_db: f64) -> Result<f64> {
    let bw = require_non_negative("bandwidth_hz", bandwidth_hz)?;
    let snr = 10f64.powf(osnr_db / 10.0);
    Ok(bw * snr.ln_1p() / std::f64::consts::LN_2)
}

/// Capacity with RF bandwidth `freq_ghz` over a link of `length_km`.
///
/// The OSNR comes from the distance fit; amplification adds the dB gap
/// between the amplified and plain RF responses at that frequency.
pub fn capacity_vs_rf(freq_ghz: f64, length_km: f64, amplified: bool) -> Result<f64> {
    let mut osnr_db = osnr_from_distance(length_km)?;
    let plain = rf_transmission_db(freq_ghz, false)?;
    if amplified {
        osnr_db += rf_transmission_db(freq_ghz, true)? - plain;
    }
    channel_capacity(freq_ghz * 1e9, osnr_db)
}

/// Longest link (km) whose received power meets the sensitivity, given the
/// path loss in dB as a function of length.
///
/// Returns 0 when the link does not close at the lower bracket end and the
/// upper bracket value when it still closes there.
pub fn max_distance_with_loss<F>(cfg: &FsoLinkConfig, loss_db: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    cfg.validate()?;
    let sensitivity = cfg.rx_sensitivity.watts();
    let surplus = |l: f64| -> Result<f64> {
        Ok(received_power_for_loss(cfg, loss_db(l)?, l)?.watts() - sensitivity)
    };
    let (lo, hi) = MAX_DISTANCE_BRACKET_KM;
    if surplus(lo)? < 0.0 {
        return Ok(0.0);
    }
    if surplus(hi)? >= 0.0 {
        return Ok(hi);
    }
    bisect(surplus, lo, hi, MAX_DISTANCE_TOLERANCE_KM)
}

/// Longest link (km) that closes under `weather`.
pub fn max_fso_distance(
    cfg: &FsoLinkConfig,
    weather: &WeatherCondition,
    lambda0: Wavelength,
) -> Result<f64> {
    weather.validate()?;
    max_distance_with_loss(cfg, |l| {
        total_path_loss(weather, cfg.lambda, lambda0, l).map(|b| b.total_db)
    })
}
