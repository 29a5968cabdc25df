//! Digital fiber link limits: photon-budget sensitivity, the
//! attenuation-limited span, the PMD limit, the chromatic-dispersion factor
//! and the rise-time budget.
//!
//! Bit rates are carried in bits/s, rise times in ns, spectral widths in nm
//! and dispersion in ns/(nm·km) unless a name says otherwise.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::solve::bisect;
use crate::units::{photon_energy, PowerLevel, Wavelength, SPEED_OF_LIGHT};

/// Upper end of the rise-time search bracket, km.
pub const RISE_TIME_BRACKET_KM: f64 = 1e4;
/// Bisection interval width for [`rise_time_limited_length`], km.
pub const RISE_TIME_TOLERANCE_KM: f64 = 1e-11;

/// Transmitter/receiver pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransceiverPair {
    #[serde(rename = "LED_PIN")]
    LedPin,
    #[serde(rename = "LD_APD")]
    LdApd,
}

impl TransceiverPair {
    pub fn coupling_loss_db(self) -> f64 {
        match self {
            Self::LedPin => 1.5,
            Self::LdApd => 8.0,
        }
    }

    pub fn spectral_width_nm(self) -> f64 {
        match self {
            Self::LedPin => 50.0,
            Self::LdApd => 1.0,
        }
    }

    /// Photons per bit at BER 1e-9 for the detector of the pair.
    pub fn photons_per_bit(self) -> f64 {
        match self {
            Self::LedPin => 1000.0,
            Self::LdApd => 250.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::LedPin => "LED/PIN",
            Self::LdApd => "LD/APD",
        }
    }
}

impl fmt::Display for TransceiverPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LineCoding {
    #[serde(rename = "NRZ")]
    Nrz,
    #[serde(rename = "RZ")]
    Rz,
}

impl LineCoding {
    /// Fraction of the bit period available to the system rise time.
    pub fn budget_fraction(self) -> f64 {
        match self {
            Self::Nrz => 0.7,
            Self::Rz => 0.35,
        }
    }
}

impl fmt::Display for LineCoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nrz => "NRZ",
            Self::Rz => "RZ",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberMode {
    SingleMode,
    MultiMode,
}

impl fmt::Display for FiberMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SingleMode => "single-mode",
            Self::MultiMode => "multi-mode",
        })
    }
}

/// How the receiver power requirement is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SensitivityMode {
    /// `hν·n₀·B₀` from the photons-per-bit requirement.
    PhotonBudget,
    /// A fixed required received power.
    Fixed(PowerLevel),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberLinkConfig {
    pub transceiver: TransceiverPair,
    pub source_power: PowerLevel,
    pub coupling_loss_db: f64,
    pub modulator_loss_db: f64,
    pub fiber_loss_db_per_km: f64,
    pub lambda: Wavelength,
    pub photons_per_bit: f64,
    pub bit_rate_bps: f64,
    /// `None` matches the transmitter bandwidth (MHz) to the bit rate (Mb/s).
    pub tx_bandwidth_mhz: Option<f64>,
    pub rx_bandwidth_mhz: Option<f64>,
    pub modal_bw_mhz_km: f64,
    pub modal_q: f64,
    pub source_spectral_width_nm: f64,
    pub dispersion_ns_per_nm_km: f64,
    pub pmd_coeff_ps_sqrtkm: f64,
    pub coding: LineCoding,
    pub mode: FiberMode,
    pub sensitivity: SensitivityMode,
}

impl FiberLinkConfig {
    /// Reference design for a transceiver pair: 100 mW source, 3.5 dB/km fiber,
    /// 900 MHz·km modal bandwidth with q = 0.7, 0.07 ns/(nm·km) dispersion,
    /// 1.55 µm, 1 Gb/s NRZ over single-mode fiber.
    pub fn for_transceiver(transceiver: TransceiverPair) -> Self {
        Self {
            transceiver,
            source_power: PowerLevel::from_milliwatts(100.0).unwrap(),
            coupling_loss_db: transceiver.coupling_loss_db(),
            modulator_loss_db: 0.0,
            fiber_loss_db_per_km: 3.5,
            lambda: Wavelength::from_um(1.55).unwrap(),
            photons_per_bit: transceiver.photons_per_bit(),
            bit_rate_bps: 1e9,
            tx_bandwidth_mhz: None,
            rx_bandwidth_mhz: None,
            modal_bw_mhz_km: 900.0,
            modal_q: 0.7,
            source_spectral_width_nm: transceiver.spectral_width_nm(),
            dispersion_ns_per_nm_km: 0.07,
            pmd_coeff_ps_sqrtkm: 0.5,
            coding: LineCoding::Nrz,
            mode: FiberMode::SingleMode,
            sensitivity: SensitivityMode::PhotonBudget,
        }
    }

    /// Switches the transceiver pair and the coupling loss, spectral width
    /// and photon requirement that come with it.
    pub fn with_transceiver(self, transceiver: TransceiverPair) -> Self {
        Self {
            transceiver,
            coupling_loss_db: transceiver.coupling_loss_db(),
            source_spectral_width_nm: transceiver.spectral_width_nm(),
            photons_per_bit: transceiver.photons_per_bit(),
            ..self
        }
    }

    pub fn tx_bandwidth(&self) -> f64 {
        self.tx_bandwidth_mhz.unwrap_or(self.bit_rate_bps * 1e-6)
    }

    pub fn rx_bandwidth(&self) -> f64 {
        self.rx_bandwidth_mhz.unwrap_or(self.bit_rate_bps * 1e-6)
    }

    /// Bit period in ns.
    pub fn bit_period_ns(&self) -> f64 {
        1e9 / self.bit_rate_bps
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("source_power", self.source_power.watts())?;
        require_non_negative("coupling_loss_db", self.coupling_loss_db)?;
        require_non_negative("modulator_loss_db", self.modulator_loss_db)?;
        require_non_negative("fiber_loss_db_per_km", self.fiber_loss_db_per_km)?;
        require_positive("photons_per_bit", self.photons_per_bit)?;
        require_positive("bit_rate", self.bit_rate_bps)?;
        require_positive("tx_bandwidth_mhz", self.tx_bandwidth())?;
        require_positive("rx_bandwidth_mhz", self.rx_bandwidth())?;
        require_positive("modal_bw_mhz_km", self.modal_bw_mhz_km)?;
        check_modal_q(self.modal_q)?;
        require_non_negative("source_spectral_width_nm", self.source_spectral_width_nm)?;
        require_non_negative("pmd_coeff_ps_sqrtkm", self.pmd_coeff_ps_sqrtkm)?;
        if let SensitivityMode::Fixed(p) = self.sensitivity {
            require_positive("rx_sensitivity", p.watts())?;
        }
        Ok(())
    }

    /// Required received power for this configuration.
    pub fn required_power(&self) -> Result<PowerLevel> {
        match self.sensitivity {
            SensitivityMode::PhotonBudget => {
                receiver_sensitivity(self.photons_per_bit, self.lambda, self.bit_rate_bps)
            }
            SensitivityMode::Fixed(p) => Ok(p),
        }
    }
}

impl Default for FiberLinkConfig {
    fn default() -> Self {
        Self::for_transceiver(TransceiverPair::LdApd)
    }
}

fn check_modal_q(q: f64) -> Result<f64> {
    // open interval (0.5, 1) nominally; the end points are accepted
    if (0.5..=1.0).contains(&q) {
        Ok(q)
    } else {
        Err(Error::OutOfRange {
            name: "modal_q",
            value: q,
            low: 0.5,
            high: 1.0,
            unit: "",
        })
    }
}

/// Power needed to deliver `n0` photons per bit at `bit_rate_bps`.
pub fn receiver_sensitivity(n0: f64, lambda: Wavelength, bit_rate_bps: f64) -> Result<PowerLevel> {
    let n0 = require_positive("photons_per_bit", n0)?;
    let b = require_non_negative("bit_rate", bit_rate_bps)?;
    PowerLevel::from_watts(photon_energy(lambda) * n0 * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AttenuationLimit {
    pub length_km: f64,
    /// False when the requirement exceeds the launched power after coupling
    /// and modulator losses; `length_km` is then 0.
    pub closes: bool,
}

/// Longest span at which the received power still meets the requirement.
pub fn attenuation_limited_length(cfg: &FiberLinkConfig) -> Result<AttenuationLimit> {
    let alpha = require_positive("fiber_loss_db_per_km", cfg.fiber_loss_db_per_km)?;
    let source_dbm = cfg.source_power.dbm()?;
    let required_dbm = cfg.required_power()?.dbm()?;
    let length = (source_dbm - cfg.coupling_loss_db - cfg.modulator_loss_db - required_dbm) / alpha;
    Ok(if length < 0.0 {
        AttenuationLimit {
            length_km: 0.0,
            closes: false,
        }
    } else {
        AttenuationLimit {
            length_km: length,
            closes: true,
        }
    })
}

/// Mean differential group delay in ps: `√L·Δτ_coeff`.
pub fn pmd_delay(length_km: f64, coeff_ps_sqrtkm: f64) -> Result<f64> {
    let l = require_non_negative("length_km", length_km)?;
    let c = require_non_negative("pmd_coeff_ps_sqrtkm", coeff_ps_sqrtkm)?;
    Ok(l.sqrt() * c)
}

/// Span at which the mean DGD reaches a tenth of the bit period (1 dB
/// penalty): `1/(100·B₀²·Δτ_coeff²)` with `B₀` in ps⁻¹.
pub fn pmd_limited_length(bit_rate_bps: f64, coeff_ps_sqrtkm: f64) -> Result<f64> {
    let b = require_positive("bit_rate", bit_rate_bps)? * 1e-12;
    let c = require_positive("pmd_coeff_ps_sqrtkm", coeff_ps_sqrtkm)?;
    Ok(1.0 / (100.0 * b * b * c * c))
}

/// `(λ/πc)·B²·L·D` evaluated in SI units. Reported only; no distance limit
/// is derived from it.
pub fn chromatic_dispersion_factor(
    lambda: Wavelength,
    bit_rate_bps: f64,
    length_km: f64,
    dispersion_ps_nm_km: f64,
) -> Result<f64> {
    let b = require_non_negative("bit_rate", bit_rate_bps)?;
    let l_m = require_non_negative("length_km", length_km)? * 1e3;
    // ps/(nm·km) -> s/m²
    let d = require_non_negative("dispersion_ps_nm_km", dispersion_ps_nm_km)? * 1e-6;
    Ok(lambda.meters() / (std::f64::consts::PI * SPEED_OF_LIGHT) * b * b * l_m * d)
}

/// Modal bandwidth in MHz of a span: `B₀/L^q`.
pub fn modal_bandwidth(modal_bw_mhz_km: f64, length_km: f64, q: f64) -> Result<f64> {
    let l = require_positive("length_km", length_km)?;
    let q = check_modal_q(q)?;
    Ok(modal_bw_mhz_km / l.powf(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiseTimeComponents {
    pub t_tx_ns: f64,
    pub t_rx_ns: f64,
    pub t_mod_ns: f64,
    pub t_gvd_ns: f64,
}

impl RiseTimeComponents {
    pub fn sum_of_squares(&self) -> f64 {
        self.t_tx_ns * self.t_tx_ns
            + self.t_rx_ns * self.t_rx_ns
            + self.t_mod_ns * self.t_mod_ns
            + self.t_gvd_ns * self.t_gvd_ns
    }
}

/// Transmitter, receiver, modal and chromatic rise times over `length_km`.
/// The modal term is zero on single-mode fiber.
pub fn rise_time_components(cfg: &FiberLinkConfig, length_km: f64) -> Result<RiseTimeComponents> {
    let l = require_non_negative("length_km", length_km)?;
    let b_tx = bandwidth("tx_bandwidth_mhz", cfg.tx_bandwidth())?;
    let b_rx = bandwidth("rx_bandwidth_mhz", cfg.rx_bandwidth())?;
    let t_mod_ns = match cfg.mode {
        FiberMode::MultiMode if l > 0.0 => {
            440.0 / modal_bandwidth(cfg.modal_bw_mhz_km, l, cfg.modal_q)?
        }
        _ => 0.0,
    };
    Ok(RiseTimeComponents {
        t_tx_ns: 350.0 / b_tx,
        t_rx_ns: 350.0 / b_rx,
        t_mod_ns,
        t_gvd_ns: cfg.dispersion_ns_per_nm_km.abs() * l * cfg.source_spectral_width_nm,
    })
}

fn bandwidth(name: &'static str, mhz: f64) -> Result<f64> {
    if mhz == 0.0 {
        return Err(Error::ZeroDenominator(name));
    }
    require_positive(name, mhz)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiseTimeBudget {
    pub t_tx_ns: f64,
    pub t_rx_ns: f64,
    pub t_mod_ns: f64,
    pub t_gvd_ns: f64,
    pub t_sys_ns: f64,
    pub budget_ns: f64,
    pub passes: bool,
}

/// Root-sum-square system rise time checked against the line-code budget.
pub fn system_rise_time(
    components: RiseTimeComponents,
    coding: LineCoding,
    bit_rate_bps: f64,
) -> Result<RiseTimeBudget> {
    for (name, t) in [
        ("t_tx_ns", components.t_tx_ns),
        ("t_rx_ns", components.t_rx_ns),
        ("t_mod_ns", components.t_mod_ns),
        ("t_gvd_ns", components.t_gvd_ns),
    ] {
        require_non_negative(name, t)?;
    }
    let bit_rate = require_positive("bit_rate", bit_rate_bps)?;
    let t_sys_ns = components.sum_of_squares().sqrt();
    let budget_ns = coding.budget_fraction() * 1e9 / bit_rate;
    Ok(RiseTimeBudget {
        t_tx_ns: components.t_tx_ns,
        t_rx_ns: components.t_rx_ns,
        t_mod_ns: components.t_mod_ns,
        t_gvd_ns: components.t_gvd_ns,
        t_sys_ns,
        budget_ns,
        passes: t_sys_ns <= budget_ns,
    })
}

/// Full rise-time budget of `cfg` over `length_km`.
pub fn rise_time_budget(cfg: &FiberLinkConfig, length_km: f64) -> Result<RiseTimeBudget> {
    system_rise_time(
        rise_time_components(cfg, length_km)?,
        cfg.coding,
        cfg.bit_rate_bps,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiseTimeLimit {
    pub length_km: f64,
    /// True when the budget is still met at the bracket end, i.e. nothing
    /// length-dependent limits the span.
    pub capped: bool,
}

/// Longest span whose system rise time fits the line-code budget.
pub fn rise_time_limited_length(cfg: &FiberLinkConfig) -> Result<RiseTimeLimit> {
    cfg.validate()?;
    let excess = |l: f64| rise_time_budget(cfg, l).map(|b| b.t_sys_ns - b.budget_ns);
    let at_zero = rise_time_budget(cfg, 0.0)?;
    if at_zero.t_sys_ns >= at_zero.budget_ns {
        return Err(Error::TransceiverLimited {
            fixed_ns: at_zero.t_sys_ns,
            budget_ns: at_zero.budget_ns,
        });
    }
    if excess(RISE_TIME_BRACKET_KM)? <= 0.0 {
        return Ok(RiseTimeLimit {
            length_km: RISE_TIME_BRACKET_KM,
            capped: true,
        });
    }
    let length_km = bisect(excess, 0.0, RISE_TIME_BRACKET_KM, RISE_TIME_TOLERANCE_KM)?;
    Ok(RiseTimeLimit {
        length_km,
        capped: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitingFactor {
    Attenuation,
    Pmd,
    RiseTime,
}

impl fmt::Display for LimitingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Attenuation => "attenuation",
            Self::Pmd => "pmd",
            Self::RiseTime => "rise_time",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberLimitsReport {
    pub attenuation_limited_km: f64,
    pub pmd_limited_km: f64,
    pub rise_time_limited_km: f64,
    pub overall_km: f64,
    pub limiting_factor: LimitingFactor,
}

/// All three span limits and the binding one.
pub fn fiber_link_limits(cfg: &FiberLinkConfig) -> Result<FiberLimitsReport> {
    cfg.validate()?;
    let attenuation = attenuation_limited_length(cfg)?.length_km;
    let pmd = pmd_limited_length(cfg.bit_rate_bps, cfg.pmd_coeff_ps_sqrtkm)?;
    let rise = rise_time_limited_length(cfg)?.length_km;
    let (limiting_factor, overall_km) = [
        (LimitingFactor::Attenuation, attenuation),
        (LimitingFactor::Pmd, pmd),
        (LimitingFactor::RiseTime, rise),
    ]
    .into_iter()
    .fold(
        (LimitingFactor::Attenuation, f64::INFINITY),
        |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        },
    );
    Ok(FiberLimitsReport {
        attenuation_limited_km: attenuation,
        pmd_limited_km: pmd,
        rise_time_limited_km: rise,
        overall_km,
        limiting_factor,
    })
}
