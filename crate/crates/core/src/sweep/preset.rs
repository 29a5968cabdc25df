//! Sweep presets for the parametric figures 5..14 and the trends each one is
//! expected to show.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::trend::{Direction, TrendExpectation};
use super::{FamilyMember, FamilyValue, SweepConfig, SweepSpec, SweepTarget};
use crate::error::Error;
use crate::fiber::{FiberLinkConfig, FiberMode, LineCoding, TransceiverPair};

/// Default number of grid points.
pub const DEFAULT_STEPS: usize = 101;

/// Transmitter and receiver bandwidth used for the line-coding comparison,
/// MHz. Matched (bit-rate) bandwidths would leave no rise-time room under
/// the RZ budget at any length.
pub const FIG14_TRANSCEIVER_BANDWIDTH_MHZ: f64 = 20_000.0;

const WAVELENGTHS_UM: [f64; 3] = [0.85, 1.3, 1.55];
const LENS_DIAMETERS_MM: [f64; 3] = [25.0, 50.0, 100.0];
const LINK_LENGTHS_KM: [f64; 4] = [0.25, 0.5, 1.0, 1.4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureId {
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
    Fig13,
    Fig14,
}

impl FigureId {
    pub const ALL: [FigureId; 10] = [
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
        FigureId::Fig10,
        FigureId::Fig11,
        FigureId::Fig12,
        FigureId::Fig13,
        FigureId::Fig14,
    ];

    pub fn number(self) -> u8 {
        match self {
            FigureId::Fig5 => 5,
            FigureId::Fig6 => 6,
            FigureId::Fig7 => 7,
            FigureId::Fig8 => 8,
            FigureId::Fig9 => 9,
            FigureId::Fig10 => 10,
            FigureId::Fig11 => 11,
            FigureId::Fig12 => 12,
            FigureId::Fig13 => 13,
            FigureId::Fig14 => 14,
        }
    }

    /// Trend expectations bundled with the preset.
    pub fn expectations(self) -> Vec<TrendExpectation> {
        use Direction::*;
        match self {
            FigureId::Fig5 => {
                let mut v: Vec<_> = WAVELENGTHS_UM
                    .iter()
                    .map(|&l| {
                        TrendExpectation::along(
                            1,
                            &fog_label(l),
                            Decreasing,
                            &format!("fog loss at {l} um falls as visibility grows"),
                        )
                    })
                    .collect();
                v.extend(WAVELENGTHS_UM.windows(2).map(|p| {
                    TrendExpectation::dominates(
                        1,
                        &fog_label(p[0]),
                        &fog_label(p[1]),
                        &format!("fog loss at {} um exceeds {} um", p[0], p[1]),
                    )
                }));
                v
            }
            FigureId::Fig6 => {
                // ray loss is reported in dB (<= 0): a larger loss is a more negative value
                let mut v: Vec<_> = LENS_DIAMETERS_MM
                    .iter()
                    .map(|&d| {
                        TrendExpectation::along(
                            2,
                            &ray_label(d),
                            Decreasing,
                            &format!("ray loss grows with beam diameter for a {d} mm lens"),
                        )
                    })
                    .collect();
                v.extend(LENS_DIAMETERS_MM.windows(2).map(|p| {
                    TrendExpectation::dominates(
                        2,
                        &ray_label(p[1]),
                        &ray_label(p[0]),
                        &format!("a {} mm lens loses less than a {} mm lens", p[1], p[0]),
                    )
                }));
                v
            }
            FigureId::Fig7 => {
                let mut v: Vec<_> = WAVELENGTHS_UM
                    .iter()
                    .map(|&l| {
                        TrendExpectation::along(
                            3,
                            &osnr_label(l),
                            Decreasing,
                            &format!("OSNR at {l} um falls with link length"),
                        )
                    })
                    .collect();
                v.extend(WAVELENGTHS_UM.windows(2).map(|p| {
                    TrendExpectation::dominates(
                        3,
                        &osnr_label(p[1]),
                        &osnr_label(p[0]),
                        &format!("OSNR at {} um exceeds {} um", p[1], p[0]),
                    )
                }));
                v
            }
            // The plain cubic has stationary points near 0.160 and 1.009 GHz
            // and the amplified curve crosses it near 0.657 GHz.
            FigureId::Fig8 => vec![
                TrendExpectation::along(
                    4,
                    "transmission_db_amplified",
                    Increasing,
                    "amplified transmission rises with frequency",
                ),
                TrendExpectation::along(
                    4,
                    "transmission_db_unamplified",
                    Increasing,
                    "unamplified transmission rises with frequency",
                )
                .within(0.2, 1.0),
                TrendExpectation::dominates(
                    4,
                    "transmission_db_amplified",
                    "transmission_db_unamplified",
                    "amplification raises transmission",
                )
                .within(0.7, 2.0),
            ],
            FigureId::Fig9 | FigureId::Fig10 => {
                let mut v: Vec<_> = LINK_LENGTHS_KM
                    .iter()
                    .map(|&l| {
                        TrendExpectation::along(
                            5,
                            &capacity_label(l),
                            Increasing,
                            &format!("capacity over {l} km rises with RF frequency"),
                        )
                    })
                    .collect();
                v.extend(LINK_LENGTHS_KM.windows(2).map(|p| {
                    TrendExpectation::dominates(
                        5,
                        &capacity_label(p[0]),
                        &capacity_label(p[1]),
                        &format!("capacity over {} km exceeds {} km", p[0], p[1]),
                    )
                }));
                v
            }
            FigureId::Fig11 => {
                let mut v: Vec<_> = WAVELENGTHS_UM
                    .iter()
                    .map(|&l| {
                        TrendExpectation::along(
                            6,
                            &overall_label(l),
                            Decreasing,
                            &format!("span limit at {l} um falls with bit rate"),
                        )
                    })
                    .collect();
                // equal once the wavelength-independent rise-time limit binds
                v.extend(WAVELENGTHS_UM.windows(2).map(|p| {
                    TrendExpectation::dominates(
                        6,
                        &overall_label(p[1]),
                        &overall_label(p[0]),
                        &format!("span limit at {} um is at least that at {} um", p[1], p[0]),
                    )
                    .non_strict()
                }));
                v
            }
            FigureId::Fig12 | FigureId::Fig13 => {
                let pairs = [TransceiverPair::LdApd, TransceiverPair::LedPin];
                let mut v: Vec<_> = pairs
                    .iter()
                    .map(|&p| {
                        TrendExpectation::along(
                            7,
                            &attenuation_label(p),
                            Decreasing,
                            &format!("attenuation-limited span with {p} falls with bit rate"),
                        )
                    })
                    .collect();
                v.push(TrendExpectation::dominates(
                    7,
                    &attenuation_label(TransceiverPair::LedPin),
                    &attenuation_label(TransceiverPair::LdApd),
                    "the lower-loss LED/PIN coupling reaches further than LD/APD",
                ));
                v
            }
            FigureId::Fig14 => vec![
                TrendExpectation::along(
                    8,
                    "L_NRZ_km",
                    Decreasing,
                    "NRZ rise-time limit falls with bit rate",
                ),
                TrendExpectation::along(
                    8,
                    "L_RZ_km",
                    Decreasing,
                    "RZ rise-time limit falls with bit rate",
                ),
                TrendExpectation::dominates(
                    8,
                    "L_NRZ_km",
                    "L_RZ_km",
                    "the looser NRZ budget reaches further than RZ",
                ),
            ],
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fig{}", self.number())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

fn fog_label(l: f64) -> String {
    format!("fog_db_per_km_{l}um")
}

fn ray_label(d: f64) -> String {
    format!("ray_loss_db_lens{d}mm")
}

fn osnr_label(l: f64) -> String {
    format!("osnr_db_{l}um")
}

fn capacity_label(l: f64) -> String {
    format!("capacity_gbps_{l}km")
}

fn overall_label(l: f64) -> String {
    format!("L_overall_km_{l}um")
}

fn attenuation_label(p: TransceiverPair) -> String {
    match p {
        TransceiverPair::LdApd => "L_att_km_LD_APD".to_string(),
        TransceiverPair::LedPin => "L_att_km_LED_PIN".to_string(),
    }
}

fn members<T: Copy>(
    values: &[T],
    label: fn(T) -> String,
    wrap: fn(T) -> FamilyValue,
) -> Vec<FamilyMember> {
    values
        .iter()
        .map(|&v| FamilyMember::new(label(v), wrap(v)))
        .collect()
}

/// Sweep definition for a figure, on the default configuration.
pub fn figure_preset(id: FigureId) -> SweepSpec {
    figure_preset_with(id, SweepConfig::default())
}

/// Sweep definition for a figure on top of `config`. Settings that define the
/// figure itself (fiber mode for figs. 12 to 14, fig. 14 transceiver
/// bandwidths) override the corresponding fields of `config`.
pub fn figure_preset_with(id: FigureId, config: SweepConfig) -> SweepSpec {
    let spec = |parameter: &str, start: f64, stop: f64, family, target| SweepSpec {
        preset: Some(id),
        parameter: parameter.to_string(),
        start,
        stop,
        steps: DEFAULT_STEPS,
        family,
        target,
        config,
    };
    match id {
        FigureId::Fig5 => spec(
            "visibility_km",
            0.5,
            50.0,
            members(&WAVELENGTHS_UM, fog_label, FamilyValue::WavelengthUm),
            SweepTarget::FogAttenuation,
        ),
        FigureId::Fig6 => spec(
            "beam_diameter_mm",
            50.0,
            500.0,
            members(&LENS_DIAMETERS_MM, ray_label, FamilyValue::LensDiameterMm),
            SweepTarget::RayLoss,
        ),
        FigureId::Fig7 => spec(
            "link_length_km",
            0.0,
            1.4,
            members(&WAVELENGTHS_UM, osnr_label, FamilyValue::WavelengthUm),
            SweepTarget::Osnr,
        ),
        FigureId::Fig8 => spec(
            "freq_ghz",
            0.0,
            2.0,
            vec![
                FamilyMember::new("transmission_db_unamplified", FamilyValue::Amplified(false)),
                FamilyMember::new("transmission_db_amplified", FamilyValue::Amplified(true)),
            ],
            SweepTarget::RfTransmission,
        ),
        FigureId::Fig9 | FigureId::Fig10 => spec(
            "freq_ghz",
            0.02,
            2.0,
            members(&LINK_LENGTHS_KM, capacity_label, FamilyValue::LinkLengthKm),
            SweepTarget::CapacityVsRf {
                amplified: id == FigureId::Fig10,
            },
        ),
        FigureId::Fig11 => spec(
            "B0_gbps",
            0.1,
            10.0,
            members(&WAVELENGTHS_UM, overall_label, FamilyValue::WavelengthUm),
            SweepTarget::FiberOverallLimit,
        ),
        FigureId::Fig12 | FigureId::Fig13 => {
            let mode = if id == FigureId::Fig12 {
                FiberMode::SingleMode
            } else {
                FiberMode::MultiMode
            };
            SweepSpec {
                config: SweepConfig {
                    fiber: FiberLinkConfig {
                        mode,
                        ..config.fiber
                    },
                    ..config
                },
                ..spec(
                    "B0_gbps",
                    0.1,
                    10.0,
                    members(
                        &[TransceiverPair::LdApd, TransceiverPair::LedPin],
                        attenuation_label,
                        FamilyValue::Transceiver,
                    ),
                    SweepTarget::AttenuationLimit,
                )
            }
        }
        FigureId::Fig14 => SweepSpec {
            config: SweepConfig {
                fiber: FiberLinkConfig {
                    tx_bandwidth_mhz: Some(FIG14_TRANSCEIVER_BANDWIDTH_MHZ),
                    rx_bandwidth_mhz: Some(FIG14_TRANSCEIVER_BANDWIDTH_MHZ),
                    mode: FiberMode::SingleMode,
                    ..config.fiber
                },
                ..config
            },
            ..spec(
                "B0_gbps",
                0.1,
                10.0,
                vec![
                    FamilyMember::new("L_NRZ_km", FamilyValue::Coding(LineCoding::Nrz)),
                    FamilyMember::new("L_RZ_km", FamilyValue::Coding(LineCoding::Rz)),
                ],
                SweepTarget::RiseTimeLimit,
            )
        },
    }
}
