//! One-dimensional parameter sweeps over the link models.
//!
//! A [`SweepSpec`] names a target operation, an x grid and a family of curve
//! parameters. [`run_sweep`] evaluates every grid point for every family
//! member; failures become [`Cell::Na`] instead of aborting the sweep. The
//! figure presets live in [`preset`] and the trend checks in [`trend`].

pub mod preset;
pub mod trend;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::atmosphere::{fog_attenuation, WeatherCondition};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::fiber::{
    attenuation_limited_length, fiber_link_limits, rise_time_limited_length, FiberLinkConfig,
    LineCoding, TransceiverPair,
};
use crate::fso::{
    capacity_vs_rf, osnr_from_distance, osnr_from_wavelength, ray_loss_db, rf_transmission_db,
    FsoLinkConfig,
};
use crate::units::{attenuation_db_per_km, Wavelength};

pub use preset::{figure_preset, figure_preset_with, FigureId};
pub use trend::{check_trends, Direction, TrendExpectation, TrendKind, TrendOutcome, TrendReport};

/// Wavelength at which the fig. 7 distance fit is anchored, µm.
pub const OSNR_ANCHOR_WAVELENGTH_UM: f64 = 1.55;

/// Operation evaluated at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepTarget {
    /// Kruse fog loss in dB/km; x = visibility (km), family = wavelength.
    FogAttenuation,
    /// Ray loss in dB; x = beam diameter at the receiver (mm), family = lens diameter.
    RayLoss,
    /// Fitted OSNR in dB; x = link length (km), family = wavelength.
    Osnr,
    /// RF transmission in dB; x = frequency (GHz), family = amplification.
    RfTransmission,
    /// Capacity in Gb/s; x = RF frequency (GHz), family = link length.
    CapacityVsRf { amplified: bool },
    /// Overall fiber span limit in km; x = bit rate (Gb/s), family = wavelength.
    FiberOverallLimit,
    /// Attenuation-limited span in km; x = bit rate (Gb/s), family = transceiver pair.
    AttenuationLimit,
    /// Rise-time-limited span in km; x = bit rate (Gb/s), family = line coding.
    RiseTimeLimit,
}

impl SweepTarget {
    pub fn id(&self) -> &'static str {
        match self {
            Self::FogAttenuation => "fog_attenuation",
            Self::RayLoss => "ray_loss",
            Self::Osnr => "osnr",
            Self::RfTransmission => "rf_transmission",
            Self::CapacityVsRf { amplified: false } => "capacity_vs_rf",
            Self::CapacityVsRf { amplified: true } => "capacity_vs_rf_amplified",
            Self::FiberOverallLimit => "fiber_overall_limit",
            Self::AttenuationLimit => "attenuation_limited_length",
            Self::RiseTimeLimit => "rise_time_limited_length",
        }
    }

    fn accepts(&self, family: &FamilyValue) -> bool {
        matches!(
            (self, family),
            (Self::FogAttenuation, FamilyValue::WavelengthUm(_))
                | (Self::RayLoss, FamilyValue::LensDiameterMm(_))
                | (Self::Osnr, FamilyValue::WavelengthUm(_))
                | (Self::RfTransmission, FamilyValue::Amplified(_))
                | (Self::CapacityVsRf { .. }, FamilyValue::LinkLengthKm(_))
                | (Self::FiberOverallLimit, FamilyValue::WavelengthUm(_))
                | (Self::AttenuationLimit, FamilyValue::Transceiver(_))
                | (Self::RiseTimeLimit, FamilyValue::Coding(_))
        )
    }
}

impl FromStr for SweepTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fog_attenuation" => Self::FogAttenuation,
            "ray_loss" => Self::RayLoss,
            "osnr" => Self::Osnr,
            "rf_transmission" => Self::RfTransmission,
            "capacity_vs_rf" => Self::CapacityVsRf { amplified: false },
            "capacity_vs_rf_amplified" => Self::CapacityVsRf { amplified: true },
            "fiber_overall_limit" => Self::FiberOverallLimit,
            "attenuation_limited_length" => Self::AttenuationLimit,
            "rise_time_limited_length" => Self::RiseTimeLimit,
            other => return Err(Error::UnknownOperation(other.to_string())),
        })
    }
}

impl fmt::Display for SweepTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// The second parameter that distinguishes the curves of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyValue {
    WavelengthUm(f64),
    LensDiameterMm(f64),
    Amplified(bool),
    LinkLengthKm(f64),
    Transceiver(TransceiverPair),
    Coding(LineCoding),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    /// Column header of this curve.
    pub label: String,
    pub value: FamilyValue,
}

impl FamilyMember {
    pub fn new(label: impl Into<String>, value: FamilyValue) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// Fixed configuration shared by all points of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepConfig {
    pub fso: FsoLinkConfig,
    pub fiber: FiberLinkConfig,
    pub weather: WeatherCondition,
    pub lambda0: ReferenceWavelength,
}

impl SweepConfig {
    /// First 16 hex digits of the SHA-256 of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let hash = Sha256::digest(json.as_bytes());
        hex::encode(&hash[..8])
    }
}

/// Kruse reference wavelength, 0.55 µm unless overridden.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReferenceWavelength(pub Wavelength);

impl Default for ReferenceWavelength {
    fn default() -> Self {
        Self(Wavelength::from_um(0.55).unwrap())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub preset: Option<FigureId>,
    /// Header of the x column.
    pub parameter: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub family: Vec<FamilyMember>,
    pub target: SweepTarget,
    pub config: SweepConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidRange(format!(
                "bounds must be finite (got {}..{})",
                self.start, self.stop
            )));
        }
        if self.start >= self.stop {
            return Err(Error::InvalidRange(format!(
                "start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidRange(format!(
                "need at least 2 steps (got {})",
                self.steps
            )));
        }
        if self.family.is_empty() {
            return Err(Error::InvalidRange("family must not be empty".into()));
        }
        if let Some(m) = self.family.iter().find(|m| !self.target.accepts(&m.value)) {
            return Err(Error::FamilyMismatch {
                operation: self.target.id(),
                family: m.label.clone(),
            });
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i == self.steps - 1 {
                    self.stop
                } else {
                    self.start + span * i as f64 / last
                }
            })
            .collect()
    }
}

/// A table cell: a finite value or a marked failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    Value(f64),
    Na(String),
}

impl Cell {
    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Na(_) => None,
        }
    }

    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) if v.is_finite() => Cell::Value(v),
            Ok(v) => Cell::Na(format!("non-finite result {v}")),
            Err(e) => Cell::Na(e.to_string()),
        }
    }
}

/// Token written for failed cells.
pub const NA_TOKEN: &str = "NA";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    /// x header followed by one header per family member.
    pub headers: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub metadata: Vec<(String, String)>,
}

impl SweepTable {
    /// All values of column `name`; the x column is returned as values.
    pub fn column(&self, name: &str) -> Result<Vec<Cell>> {
        let idx = self
            .headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))?;
        Ok(self
            .rows
            .iter()
            .map(|r| {
                if idx == 0 {
                    Cell::Value(r.x)
                } else {
                    r.cells[idx - 1].clone()
                }
            })
            .collect())
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.x).collect()
    }

    /// `#`-prefixed metadata, header row, then one line per grid point.
    /// Failed cells are written as `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}", row.x);
            for cell in &row.cells {
                match cell {
                    Cell::Value(v) => {
                        let _ = write!(out, ",{v}");
                    }
                    Cell::Na(_) => {
                        out.push(',');
                        out.push_str(NA_TOKEN);
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

fn evaluate(target: SweepTarget, x: f64, family: &FamilyValue, cfg: &SweepConfig) -> Result<f64> {
    use FamilyValue as F;
    match (target, family) {
        (SweepTarget::FogAttenuation, F::WavelengthUm(l)) => {
            let sigma = fog_attenuation(x, Wavelength::from_um(*l)?, cfg.lambda0.0)?;
            attenuation_db_per_km(sigma)
        }
        (SweepTarget::RayLoss, F::LensDiameterMm(d)) => ray_loss_db(d / 2.0, x / 2.0),
        (SweepTarget::Osnr, F::WavelengthUm(l)) => {
            let anchor = osnr_from_wavelength(Wavelength::from_um(OSNR_ANCHOR_WAVELENGTH_UM)?)?;
            Ok(osnr_from_distance(x)? + osnr_from_wavelength(Wavelength::from_um(*l)?)? - anchor)
        }
        (SweepTarget::RfTransmission, F::Amplified(a)) => rf_transmission_db(x, *a),
        (SweepTarget::CapacityVsRf { amplified }, F::LinkLengthKm(l)) => {
            capacity_vs_rf(x, *l, amplified).map(|c| c * 1e-9)
        }
        (SweepTarget::FiberOverallLimit, F::WavelengthUm(l)) => {
            let fiber = FiberLinkConfig {
                lambda: Wavelength::from_um(*l)?,
                bit_rate_bps: x * 1e9,
                ..cfg.fiber
            };
            fiber_link_limits(&fiber).map(|r| r.overall_km)
        }
        (SweepTarget::AttenuationLimit, F::Transceiver(t)) => {
            let fiber = FiberLinkConfig {
                bit_rate_bps: x * 1e9,
                ..cfg.fiber.with_transceiver(*t)
            };
            attenuation_limited_length(&fiber).map(|l| l.length_km)
        }
        (SweepTarget::RiseTimeLimit, F::Coding(c)) => {
            let fiber = FiberLinkConfig {
                bit_rate_bps: x * 1e9,
                coding: *c,
                ..cfg.fiber
            };
            rise_time_limited_length(&fiber).map(|l| l.length_km)
        }
        (target, _) => Err(Error::FamilyMismatch {
            operation: target.id(),
            family: format!("{family:?}"),
        }),
    }
}

/// Evaluates the sweep with the default execution strategy.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_with(spec, Execution::default())
}

pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepTable> {
    spec.validate()?;
    let grid = spec.grid();
    let rows = map_indexed(grid.len(), exec, |i| {
        let x = grid[i];
        let cells = spec
            .family
            .iter()
            .map(|m| Cell::from_result(evaluate(spec.target, x, &m.value, &spec.config)))
            .collect();
        SweepRow { x, cells }
    });
    let mut headers = Vec::with_capacity(spec.family.len() + 1);
    headers.push(spec.parameter.clone());
    headers.extend(spec.family.iter().map(|m| m.label.clone()));
    let mut metadata = Vec::new();
    if let Some(p) = spec.preset {
        metadata.push(("preset".to_string(), p.to_string()));
    }
    metadata.push(("operation".to_string(), spec.target.id().to_string()));
    metadata.push(("config_digest".to_string(), spec.config.digest()));
    Ok(SweepTable {
        headers,
        rows,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osnr_spec(start: f64, stop: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            preset: None,
            parameter: "link_length_km".into(),
            start,
            stop,
            steps,
            family: vec![FamilyMember::new(
                "osnr_db",
                FamilyValue::WavelengthUm(1.55),
            )],
            target: SweepTarget::Osnr,
            config: SweepConfig::default(),
        }
    }

    #[test]
    fn two_steps_two_rows() {
        let t = run_sweep(&osnr_spec(0.0, 1.0, 2)).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.xs(), vec![0.0, 1.0]);
    }

    #[test]
    fn fit_domain_edge_is_marked_not_fatal() {
        let t = run_sweep(&osnr_spec(1.0, 2.0, 11)).unwrap();
        for row in &t.rows {
            match &row.cells[0] {
                Cell::Value(_) => assert!(row.x <= 1.4),
                Cell::Na(reason) => {
                    assert!(row.x > 1.4);
                    assert!(reason.contains("fit domain"), "{reason}");
                }
            }
        }
        assert!(t.to_csv().contains(",NA\n"));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            run_sweep(&osnr_spec(1.0, 1.0, 5)),
            Err(Error::InvalidRange(_))
        ));
        assert!(matches!(
            run_sweep(&osnr_spec(0.0, 1.0, 1)),
            Err(Error::InvalidRange(_))
        ));
        let mut s = osnr_spec(0.0, 1.0, 5);
        s.family.clear();
        assert!(matches!(run_sweep(&s), Err(Error::InvalidRange(_))));
        let mut s = osnr_spec(0.0, 1.0, 5);
        s.family = vec![FamilyMember::new("x", FamilyValue::Amplified(true))];
        assert!(matches!(run_sweep(&s), Err(Error::FamilyMismatch { .. })));
    }

    #[test]
    fn unknown_operation_id() {
        assert_eq!(
            "warp_drive".parse::<SweepTarget>(),
            Err(Error::UnknownOperation("warp_drive".into()))
        );
        for t in [
            SweepTarget::FogAttenuation,
            SweepTarget::CapacityVsRf { amplified: true },
            SweepTarget::RiseTimeLimit,
        ] {
            assert_eq!(t.id().parse::<SweepTarget>().unwrap(), t);
        }
    }

    #[test]
    fn csv_layout() {
        let t = run_sweep(&osnr_spec(0.0, 1.0, 3)).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# operation: osnr");
        assert!(lines[1].starts_with("# config_digest: "));
        assert_eq!(lines[2], "link_length_km,osnr_db");
        assert_eq!(lines[3], "0,17.35");
        assert_eq!(lines.len(), 6);
        assert!(csv.ends_with('\n'));
        assert!(lines.iter().all(|l| !l.ends_with(',')));
    }

    #[test]
    fn missing_column() {
        let t = run_sweep(&osnr_spec(0.0, 1.0, 3)).unwrap();
        assert!(t.column("link_length_km").is_ok());
        assert_eq!(t.column("nope"), Err(Error::MissingColumn("nope".into())));
    }

    #[test]
    fn sequential_and_default_execution_agree() {
        let spec = figure_preset(FigureId::Fig11);
        let a = run_sweep_with(&spec, Execution::Sequential).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }
}
