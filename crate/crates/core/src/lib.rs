//! Analytical models of digital free-space optical (FSO) and fiber links.
//!
//! - [`units`]: power, attenuation, wavelength and angle quantities
//! - [`atmosphere`]: fog, rain, snow and scintillation losses
//! - [`fso`]: range equation, ray/geometric losses, OSNR and RF fits,
//!   capacity and maximum distance
//! - [`fiber`]: sensitivity, attenuation, PMD and rise-time span limits
//! - [`sweep`]: parameter sweeps, figure presets, CSV output and trend checks

pub mod atmosphere;
pub mod error;
pub mod exec;
pub mod fiber;
pub mod fso;
mod solve;
pub mod sweep;
pub mod units;

pub use atmosphere::{LossBreakdown, WeatherCondition};
pub use error::{Error, Result};
pub use exec::Execution;
pub use fiber::{
    FiberLimitsReport, FiberLinkConfig, FiberMode, LineCoding, RiseTimeBudget, TransceiverPair,
};
pub use fso::{FitDomain, FsoLinkConfig};
pub use sweep::{run_sweep, FigureId, SweepSpec, SweepTable};
pub use units::{AngleDeg, AttenuationCoeff, PowerLevel, Wavelength};
