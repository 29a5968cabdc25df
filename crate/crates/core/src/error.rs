use thiserror::Error;

/// Errors raised by the link models.
///
/// Every message names the violated precondition so that it can be shown to
/// a user verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be > 0 (got {value})")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be >= 0 (got {value})")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside the valid range [{low}, {high}] {unit}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        low: f64,
        high: f64,
        unit: &'static str,
    },

    #[error("{fit}: {value} {unit} is outside the fit domain [{low}, {high}] {unit}")]
    OutsideFitDomain {
        fit: &'static str,
        value: f64,
        low: f64,
        high: f64,
        unit: &'static str,
    },

    #[error("zero denominator in {0}")]
    ZeroDenominator(&'static str),

    #[error(
        "transceiver-limited: fixed rise-time terms {fixed_ns} ns already meet or exceed the {budget_ns} ns budget"
    )]
    TransceiverLimited { fixed_ns: f64, budget_ns: f64 },

    #[error("unknown sweep operation `{0}`")]
    UnknownOperation(String),

    #[error("unknown figure preset `{0}` (expected fig5..fig14)")]
    UnknownPreset(String),

    #[error("invalid sweep range: {0}")]
    InvalidRange(String),

    #[error("sweep family value `{family}` does not apply to operation `{operation}`")]
    FamilyMismatch {
        operation: &'static str,
        family: String,
    },

    #[error("column `{0}` does not exist in the table")]
    MissingColumn(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    require_finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Negative { name, value })
    }
}

pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
