//! Monotonic-trend checks over sweep tables.

use serde::Serialize;
use std::fmt;

use super::{Cell, SweepTable};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendKind {
    /// `column` moves in `direction` as x increases.
    Along {
        column: String,
        direction: Direction,
    },
    /// `upper` lies above `lower` at every row.
    Dominates { upper: String, lower: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendExpectation {
    /// Number of the observed trend this encodes (1..=8).
    pub fact: u8,
    pub description: String,
    pub kind: TrendKind,
    /// Strict: differences must exceed `tolerance`. Non-strict: differences
    /// down to `-tolerance` are accepted as ties.
    pub strict: bool,
    pub tolerance: f64,
    /// Restricts the check to rows with x in `[lo, hi]`.
    pub x_window: Option<(f64, f64)>,
}

impl TrendExpectation {
    pub fn along(fact: u8, column: &str, direction: Direction, description: &str) -> Self {
        Self {
            fact,
            description: description.to_string(),
            kind: TrendKind::Along {
                column: column.to_string(),
                direction,
            },
            strict: true,
            tolerance: 0.0,
            x_window: None,
        }
    }

    pub fn dominates(fact: u8, upper: &str, lower: &str, description: &str) -> Self {
        Self {
            fact,
            description: description.to_string(),
            kind: TrendKind::Dominates {
                upper: upper.to_string(),
                lower: lower.to_string(),
            },
            strict: true,
            tolerance: 0.0,
            x_window: None,
        }
    }

    pub fn non_strict(self) -> Self {
        Self {
            strict: false,
            ..self
        }
    }

    pub fn within(self, lo: f64, hi: f64) -> Self {
        Self {
            x_window: Some((lo, hi)),
            ..self
        }
    }

    fn accepts(&self, diff: f64) -> bool {
        if self.strict {
            diff > self.tolerance
        } else {
            diff >= -self.tolerance
        }
    }

    fn in_window(&self, x: f64) -> bool {
        self.x_window.is_none_or(|(lo, hi)| x >= lo && x <= hi)
    }

    fn first_violation(&self, table: &SweepTable) -> Result<Option<usize>> {
        let xs = table.xs();
        let rows: Vec<usize> = (0..xs.len()).filter(|&i| self.in_window(xs[i])).collect();
        match &self.kind {
            TrendKind::Along { column, direction } => {
                let col = table.column(column)?;
                let sign = match direction {
                    Direction::Increasing => 1.0,
                    Direction::Decreasing => -1.0,
                };
                Ok(rows.windows(2).find_map(|w| {
                    let (prev, cur) = (w[0], w[1]);
                    let ok = match (&col[prev], &col[cur]) {
                        (Cell::Value(a), Cell::Value(b)) => self.accepts(sign * (b - a)),
                        _ => false,
                    };
                    (!ok).then_some(cur)
                }))
            }
            TrendKind::Dominates { upper, lower } => {
                let hi = table.column(upper)?;
                let lo = table.column(lower)?;
                Ok(rows.into_iter().find(|&i| match (&hi[i], &lo[i]) {
                    (Cell::Value(a), Cell::Value(b)) => !self.accepts(a - b),
                    _ => true,
                }))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendOutcome {
    pub expectation: TrendExpectation,
    pub passed: bool,
    /// Row index of the first violation.
    pub first_violation: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub outcomes: Vec<TrendOutcome>,
    pub passed: bool,
}

impl fmt::Display for TrendReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let e = &o.expectation;
            let status = if o.passed { "PASS" } else { "FAIL" };
            write!(f, "trend fact {} {status}: {}", e.fact, e.description)?;
            if let Some((lo, hi)) = e.x_window {
                write!(f, " [x in {lo}..{hi}]")?;
            }
            if let Some(row) = o.first_violation {
                write!(f, " (first violation at row {row})")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "trend overall: {}",
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Checks every expectation; an empty list passes vacuously.
pub fn check_trends(table: &SweepTable, expectations: &[TrendExpectation]) -> Result<TrendReport> {
    let outcomes = expectations
        .iter()
        .map(|e| {
            let first_violation = e.first_violation(table)?;
            Ok(TrendOutcome {
                expectation: e.clone(),
                passed: first_violation.is_none(),
                first_violation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = outcomes.iter().all(|o| o.passed);
    Ok(TrendReport { outcomes, passed })
}
