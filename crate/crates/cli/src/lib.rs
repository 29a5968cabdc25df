//! Command-line front end for the optical link models.
//!
//! [`run`] is the whole program minus process exit, so tests can drive it
//! with in-memory streams. Exit codes: 0 success, 1 domain or config error,
//! 2 usage error.

pub mod config;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use optlink_core::atmosphere::total_path_loss;
use optlink_core::fiber::{fiber_link_limits, rise_time_budget};
use optlink_core::fso::{capacity_vs_rf, max_fso_distance, received_power_for_loss};
use optlink_core::sweep::{check_trends, figure_preset_with, run_sweep, FigureId, SweepConfig};

pub use config::{load_config, ConfigDocument};
use output::{Field, Record};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config value {key}: {reason}")]
    Config { key: String, reason: String },
    #[error("cannot parse config at {path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Domain(#[from] optlink_core::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "optlink",
    version,
    about = "Free-space and fiber optical link calculator"
)]
struct Cli {
    /// JSON document overriding the reference design
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free-space optical link
    Fso {
        #[command(subcommand)]
        command: FsoCommand,
    },
    /// Fiber link
    Fiber {
        #[command(subcommand)]
        command: FiberCommand,
    },
    /// Regenerate a figure as a CSV table; the trend report goes to stderr
    Sweep {
        #[arg(long, value_parser = parse_figure, value_name = "fig5..fig14")]
        figure: FigureId,
        /// Write the table here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the effective configuration document
    Defaults {
        #[arg(long)]
        show: bool,
    },
}

#[derive(Debug, Subcommand)]
enum FsoCommand {
    /// Loss breakdown, received power and margin at a link length
    Budget {
        #[arg(long, value_name = "KM", allow_negative_numbers = true)]
        length: f64,
    },
    /// Longest link that closes under the configured weather
    MaxDistance,
    /// Shannon capacity over the RF channel
    Capacity {
        #[arg(
            long,
            value_name = "GHZ",
            default_value_t = 1.0,
            allow_negative_numbers = true
        )]
        freq: f64,
        #[arg(
            long,
            value_name = "KM",
            default_value_t = 1.0,
            allow_negative_numbers = true
        )]
        length: f64,
        #[arg(long)]
        amplified: bool,
    },
}

#[derive(Debug, Subcommand)]
enum FiberCommand {
    /// Attenuation, PMD and rise-time span limits
    Limits,
    /// Rise-time budget at a span length
    RiseTime {
        #[arg(long, value_name = "KM", allow_negative_numbers = true)]
        length: f64,
    },
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|e: optlink_core::Error| e.to_string())
}

/// Runs the program with `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut diagnostics = String::new();
    match execute(&cli, &mut diagnostics) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            let _ = stderr.write_all(diagnostics.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

/// Returns the text destined for stdout. Nothing is printed until the whole
/// command has succeeded.
fn execute(cli: &Cli, diagnostics: &mut String) -> Result<String, CliError> {
    let config = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Fso { command } => Ok(fso(command, &config)?.render(cli.format)),
        Command::Fiber { command } => Ok(fiber(command, &config)?.render(cli.format)),
        Command::Sweep { figure, out } => {
            let spec = figure_preset_with(*figure, config);
            let table = run_sweep(&spec)?;
            let report = check_trends(&table, &figure.expectations())?;
            diagnostics.push_str(&report.to_string());
            let text = match cli.format {
                Format::Csv => table.to_csv(),
                Format::Json => output::table_json(&table),
            };
            match out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| CliError::Io {
                        path: path.display().to_string(),
                        reason: e.to_string(),
                    })?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Defaults { .. } => {
            let doc = ConfigDocument::describe(&config);
            Ok(match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
                    s.push('\n');
                    s
                }
                Format::Csv => output::flatten_document(&doc),
            })
        }
    }
}

fn fso(command: &FsoCommand, c: &SweepConfig) -> Result<Record, CliError> {
    let mut r = Record::default();
    match *command {
        FsoCommand::Budget { length } => {
            let loss = total_path_loss(&c.weather, c.fso.lambda, c.lambda0.0, length)?;
            let received = received_power_for_loss(&c.fso, loss.total_db, length)?;
            let received_dbm = received.dbm()?;
            let sensitivity_dbm = c.fso.rx_sensitivity.dbm()?;
            r.num("length_km", length)
                .num("fog_db", loss.fog_db)
                .num("rain_db", loss.rain_db)
                .num("snow_db", loss.snow_db)
                .num("scintillation_db", loss.scintillation_db)
                .num("total_loss_db", loss.total_db)
                .num("geometric_factor", c.fso.geometric_factor(length)?)
                .num("received_power_w", received.watts())
                .num("received_power_dbm", received_dbm)
                .num("rx_sensitivity_dbm", sensitivity_dbm)
                .num("link_margin_db", received_dbm - sensitivity_dbm)
                .push("closes", Field::Bool(received_dbm >= sensitivity_dbm));
        }
        FsoCommand::MaxDistance => {
            let d = max_fso_distance(&c.fso, &c.weather, c.lambda0.0)?;
            r.num("max_distance_km", d)
                .num("visibility_km", c.weather.visibility_km)
                .num("wavelength_um", c.fso.lambda.um());
        }
        FsoCommand::Capacity {
            freq,
            length,
            amplified,
        } => {
            let bps = capacity_vs_rf(freq, length, amplified)?;
            r.num("freq_ghz", freq)
                .num("length_km", length)
                .push("amplified", Field::Bool(amplified))
                .num("capacity_gbps", bps * 1e-9);
        }
    }
    Ok(r)
}

/// The serialized name of an enum, as accepted in the config document.
fn token<T: serde::Serialize>(v: T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => unreachable!("unit enum variant serializes as a string"),
    }
}

fn fiber(command: &FiberCommand, c: &SweepConfig) -> Result<Record, CliError> {
    let f = &c.fiber;
    let mut r = Record::default();
    r.text("transceiver", token(f.transceiver))
        .text("coding", token(f.coding))
        .text("mode", token(f.mode))
        .num("bit_rate_gbps", f.bit_rate_bps * 1e-9);
    match *command {
        FiberCommand::Limits => {
            let required = f.required_power()?.dbm()?;
            let lim = fiber_link_limits(f)?;
            r.num("required_power_dbm", required)
                .num("attenuation_limited_km", lim.attenuation_limited_km)
                .num("pmd_limited_km", lim.pmd_limited_km)
                .num("rise_time_limited_km", lim.rise_time_limited_km)
                .num("overall_km", lim.overall_km)
                .text("limiting_factor", token(lim.limiting_factor));
        }
        FiberCommand::RiseTime { length } => {
            let b = rise_time_budget(f, length)?;
            r.num("length_km", length)
                .num("t_tx_ns", b.t_tx_ns)
                .num("t_rx_ns", b.t_rx_ns)
                .num("t_mod_ns", b.t_mod_ns)
                .num("t_gvd_ns", b.t_gvd_ns)
                .num("t_sys_ns", b.t_sys_ns)
                .num("budget_ns", b.budget_ns)
                .push("passes", Field::Bool(b.passes));
        }
    }
    Ok(r)
}
