//! Batch driver: config-described solves, N-sweeps and verification runs.

pub mod config;
pub mod error;
pub mod run;
pub mod verify_suite;

use std::io::Write;
use std::path::PathBuf;

pub use config::ProblemConfig;
pub use error::CliError;
pub use run::{ResultRecord, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Sweep,
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    /// Overrides the config's `output`.
    pub output: Option<PathBuf>,
    /// Reserved; the pipeline is deterministic.
    pub seed: Option<u64>,
    /// Write measured wall time instead of 0 in the CSV.
    pub timing: bool,
}

fn log_value(v: &str) -> String {
    if v.is_empty() || v.contains(char::is_whitespace) {
        serde_json::to_string(v).expect("string serializes")
    } else {
        v.to_string()
    }
}

/// `level=… event=… key=value …` on one line.
pub fn log_line(w: &mut dyn Write, level: &str, event: &str, fields: &[(&str, String)]) {
    let mut line = format!("level={level} event={event}");
    for (k, v) in fields {
        line += &format!(" {k}={}", log_value(v));
    }
    let _ = writeln!(w, "{line}");
}

fn record_fields(r: &ResultRecord, echo: &str) -> Vec<(&'static str, String)> {
    vec![
        ("N", r.n.to_string()),
        ("M", r.nodes.to_string()),
        ("errE", format!("{:e}", r.err_e)),
        ("errH", format!("{:e}", r.err_h)),
        ("residual", format!("{:e}", r.residual_norm)),
        ("cond", format!("{:e}", r.condition_estimate)),
        ("wall_ms", format!("{:.3}", r.wall_time_ms)),
        ("solver", format!("{:?}", r.solver_path)),
        ("config", echo.to_string()),
    ]
}

/// Runs one invocation. CSV goes to the output file if one is configured,
/// otherwise to `stdout`; with a file, the N, errE, errH table goes to
/// `stdout`.
pub fn execute(inv: &Invocation, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let cfg = ProblemConfig::load(&inv.config)?;
    let echo = cfg.echo();
    let seed = inv.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
    log_line(stderr, "info", "start", &[
        ("command", format!("{:?}", inv.command).to_lowercase()),
        ("seed", seed),
        ("config", echo.clone()),
    ]);

    if inv.command == Command::Verify {
        let rows = verify_suite::run_checks(&cfg)?;
        write!(stdout, "{}", verify_suite::format_checks(&rows))?;
        for r in &rows {
            log_line(stderr, "info", "check", &[
                ("name", r.name.clone()),
                ("value", format!("{:e}", r.value)),
                ("bound", format!("{:e}", r.bound)),
                ("passed", r.passed().to_string()),
            ]);
        }
        let failed = rows.iter().filter(|r| !r.passed()).count();
        if failed > 0 {
            return Err(CliError::Verification { failed, total: rows.len() });
        }
        log_line(stderr, "info", "done", &[("checks", rows.len().to_string())]);
        return Ok(());
    }

    let records = match inv.command {
        Command::Solve => {
            if cfg.n_values().len() != 1 {
                return Err(CliError::config("n", "solve takes a single N; use sweep for a list"));
            }
            vec![run::solve_one(&cfg, 0)?]
        }
        _ => run::sweep(&cfg)?,
    };
    for r in &records {
        log_line(stderr, "info", "record", &record_fields(r, &echo));
    }
    match inv.output.as_ref().or(cfg.output.as_ref()) {
        Some(path) => {
            run::write_csv(std::fs::File::create(path)?, &records, inv.timing)?;
            write!(stdout, "{}", run::format_table(&records))?;
        }
        None => run::write_csv(&mut *stdout, &records, inv.timing)?,
    }
    log_line(stderr, "info", "done", &[("records", records.len().to_string())]);
    Ok(())
}
