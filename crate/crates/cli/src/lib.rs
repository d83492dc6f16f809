//! The `qrr` command line.
//!
//! ```text
//! qrr list
//! qrr verify --id dyson-1.1 --order 200
//! qrr verify-all --order 100 --jobs 8
//! qrr expand "poch(q, q, inf)" --order 20 --format json
//! ```
//!
//! Exit status is 0 when everything passed, 1 when a check failed and 2 on
//! usage errors.

pub mod report;

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use qrr_core::corpus::{lookup, registry, IdentityRecord, VerificationReport};
use qrr_core::{FormalSeries, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{rational_string, to_json, to_line};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qrr",
    version,
    about = "Verify q-series identities by exact truncated expansion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print every registered identity id with its anchor.
    List,
    /// Verify one identity.
    Verify {
        #[arg(long)]
        id: String,
        /// Truncation order (index bound for finite identities).
        #[arg(long, env = "QRR_DEFAULT_ORDER")]
        order: Option<usize>,
        /// Check an x-parametric identity at this point only.
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Option<Rational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify the whole registry in parallel.
    VerifyAll {
        #[arg(long, env = "QRR_DEFAULT_ORDER")]
        order: Option<usize>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand an expression to a truncated series.
    Expand {
        expr: String,
        #[arg(long, env = "QRR_DEFAULT_ORDER")]
        order: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Option<Rational>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational number p or p/q"))
}

#[derive(Serialize)]
struct Expansion {
    order: usize,
    coefficients: Vec<String>,
}

/// Runs the command line with explicit arguments and streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::List => {
            for r in registry() {
                writeln!(out, "{}\t{}", r.id, r.anchor).map_err(io)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { id, order, x, format } => {
            let record = lookup(&id).map_err(|e| e.to_string())?;
            let order = order.unwrap_or(record.default_order);
            let report = match &x {
                Some(x) if record.is_x_parametric() => record.verify_at(order, x),
                Some(_) => return Err(format!("`{id}` does not depend on x")),
                None => record.verify(order),
            };
            emit(out, &[report], format).map_err(io)
        }
        Command::VerifyAll { order, jobs, format } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| e.to_string())?;
            let reports: Vec<VerificationReport> =
                pool.install(|| registry().par_iter().map(|r| verify_bulk(r, order)).collect());
            emit(out, &reports, format).map_err(io)
        }
        Command::Expand { expr, order, x, format } => {
            let e = qrr_dsl::parse_expr(&expr).map_err(|e| e.to_string())?;
            let s = qrr_dsl::eval(&e, order, x.as_ref()).map_err(|e| e.to_string())?;
            print_series(out, &s, format).map_err(io)?;
            Ok(EXIT_PASS)
        }
    }
}

fn verify_bulk(r: &IdentityRecord, order: Option<usize>) -> VerificationReport {
    r.verify(order.map_or(r.default_order, |o| r.bulk_order(o)))
}

fn emit(out: &mut dyn Write, reports: &[VerificationReport], format: Format) -> std::io::Result<i32> {
    for r in reports {
        match format {
            Format::Json => writeln!(out, "{}", to_json(r))?,
            Format::Table => writeln!(out, "{}", to_line(r))?,
        }
    }
    if let Format::Table = format {
        let passed = reports.iter().filter(|r| r.passed()).count();
        writeln!(out, "{passed}/{} passed", reports.len())?;
    }
    Ok(if reports.iter().all(VerificationReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn print_series(out: &mut dyn Write, s: &FormalSeries, format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let e = Expansion {
                order: s.order(),
                coefficients: s.coeffs().iter().map(rational_string).collect(),
            };
            writeln!(out, "{}", serde_json::to_string(&e).expect("expansion serializes"))
        }
        Format::Table => {
            for (k, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{k}\t{c}")?;
            }
            Ok(())
        }
    }
}
