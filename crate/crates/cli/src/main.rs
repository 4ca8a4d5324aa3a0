//! `finegrad`: enumerate fine gradings, print universal groups and supports,
//! decide equivalence, and compute Weyl groups.
//!
//! The data stream carries the report (JSON or a table); timing goes to
//! stderr. Exit codes: 0 ok, 2 usage or domain error, 3 verification
//! mismatch, 4 resource bound.

mod report;
mod spec_args;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use finegrad::error::DEFAULT_BOUND;
use finegrad::Error;

use crate::spec_args::SpecArgs;

#[derive(Parser, Debug)]
#[command(name = "finegrad", version, about = "Fine gradings on matrix algebras and Weyl groups of fine gradings on classical Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group enumerated element by element.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List one canonical spec per equivalence class of fine gradings.
    Enumerate {
        /// Series: A (both types), AI, AII, B, C or D.
        #[arg(long)]
        series: String,
        /// Matrix size.
        #[arg(long)]
        n: usize,
    },
    /// Closed-form Weyl group, optionally cross-checked by brute force.
    Weyl {
        #[command(flatten)]
        spec: SpecArgs,
        /// Also compute the group by closure on the support.
        #[arg(long)]
        verify: bool,
    },
    /// Decide whether two specs name equivalent gradings.
    Equiv {
        /// A spec in canonical JSON; give exactly two.
        #[arg(long = "spec", num_args = 1, required = true)]
        specs: Vec<String>,
        /// Compare φ-gradings up to weak equivalence.
        #[arg(long)]
        weak: bool,
    },
    /// Universal group: reduced presentation and closed form.
    Universal {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Support of the grading with component dimensions.
    Support {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::InvalidSpec(_) | Error::Parse(_) => 2,
        Error::Verification(_) => 3,
        Error::Resource { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Enumerate { series, n } => report::enumerate(series, *n, cli.bound),
        Command::Weyl { spec, verify } => report::weyl(spec, *verify, cli.bound),
        Command::Equiv { specs, weak } => report::equiv(specs, *weak, cli.bound),
        Command::Universal { spec } => report::universal(spec),
        Command::Support { spec } => report::support(spec),
    };
    eprintln!("finegrad: {:.3} s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(out) => {
            let mut body = serde_json::Map::new();
            body.insert("command".into(), Value::from(echo));
            if let Value::Object(fields) = out.body {
                body.extend(fields);
            }
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&Value::Object(body)).expect("serializable"),
                Format::Table => out.table,
            };
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(stdout, "{text}");
            match out.mismatch {
                Some(msg) => {
                    eprintln!("finegrad: verification mismatch: {msg}");
                    ExitCode::from(3)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("finegrad: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
