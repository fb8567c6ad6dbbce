//! Command-line front end: preset listing, single bracket evaluation, and
//! suite execution with deterministic JSON reports.
//!
//! Exit codes: 0 on success, 1 when a must-pass verdict failed, 2 on
//! usage, parse, configuration, or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rpq_virasoro::config::RunConfig;
use rpq_virasoro::deformation::{preset, PRESET_NAMES};
use rpq_virasoro::eval::{eval_bracket, parse_bracket};
use rpq_virasoro::suites::run_report;

#[derive(Parser)]
#[command(name = "rpq-virasoro", version, about = "Exact verifier for deformed super Witt/Virasoro algebra identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the shipped deformations with their defining data.
    ListPresets,
    /// Evaluate one bracket descriptor and print its action table.
    Eval {
        /// Deformation preset name.
        #[arg(long, default_value = "jagannathan-srinivasa")]
        preset: String,
        /// Bracket descriptor, e.g. "[l 1, l 0]" or "[l 2, l 0, G -1]".
        #[arg(long)]
        expr: String,
        /// Basis window half-width for the action table.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Run verification suites from a config file and write a JSON report.
    Verify {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output path for the JSON report.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListPresets => {
            for name in PRESET_NAMES {
                match preset(name) {
                    Ok(d) => println!("{}", d.describe()),
                    Err(e) => {
                        eprintln!("error: preset {name}: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Command::Eval {
            preset: name,
            expr,
            window,
        } => {
            let d = match preset(&name) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let gens = match parse_bracket(&expr) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match eval_bracket(&d, &gens, window) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify { config, out } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: reading {}: {e}", config.display());
                    return ExitCode::from(2);
                }
            };
            let cfg = match RunConfig::from_json(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let report = match run_report(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let json = match serde_json::to_string_pretty(&report) {
                Ok(j) => j,
                Err(e) => {
                    eprintln!("error: serializing report: {e}");
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = std::fs::write(&out, json) {
                eprintln!("error: writing {}: {e}", out.display());
                return ExitCode::from(2);
            }
            println!(
                "{} cells: {} pass, {} fail ({} must-pass), {} skipped; report written to {}",
                report.reports.len(),
                report.summary.pass,
                report.summary.fail,
                report.summary.must_pass_failures,
                report.summary.skipped,
                out.display()
            );
            if report.summary.must_pass_failures > 0 {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
