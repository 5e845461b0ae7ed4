use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use treewass_core::asymptotics::Family;
use treewass_core::{rational, Instance, ProfileSpec, Rational};

use treewass_cli::commands;
use treewass_cli::parse::{self, Grid};
use treewass_cli::suites::{self, Suite, DEFAULT_SEED};
use treewass_cli::sweep::{self, SweepSpec};
use treewass_cli::{CliError, Result, RunReport};

#[derive(Parser)]
#[command(name = "treewass", version, about = "Exact 1-Wasserstein distances on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// W₁ of a JSON instance, or of a radial profile pair on the regular tree.
    W1 {
        /// Instance file: {"vertices":[...],"edges":[[u,v],...],"mu":{...},"nu":{...}}.
        instance: Option<PathBuf>,
        /// Radial profile such as srw:alpha=1/2,n=6, sphere:r=6, ball:r=6 or custom:[1,0,1/2].
        #[arg(long, conflicts_with = "instance")]
        profile: Option<ProfileSpec>,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Write the truncated radial instance here.
        #[arg(long, requires = "profile")]
        save_instance: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact W₁ against A·n + B over a parameter grid.
    Sweep {
        #[arg(long)]
        family: Family,
        /// Comma-separated laziness values.
        #[arg(long, default_value = "0")]
        alpha: String,
        #[arg(long, default_value = "1")]
        d: String,
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value = "0..20")]
        n: String,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficients of γ(y), G(q, y) and G₁(q, y).
    Series {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The exact coefficients A and B as JSON.
    Asym {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        alpha: Rational,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        q: u64,
    },
    /// Check the A/B inequality chain over a grid and print a CSV table.
    VerifyIneq {
        /// Words such as alpha=0,1/4 d=1..6 q=2..10.
        #[arg(long, num_args = 1.., required = true)]
        grid: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn print_json(v: &serde_json::Value, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out).map_err(|e| CliError::Io { path: "<stdout>".into(), source: e })
}

fn print_text(report: &RunReport) {
    for r in &report.records {
        println!("{:<10} {}  ({})", r.provenance.as_str(), r.w1_exact, r.w1_decimal);
    }
    for c in &report.checks {
        println!("{}: {} {}", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail);
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::W1 { instance, profile, q, d, save_instance, format } => {
            let report = match (instance, profile) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
                    commands::w1_instance(&Instance::from_json(&text)?)?
                }
                (None, Some(spec)) => {
                    let (report, inst) = commands::w1_radial(&spec, q, d)?;
                    if let Some(p) = save_instance {
                        std::fs::write(&p, inst.to_json())
                            .map_err(|e| CliError::Io { path: p.display().to_string(), source: e })?;
                    }
                    report
                }
                _ => return Err(CliError::BadArg("give an instance file or --profile".into())),
            };
            match format {
                Format::Text => print_text(&report),
                Format::Json => print_json(&report.to_json(), io::stdout().lock())?,
            }
            Ok(report.passed())
        }
        Command::Sweep { family, alpha, d, q, n, emit, out } => {
            let spec = SweepSpec {
                family,
                alpha: parse::parse_rationals(&alpha)?,
                d: parse::parse_range(&d)?,
                q: parse::parse_range(&q)?,
                n: parse::parse_range(&n)?,
            };
            let rows = sweep::run_sweep(&spec)?;
            let w = output(&out)?;
            match emit {
                Emit::Csv => sweep::write_csv(&rows, w)?,
                Emit::Json => print_json(&sweep::to_report(&rows).to_json(), w)?,
            }
            Ok(true)
        }
        Command::Series { family, alpha, q, order, emit, out } => {
            let rows = commands::series(family, &alpha, q, order)?;
            let w = output(&out)?;
            match emit {
                Emit::Csv => commands::write_series_csv(&rows, w)?,
                Emit::Json => print_json(&serde_json::to_value(&rows)?, w)?,
            }
            Ok(true)
        }
        Command::Asym { family, alpha, d, q } => {
            print_json(&commands::asym(family, &alpha, d, q)?, io::stdout().lock())?;
            Ok(true)
        }
        Command::VerifyIneq { grid, out } => {
            let rows = commands::verify_ineq(&Grid::parse(&grid)?)?;
            commands::write_ineq_csv(&rows, output(&out)?)?;
            Ok(rows.iter().all(|r| r.3.all_hold()))
        }
        Command::Verify { suite, seed } => {
            let report = suites::run(suite, seed)?;
            print_json(&report.to_json(), io::stdout().lock())?;
            for c in report.failures() {
                eprintln!("FAILED {}: {} ({})", c.suite, c.name, c.detail);
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
