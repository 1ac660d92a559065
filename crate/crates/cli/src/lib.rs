//! The `pretropism` command line.

pub mod bench;
pub mod error;
pub mod input;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pretropism::engine::find_pretropisms;
use pretropism::oracle::definitional_pretropisms;
use pretropism::systems::{to_polynomial_text, to_support_json, Family};
use pretropism::Options;

use crate::bench::{format_table, run_bench, BenchConfig};
use crate::error::CliError;
use crate::input::{load_input, parse_range};
use crate::report::{format_rays, format_stats, RunReport};

#[derive(Debug, Parser)]
#[command(name = "pretropism", version, about = "Pretropisms of Newton polytopes")]
pub struct Cli {
    /// More log output on stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute pretropisms by pruned edge-skeleton exploration.
    Compute(RunArgs),
    /// Compute pretropisms by full common refinement.
    Oracle {
        #[command(flatten)]
        run: RunArgs,
        /// Also run the pruned algorithm and fail unless the ray sets agree.
        #[arg(long)]
        check: bool,
    },
    /// Write a benchmark system.
    Gen {
        family: String,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (default: standard output).
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GenFormat::Sup)]
        format: GenFormat,
    },
    /// Compare definitional and pruning intersection counts over a size range.
    Bench {
        family: String,
        /// Inclusive range such as `4..8`.
        range: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        no_sort: bool,
        /// Skip the definitional algorithm for sizes above this.
        #[arg(long)]
        max_definitional: Option<usize>,
        /// Also write the table as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenFormat {
    /// JSON support file.
    Sup,
    /// Polynomial text with unit coefficients.
    Poly,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// System file (`.sup`/`.json` support file or polynomial text), or
    /// `gen:<family>:n=<n>[:seed=<s>]`.
    pub input: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Process polytopes in input order.
    #[arg(long)]
    pub no_sort: bool,
    /// Report only rays with positive first coordinate.
    #[arg(long)]
    pub first_positive: bool,
    /// Restrict exploration itself to the half-space of nonnegative first
    /// coordinate (implies --first-positive).
    #[arg(long)]
    pub restrict_first_positive: bool,
    /// Print statistics to stderr.
    #[arg(long)]
    pub stats: bool,
    /// Write a JSON run report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> Options {
        Options {
            seed: self.seed,
            sort: !self.no_sort,
            first_positive: self.first_positive,
            restrict_first_positive: self.restrict_first_positive,
            jobs: self.jobs,
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => {
            let report = run_one(&args, false)?;
            emit(&args, &report, out, err)
        }
        Command::Oracle { run, check } => {
            let report = run_one(&run, true)?;
            emit(&run, &report, out, err)?;
            if check {
                let pruned = run_one(&run, false)?;
                if pruned.rays != report.rays {
                    writeln!(err, "MISMATCH").map_err(|e| CliError::io("stderr", e))?;
                    return Err(CliError::Mismatch);
                }
                writeln!(err, "MATCH").map_err(|e| CliError::io("stderr", e))?;
            }
            Ok(())
        }
        Command::Gen {
            family,
            n,
            seed,
            out: path,
            format,
        } => {
            let family: Family = family.parse()?;
            let spec = family.generate(n, seed)?;
            let text = match format {
                GenFormat::Sup => to_support_json(&spec),
                GenFormat::Poly => to_polynomial_text(&spec),
            };
            match path {
                Some(p) => std::fs::write(&p, text).map_err(|e| CliError::io(p.display().to_string(), e)),
                None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("stdout", e)),
            }
        }
        Command::Bench {
            family,
            range,
            trials,
            seed,
            jobs,
            no_sort,
            max_definitional,
            json,
        } => {
            let cfg = BenchConfig {
                family: family.parse()?,
                sizes: parse_range(&range)?,
                trials,
                seed,
                options: Options {
                    sort: !no_sort,
                    jobs,
                    ..Options::default()
                },
                max_definitional,
            };
            let rows = run_bench(&cfg)?;
            out.write_all(format_table(&rows).as_bytes())
                .map_err(|e| CliError::io("stdout", e))?;
            if let Some(p) = json {
                let text = serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n";
                std::fs::write(&p, text).map_err(|e| CliError::io(p.display().to_string(), e))?;
            }
            Ok(())
        }
    }
}

fn run_one(args: &RunArgs, definitional: bool) -> Result<RunReport, CliError> {
    let spec = load_input(&args.input)?;
    let polytopes = spec.polytopes()?;
    let options = args.options();
    let start = Instant::now();
    let (algorithm, result) = if definitional {
        ("definitional", definitional_pretropisms(&polytopes, &options)?)
    } else {
        ("pruning", find_pretropisms(&polytopes, &options)?)
    };
    let secs = start.elapsed().as_secs_f64();
    tracing::info!(algorithm, rays = result.rays.len(), secs, "run finished");
    Ok(RunReport::new(&spec.provenance, algorithm, &options, &result, secs))
}

fn emit(
    args: &RunArgs,
    report: &RunReport,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    out.write_all(format_rays(&report.rays).as_bytes())
        .map_err(|e| CliError::io("stdout", e))?;
    if args.stats {
        err.write_all(format_stats(report).as_bytes())
            .map_err(|e| CliError::io("stderr", e))?;
    }
    if let Some(p) = &args.report {
        std::fs::write(p, report.to_json()).map_err(|e| CliError::io(p.display().to_string(), e))?;
    }
    Ok(())
}
