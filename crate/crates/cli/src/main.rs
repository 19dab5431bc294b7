use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use approach_cli::{bench, plan, render, run, scenario};
use approach_core::PlanError;
use clap::{Parser, Subcommand};

/// Plan and simulate robot approaches to people on an occupancy grid.
#[derive(Parser)]
#[command(name = "approach", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan one goal pose and dump the six cost-stage images.
    Plan {
        #[arg(long)]
        scenario: PathBuf,
        /// Index into the scenario's human list.
        #[arg(long, default_value_t = 0)]
        human: usize,
        /// Output directory for the stage PGMs.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every approach of the scenario and write the report files.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time one multi-goal wavefront against repeated A*.
    Bench {
        /// Square map edge length in cells.
        #[arg(long, default_value_t = 256)]
        size: usize,
        /// Obstacle probability per cell.
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Goal-set sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,10,100")]
        goals: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Optional directory for the timing CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the scenario (and optionally a run report) as a PPM image.
    Render {
        #[arg(long)]
        scenario: PathBuf,
        /// Output image path.
        #[arg(long)]
        out: PathBuf,
        /// report.csv from `approach run`; adds the final robot poses.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Let --help and --version print normally.
            if e.use_stderr() {
                eprintln!("{}", e);
                return ExitCode::from(1);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            if let Some(PlanError::NoGoalFound { .. }) = e.downcast_ref::<PlanError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Plan {
            scenario: path,
            human,
            out,
        } => {
            let (s, base) = scenario::load_scenario(&path)?;
            let world = s.build(&base)?;
            let outcome = plan::cmd_plan(&world, human, &out)?;
            println!("{}", plan::summary_line(&outcome));
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            scenario: path,
            out,
        } => {
            let (s, base) = scenario::load_scenario(&path)?;
            let world = s.build(&base)?;
            let report = run::cmd_run(&world, &out)?;
            print!("{}", run::summary_text(&report));
            if report.failures > 0 {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Bench {
            size,
            density,
            seed,
            goals,
            reps,
            out,
        } => {
            let cases = bench::cmd_bench(size, density, seed, &goals, reps, out.as_deref())?;
            print!("{}", bench::bench_table(&cases));
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            scenario: path,
            out,
            report,
        } => {
            let (s, base) = scenario::load_scenario(&path)?;
            let world = s.build(&base)?;
            let poses = match report {
                Some(p) => render::poses_from_report(&p)?,
                None => Vec::new(),
            };
            render::cmd_render(&world, &poses, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
