use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use irsbeam::experiments::{
    format_table1, load_scenario, parse_grid, run_sweep, run_table1, worker_pool, write_csv, write_table1_csv,
    SweepKind,
};
use irsbeam::{Error, Result};

#[derive(Parser)]
#[command(
    name = "irsbeam",
    version,
    about = "Segmented channel and beamforming simulator for reflecting surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Active Tx element counts for the three sizing rules.
    Table1 {
        /// Write the cells as CSV instead of printing a table.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate a scenario over a grid and write CSV rows.
    Sweep {
        #[arg(long, value_parser = parse_kind)]
        kind: SweepKind,
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// `a,b,c`, `lin:a:b:n`, `log:a:b:n`, or `X/Y` for coverage.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Check a scenario file and exit.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn parse_kind(s: &str) -> std::result::Result<SweepKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("IRSBEAM_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n > 0)
            .map(Some)
            .ok_or_else(|| Error::InvalidArgument(format!("IRSBEAM_THREADS must be a positive integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Table1 { csv } => {
            let cells = run_table1()?;
            match csv {
                Some(path) => write_table1_csv(&cells, BufWriter::new(File::create(path)?))?,
                None => print!("{}", format_table1(&cells)),
            }
        }
        Command::Sweep {
            kind,
            scenario,
            out,
            grid,
        } => {
            let scenario = load_scenario(scenario)?;
            let spec = grid.unwrap_or_else(|| kind.default_grid(&scenario));
            let points = parse_grid(&spec)?;
            let pool = worker_pool(threads_from_env()?)?;
            let rows = pool.install(|| run_sweep(kind, &scenario, &points))?;
            write_csv(&rows, BufWriter::new(File::create(&out)?))?;
            eprintln!("{} rows written to {}", rows.len(), out.display());
        }
        Command::Validate { scenario } => {
            let s = load_scenario(&scenario)?;
            let d = s.deployment;
            println!(
                "ok: tx {} / surface {} / rx {} elements at {} GHz",
                d.tx.n_elements(),
                d.irs.n_elements(),
                d.rx.n_elements(),
                s.frequency_ghz
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = io::Write::flush(&mut io::stdout());
            eprintln!("error: {e}");
            match e {
                Error::Validation { .. } | Error::Parse(_) | Error::Grid { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
