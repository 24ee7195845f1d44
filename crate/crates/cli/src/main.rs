//! `btpgl`: intersection numbers, building distances, verification campaigns
//! and ball export from the command line.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 improper
//! configuration, 3 disagreement between independent routes, 4 enumeration
//! cap exceeded.

mod campaign;
mod export;

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use btpgl::building::{bfs_dist, class_key, dist, EnumCap};
use btpgl::random::InstanceMode;
use btpgl::schema::{analyze, DistInstance, InstanceFile};
use btpgl::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

#[derive(Debug, Parser)]
#[command(name = "btpgl", version, about = "Intersection numbers of linear cycles and distances in the building of PGL(n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Formula,
    Bfs,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the intersection report of an instance file as JSON.
    Intersect { file: PathBuf },
    /// Print the distance between the two lattice classes of a file.
    Dist {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "formula")]
        oracle: Oracle,
    },
    /// Run a seeded campaign comparing intersection numbers with distances.
    Verify(campaign::CampaignArgs),
    /// Write a ball of the building as DOT plus a JSON sidecar of lattices.
    ExportDot(export::ExportArgs),
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ImproperGenericIntersection | Error::ProperFail(_) => 2,
            Error::EnumerationTooLarge { .. } => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn cmd_intersect(file: &Path) -> CliResult<()> {
    let instance: InstanceFile = read_json(file)?;
    let cfg = instance.to_config()?;
    println!("{}", to_json(&analyze(&cfg)?));
    Ok(())
}

fn cmd_dist(file: &Path, oracle: Oracle) -> CliResult<()> {
    let instance: DistInstance = read_json(file)?;
    let (a, b) = instance.to_lattices()?;
    let formula = dist(&a, &b)?;
    if oracle != Oracle::Bfs {
        println!("{formula}");
    }
    if oracle != Oracle::Formula {
        let targets = HashSet::from([class_key(&a, &b)?]);
        let found = bfs_dist(&a, &a, &targets, formula + 1, EnumCap::from_env())?;
        match found {
            Some(d) if d == formula => println!("{d}"),
            other => {
                let shown = other.map_or("none within radius".to_string(), |d| d.to_string());
                return Err(Failure::new(3, format!("breadth-first search found {shown}, invariant factors give {formula}")));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Intersect { file } => cmd_intersect(&file),
        Command::Dist { file, oracle } => cmd_dist(&file, oracle),
        Command::Verify(args) => campaign::cmd_verify(&args),
        Command::ExportDot(args) => export::cmd_export_dot(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Default number of cycles for a generation mode.
pub fn default_cycle_count(mode: InstanceMode, n: usize) -> usize {
    match mode {
        InstanceMode::Hyperplanes => n,
        InstanceMode::Submodules => 2,
        InstanceMode::HigherDim => n.saturating_sub(1).clamp(1, 2),
    }
}
