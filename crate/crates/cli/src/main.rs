mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use tropskel::geometry::Vec2;

/// Tropical mirror curves, their ribbon-graph skeleta and chart diagrams.
#[derive(Parser, Debug)]
#[command(name = "tropskel", version)]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sweep direction as "x,y".
    #[arg(long, global = true, default_value = "0,1", value_parser = parse_direction, allow_hyphen_values = true)]
    direction: Vec2,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Move budget for cycle preparation.
    #[arg(long, global = true, default_value_t = tropskel::ribbon::CycleRequest::DEFAULT_BUDGET)]
    budget: usize,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a triangulation, tropical graph or ribbon graph file.
    Validate { file: PathBuf },
    /// Dual tropical graph of a triangulation.
    Dual { file: PathBuf },
    /// (g, n) of a triangulation's mirror curve, a tropical graph or a ribbon graph.
    Invariants { file: PathBuf },
    /// Sweep decomposition of a tropical graph.
    Sweep { file: PathBuf },
    /// Synthesize a skeleton by pants gluing.
    Synthesize {
        file: PathBuf,
        /// Also write the skeleton in ribbon-graph format here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quiver of a wheel spoke pattern such as "++-+-".
    Quiver {
        #[arg(allow_hyphen_values = true)]
        pattern: String,
        /// Read the circle against the pattern's traversal.
        #[arg(long)]
        reversed: bool,
    },
    /// Hom complex dimensions between two representations of a wheel quiver.
    Hom {
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        m: PathBuf,
        n: PathBuf,
    },
    /// Equalizer and Čech diagrams of a triangulation with their bijection.
    Diagram { file: PathBuf },
    /// Run the whole pipeline and report each stage.
    Check { file: PathBuf },
}

fn parse_direction(s: &str) -> Result<Vec2, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [x, y] => match (x.parse(), y.parse()) {
            (Ok(x), Ok(y)) => Ok(Vec2::new(x, y)),
            _ => Err(format!("direction {s:?} must be two integers")),
        },
        _ => Err(format!("direction {s:?} must look like \"x,y\"")),
    }
}

pub struct RunConfig {
    pub seed: u64,
    pub direction: Vec2,
    pub format: Format,
    pub budget: usize,
    pub verbose: u8,
}

impl RunConfig {
    pub fn synth(&self) -> tropskel::synth::SynthConfig {
        tropskel::synth::SynthConfig { direction: self.direction, seed: self.seed, budget: self.budget, offset: 0 }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = RunConfig {
        seed: cli.seed,
        direction: cli.direction,
        format: cli.format,
        budget: cli.budget,
        verbose: cli.verbose,
    };
    if cfg.direction == Vec2::new(0, 0) && cfg.verbose > 0 {
        eprintln!("note: zero direction, order is purely lexicographic");
    }
    match cli.command {
        Command::Validate { file } => commands::validate(&cfg, &file),
        Command::Dual { file } => commands::dual(&cfg, &file),
        Command::Invariants { file } => commands::invariants(&cfg, &file),
        Command::Sweep { file } => commands::sweep(&cfg, &file),
        Command::Synthesize { file, output } => commands::synthesize(&cfg, &file, output.as_deref()),
        Command::Quiver { pattern, reversed } => commands::quiver(&cfg, &pattern, reversed),
        Command::Hom { pattern, m, n } => commands::hom(&cfg, &pattern, &m, &n),
        Command::Diagram { file } => commands::diagram(&cfg, &file),
        Command::Check { file } => commands::check(&cfg, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<commands::ParseError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
