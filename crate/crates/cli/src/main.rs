mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

const EXIT_USAGE: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_NO_ROOT: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

/// Rayleigh surface waves in elastic media with micro-voids.
#[derive(Parser, Debug)]
#[command(name = "voidsurf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the admissibility conditions of the material.
    Validate(Common),
    /// Print bulk and limiting speeds.
    Speeds(Common),
    /// Find the surface-wave speed and write the summary, scan and field.
    Solve(SolveArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// TOML run configuration; the built-in steel data set if omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides output.dir).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Write the effective configuration to DIR/config.toml.
    #[arg(long)]
    dump_config: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    common: Common,
    /// Add the legacy secular function R(v) to the scan and cross-check the root.
    #[arg(long)]
    legacy: bool,
    /// Number of speeds in the det M scan (0 disables it).
    #[arg(long, value_name = "N")]
    scan: Option<usize>,
    /// Write the field on an NX×NZ grid.
    #[arg(long, value_name = "NX,NZ", value_parser = parse_grid)]
    field: Option<[usize; 2]>,
    /// Time at which the field is evaluated.
    #[arg(long, value_name = "TIME", allow_negative_numbers = true)]
    t: Option<f64>,
    /// First component of the surface amplitude.
    #[arg(long, value_name = "RE,IM", value_parser = parse_pair, allow_hyphen_values = true)]
    y1: Option<[f64; 2]>,
}

fn parse_grid(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected NX,NZ")?;
    let n = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok([n(a)?, n(b)?])
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected RE,IM")?;
    let x = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok([x(a)?, x(b)?])
}

impl Common {
    fn load(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(dir) = &self.out {
            cfg.output.dir = dir.clone();
        }
        Ok(cfg)
    }

    fn finish(&self, cfg: &RunConfig) -> Result<()> {
        cfg.check()?;
        if self.dump_config {
            let path = commands::dump_config(cfg, &cfg.output.dir)?;
            eprintln!("configuration written to {}", path.display());
        }
        Ok(())
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("VOIDSURF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("VOIDSURF_THREADS={raw:?} is not a count"))?;
    if n == 0 {
        bail!("VOIDSURF_THREADS must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Validate(common) => {
            let cfg = common.load()?;
            common.finish(&cfg)?;
            commands::validate(&cfg)
        }
        Command::Speeds(common) => {
            let cfg = common.load()?;
            common.finish(&cfg)?;
            commands::speeds(&cfg)
        }
        Command::Solve(args) => {
            let mut cfg = args.common.load()?;
            if args.legacy {
                cfg.solver.legacy = true;
            }
            if let Some(n) = args.scan {
                cfg.solver.n_scan = n;
            }
            if let Some(grid) = args.field {
                cfg.output.field_grid = Some(grid);
            }
            if let Some(t) = args.t {
                cfg.output.t = t;
            }
            if let Some(y1) = args.y1 {
                cfg.output.y1 = y1;
            }
            args.common.finish(&cfg)?;
            commands::solve(&cfg)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<commands::Inadmissible>().is_some() {
        return EXIT_INADMISSIBLE;
    }
    match err.downcast_ref::<voidsurf::Error>() {
        Some(e) if e.is_inadmissible() => EXIT_INADMISSIBLE,
        Some(voidsurf::Error::NoSignChange { .. }) => EXIT_NO_ROOT,
        Some(_) => EXIT_NUMERICAL,
        None => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
