use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gupnoise_cli::{cmd_bounds, cmd_presets, cmd_spectrum, cmd_verify, load_config, CliError, PresetLibrary, RunConfig, Tier};

#[derive(Parser)]
#[command(name = "gupnoise", version, about = "Displacement noise spectra with minimal-length corrections, and the bounds they imply")]
struct Cli {
    /// Directory for output files; overrides `output.dir` in the config.
    #[arg(long, global = true, env = "GUPNOISE_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,

    /// Worker threads for parallel evaluation (default: all cores).
    #[arg(long, global = true, env = "GUPNOISE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate S0, delta S and their sum on the configured grid and write a CSV.
    Spectrum { config: PathBuf },
    /// Solve delta S = S0 for the GUP strengths and write a JSON report.
    Bounds { config: PathBuf },
    /// Run the oracle suites; exits 0 only if every check passes.
    Verify {
        config: PathBuf,
        /// Overrides `verify.tier` in the config.
        #[arg(long)]
        tier: Option<Tier>,
    },
    /// List the available experiment presets and where their values come from.
    Presets {
        /// Also include user presets defined in this config.
        config: Option<PathBuf>,
    },
}

fn load(path: &Path, output_dir: &Option<PathBuf>) -> Result<RunConfig, CliError> {
    let mut config = load_config(path)?;
    if let Some(dir) = output_dir {
        config.output.dir = dir.clone();
    }
    Ok(config)
}

fn print(lines: Vec<String>) {
    for line in lines {
        println!("{line}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Spectrum { config } => print(cmd_spectrum(&load(&config, &cli.output_dir)?)?.summary()),
        Command::Bounds { config } => print(cmd_bounds(&load(&config, &cli.output_dir)?)?.summary()),
        Command::Verify { config, tier } => {
            let mut config = load(&config, &cli.output_dir)?;
            if let Some(tier) = tier {
                config.tier = tier;
            }
            let outcome = cmd_verify(&config)?;
            print(outcome.summary());
            if !outcome.all_pass() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Presets { config } => {
            let library = match config {
                Some(path) => load(&path, &cli.output_dir)?.library,
                None => PresetLibrary::builtin(),
            };
            print(cmd_presets(&library));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not size the thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
