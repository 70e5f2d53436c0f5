use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linprop::cli::{self, exit_code, Overrides, EXIT_NUMERICAL, EXIT_OK};
use linprop::config::ExperimentConfig;
use linprop::verify::DEFAULT_SEED;

#[derive(Parser)]
#[command(name = "linprop", version, about = "Linear-potential wave-packet experiments")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `[output] dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Oracle step; overrides `[solver] dt_time`.
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Downgrade precondition violations to warnings.
    #[arg(long, global = true)]
    override_preconditions: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    Evolve,
    Tunnel,
    Psg,
    Spin,
    Verify,
    /// Print a complete example config.
    ExampleConfig,
}

fn run(args: &Args) -> linprop::Result<u8> {
    let overrides = Overrides {
        out: args.out.clone(),
        seed: args.seed,
        dt: args.dt,
        override_preconditions: args.override_preconditions,
    };
    let load = || -> linprop::Result<ExperimentConfig> {
        let path = args
            .config
            .as_ref()
            .ok_or_else(|| linprop::Error::Config("--config PATH is required".into()))?;
        overrides.apply(ExperimentConfig::load(path)?)
    };
    let files = match args.command {
        Command::ExampleConfig => {
            print!("{}", ExperimentConfig::example().to_toml());
            return Ok(EXIT_OK);
        }
        Command::Verify => {
            let seed = match (&args.config, args.seed) {
                (_, Some(s)) => s,
                (Some(_), None) => load()?.seed,
                (None, None) => DEFAULT_SEED,
            };
            let out = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
            let (summary, path) = cli::cmd_verify(seed, &out)?;
            for c in &summary.checks {
                println!("{}", c.line());
            }
            println!("{}", path.display());
            return Ok(if summary.passed { EXIT_OK } else { EXIT_NUMERICAL });
        }
        Command::Evolve => cli::cmd_evolve(&load()?)?,
        Command::Tunnel => cli::cmd_tunnel(&load()?)?,
        Command::Psg => cli::cmd_psg(&load()?, args.override_preconditions)?,
        Command::Spin => cli::cmd_spin(&load()?, args.override_preconditions)?,
    };
    for f in files {
        println!("{}", f.display());
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
