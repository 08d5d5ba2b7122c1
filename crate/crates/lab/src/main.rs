use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use hardy_lab::config::{self, Format};
use hardy_lab::{scenarios, ExperimentConfig, RunOptions};

#[derive(Parser)]
#[command(name = "hardy", version, about = "Identity checks for Hardy spaces on products of balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file, or a bundled scenario by name.
    Run {
        config: String,
        /// Output directory, overriding the configuration.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List the bundled scenarios.
    ListScenarios,
    /// Describe a check and its parameters.
    Describe { check: String },
}

fn load(config: &str) -> anyhow::Result<ExperimentConfig> {
    let path = PathBuf::from(config);
    if path.exists() {
        ExperimentConfig::load(&path)
    } else if scenarios::get(config).is_some() {
        scenarios::load(config)
    } else {
        Err(anyhow::anyhow!("{config}: no such file or bundled scenario"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out, format, seed, jobs } => load(&config).and_then(|cfg| {
            let outcome = hardy_lab::run(&cfg, &RunOptions { out_dir: out, format, seed, jobs })
                .with_context(|| format!("running {}", cfg.scenario))?;
            let total = outcome.rows.len();
            println!("{}: {}/{} rows passed", cfg.scenario, total - outcome.failures(), total);
            for row in outcome.rows.iter().filter(|r| !r.pass) {
                println!("  FAIL {} {} residual={:e} tolerance={:e}", row.check, row.params, row.residual, row.tolerance);
            }
            for file in &outcome.files {
                println!("wrote {}", file.display());
            }
            Ok(if outcome.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }),
        Command::ListScenarios => {
            for (name, _) in scenarios::BUNDLED {
                let description = scenarios::load(name).map(|c| c.description).unwrap_or_else(|e| format!("invalid: {e:#}"));
                println!("{name:<24} {description}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Describe { check } => match config::describe(&check) {
            Some(text) => {
                println!("{check}\n{text}");
                Ok(ExitCode::SUCCESS)
            }
            None => {
                let names: Vec<&str> = config::CHECKS.iter().map(|(n, _)| *n).collect();
                Err(anyhow::anyhow!("unknown check `{check}`; known checks: {}", names.join(", ")))
            }
        },
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
