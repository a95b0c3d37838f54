//   Copyright 2026 cis-synth developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! `cis`: run invariant set synthesis from a TOML configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use cis_core::config::{Algorithm, RunConfig};
use cis_core::run::{run, summarize, RunOutput};

#[derive(Parser)]
#[command(
    name = "cis",
    version,
    about = "Controlled invariant sets by interval refinement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration and write the result as JSON.
    Run {
        config: PathBuf,
        #[arg(long)]
        algorithm: Option<Algorithm>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long = "n-u")]
        n_u: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Output path; defaults to `run.output`, then to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a table of one or more result files.
    Summarize {
        #[arg(required = true)]
        outputs: Vec<PathBuf>,
    },
    /// Simulate the stored controller from random states in the stored set.
    Verify {
        output: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        /// Defaults to the seed in the stored configuration.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run {
            config,
            algorithm,
            epsilon,
            n_u,
            seed,
            threads,
            out,
        } => {
            let mut cfg =
                RunConfig::load(&config).with_context(|| format!("loading {}", config.display()))?;
            if let Some(a) = algorithm {
                cfg.run.algorithm = a;
                if a != Algorithm::Baseline && n_u.is_none() {
                    cfg.run.n_u = None;
                }
            }
            if let Some(e) = epsilon {
                cfg.run.epsilon = e;
            }
            if n_u.is_some() {
                cfg.run.n_u = n_u;
            }
            if let Some(s) = seed {
                cfg.run.seed = s;
            }
            if let Some(t) = threads {
                cfg.run.threads = t;
            }
            let out = out.or_else(|| cfg.run.output.as_ref().map(PathBuf::from));
            cfg.run.output = None;
            cfg.validate().context("invalid options")?;
            let result = run(&cfg)?;
            match out {
                Some(path) => {
                    result.write(&path)?;
                    eprint!("{}", summarize(std::slice::from_ref(&result)));
                }
                None => println!("{}", result.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Summarize { outputs } => {
            let runs = outputs
                .iter()
                .map(RunOutput::read)
                .collect::<Result<Vec<_>, _>>()?;
            print!("{}", summarize(&runs));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            output,
            trials,
            horizon,
            seed,
        } => {
            let result = RunOutput::read(&output)?;
            if result.cis.boxes().is_empty() && trials > 0 {
                println!("empty set: nothing to verify");
            }
            let seed = seed.unwrap_or(result.config.run.seed);
            let rep = result.verify(trials, horizon, seed)?;
            println!(
                "trials {}  passed {}  failed {}  worst margin {:.3e}",
                rep.trials, rep.passed, rep.failed, rep.worst_margin
            );
            if rep.failed > 0 {
                bail!("{} of {} trajectories left the set", rep.failed, rep.trials);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
