use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bfn_cli::config::Violation;
use bfn_cli::oracle::{self, ORACLE_TOLERANCE};
use bfn_cli::run::CaseStatus;
use bfn_cli::{
    apply_overrides, check, exit, find, parse_toml, run_experiment, Experiment, ExperimentConfig,
    Provenance, Scenario, SCENARIOS,
};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "bfn", version, about = "Back-and-forth nudging experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in scenarios.
    List,
    /// Run scenarios or config files; results go to <out-dir>/<name>/.
    Run {
        /// Scenario names or paths to TOML configs.
        #[arg(required = true)]
        targets: Vec<String>,
        #[arg(long, env = "BFN_OUT_DIR", default_value = "bfn-out")]
        out_dir: PathBuf,
        /// Override a config entry, e.g. `bfn.mu=50`; repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Scenarios run in parallel, each one sequentially.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check a config file and report every violation.
    Validate {
        target: String,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Compare a heat or transport scenario with the closed-form error recursion.
    Oracle {
        target: String,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

struct Loaded {
    scenario: Option<&'static Scenario>,
    config: ExperimentConfig,
    experiment: Experiment,
}

fn report(target: &str, violations: &[Violation]) {
    eprintln!("{target}: invalid configuration");
    for v in violations {
        eprintln!("  {v}");
    }
}

fn load(target: &str, overrides: &[String]) -> Result<Loaded, u8> {
    let (scenario, text) = match find(target) {
        Some(s) => (Some(s), s.text.to_string()),
        None if Path::new(target).is_file() => match fs::read_to_string(target) {
            Ok(t) => (None, t),
            Err(e) => {
                eprintln!("{target}: {e}");
                return Err(exit::IO_ERROR);
            }
        },
        None => {
            eprintln!("{target}: neither a scenario name nor a readable file (see `bfn list`)");
            return Err(exit::INVALID_CONFIG);
        }
    };
    let parsed = apply_overrides(&text, overrides)
        .and_then(|t| parse_toml(&t))
        .and_then(|c| check(&c).map(|e| (c, e)));
    match parsed {
        Ok((config, experiment)) => Ok(Loaded {
            scenario,
            config,
            experiment,
        }),
        Err(v) => {
            report(target, &v);
            Err(exit::INVALID_CONFIG)
        }
    }
}

fn run_one(target: &str, out_dir: &Path, overrides: &[String]) -> u8 {
    let l = match load(target, overrides) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let start = Instant::now();
    let prov = Provenance {
        scenario: l.scenario,
        overrides,
    };
    let dir = out_dir.join(&l.config.name);
    let outcome = match run_experiment(&l.config, &l.experiment, &prov, &dir) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{target}: cannot write results to {}: {e}", dir.display());
            return exit::IO_ERROR;
        }
    };
    for c in &outcome.cases {
        let detail = match c.status {
            CaseStatus::Completed => {
                format!("final error {:.6e}", c.final_error.unwrap_or(f64::NAN))
            }
            CaseStatus::BlowUp => format!(
                "blow-up at leg {} ({})",
                c.blowup_leg.unwrap_or_default(),
                c.blowup_kind.as_deref().unwrap_or("")
            ),
            CaseStatus::Failed => format!("error: {}", c.error.as_deref().unwrap_or("")),
        };
        println!("{:<28} {:<20} {detail}", outcome.name, c.variant);
    }
    println!(
        "{:<28} wrote {} in {:.2}s",
        outcome.name,
        dir.display(),
        start.elapsed().as_secs_f64()
    );
    if outcome.failed() {
        exit::ENGINE_ERROR
    } else if outcome.blew_up() {
        exit::BLOW_UP
    } else {
        exit::OK
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List => {
            for s in SCENARIOS {
                let family = s.config().map(|c| c.model.tag()).unwrap_or("?");
                println!("{:<24} {:<12} {}", s.name, family, s.reproduces);
                for sub in s.substitutions {
                    println!("{:<24} {:<12}   substitution: {sub}", "", "");
                }
            }
            exit::OK
        }
        Command::Validate { target, overrides } => match load(&target, &overrides) {
            Ok(l) => {
                println!(
                    "{target}: ok ({}, {} variant(s))",
                    l.config.model.tag(),
                    l.config.bfn.variants.len()
                );
                exit::OK
            }
            Err(code) => code,
        },
        Command::Oracle { target, overrides } => match load(&target, &overrides) {
            Err(code) => code,
            Ok(l) => match oracle::compare(&l.config, &l.experiment) {
                Err(e) => {
                    eprintln!("{target}: {e}");
                    exit::INVALID_CONFIG
                }
                Ok(r) => {
                    println!(
                        "{target}: max relative deviation from the closed form {:.3e} over {} cycles x {} modes (tolerance {ORACLE_TOLERANCE:e})",
                        r.max_relative_deviation, r.cycles, r.modes
                    );
                    if r.passed() {
                        exit::OK
                    } else {
                        exit::ORACLE_MISMATCH
                    }
                }
            },
        },
        Command::Run {
            targets,
            out_dir,
            overrides,
            threads,
        } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build();
            match pool {
                Err(e) => {
                    eprintln!("cannot start {threads} worker threads: {e}");
                    exit::ENGINE_ERROR
                }
                // the largest code wins, so I/O trouble outranks a blow-up
                Ok(pool) => pool.install(|| {
                    targets
                        .par_iter()
                        .map(|t| run_one(t, &out_dir, &overrides))
                        .max()
                        .unwrap_or(exit::OK)
                }),
            }
        }
    };
    ExitCode::from(code)
}
