//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, CommandError};
use crate::formats::load_scenario;
use crate::report::{Report, EXIT_INPUT, EXIT_PASS};

/// Environment variable holding the seed for randomized checks.
pub const SEED_VAR: &str = "MNL_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "mnl",
    version,
    about = "Exact checks for Moufang loops, Mal'tsev algebras and their charge algebras"
)]
pub struct Cli {
    /// Output format (default text).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasigroup, unit, inverse, Moufang and associativity scans of a Cayley table.
    LoopCheck {
        /// Path to a Cayley table, or builtin:octonion-loop, builtin:chein-<group>, builtin:<group>.
        input: String,
    },
    /// Lie and Mal'tsev identities of a structure tensor.
    Maltsev {
        /// Path to a tensor, or builtin:m7, builtin:su2, builtin:sl2, builtin:abelian(r).
        input: String,
    },
    /// Build and certify the Lie algebra of S, T and Yamaguti operators.
    Envelope {
        input: String,
        /// Generator set whose matrix closure is compared against the envelope.
        #[arg(long)]
        oracle: Option<String>,
    },
    /// Commutation table of a generator set (S, T and extracted Y).
    Glc {
        /// Path to a generator set, or builtin:octonion, builtin:quaternion.
        generators: String,
        /// Structure constants to check against (defaults to the set's own).
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Equal-time commutators of lattice charge densities and the charge algebra.
    Etc {
        generators: Option<String>,
        /// Lattice sites (default 1).
        #[arg(long)]
        sites: Option<usize>,
        /// Scenario file with "generators", "sites" and "format".
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Finite-difference tangent constants of the unit octonions.
    Tangent {
        #[arg(long, default_value_t = mnl_core::chart::DEFAULT_STEP)]
        step: f64,
    },
    /// [a†Ma, a†Na] = a†[M,N]a on seeded random integer matrices.
    Lemma {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        sites: usize,
        #[arg(long, default_value_t = 8)]
        modes: usize,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Execution {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("mnl: {message}\n"),
        }
    }
}

fn seed_from_env() -> Result<u64, String> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("{SEED_VAR} must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(0),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Execution {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut format = cli.format;
    let outcome = match &cli.command {
        Command::LoopCheck { input } => commands::loop_check(input),
        Command::Maltsev { input } => commands::maltsev(input),
        Command::Envelope { input, oracle } => commands::envelope(input, oracle.as_deref()),
        Command::Glc { generators, tensor } => commands::glc(generators, tensor.as_deref()),
        Command::Etc {
            generators,
            sites,
            config,
            tensor,
        } => {
            let scenario = match config.as_deref().map(load_scenario).transpose() {
                Ok(s) => s,
                Err(e) => return Execution::input_error(e),
            };
            if format.is_none() {
                if let Some(f) = scenario.as_ref().and_then(|s| s.format.as_deref()) {
                    match Format::from_str(f, false) {
                        Ok(f) => format = Some(f),
                        Err(_) => {
                            return Execution::input_error(format!(
                                "unknown format `{f}` in scenario"
                            ))
                        }
                    }
                }
            }
            let generators = generators
                .clone()
                .or_else(|| scenario.as_ref().map(|s| s.generators.clone()));
            let sites = sites
                .or_else(|| scenario.as_ref().and_then(|s| s.sites))
                .unwrap_or(1);
            match generators {
                Some(g) => commands::etc(&g, sites, tensor.as_deref()),
                None => Err(CommandError::Usage(
                    "no generators given (argument or --config)".into(),
                )),
            }
        }
        Command::Tangent { step } => commands::tangent(*step),
        Command::Lemma {
            trials,
            sites,
            modes,
        } => match seed_from_env() {
            Ok(seed) => commands::lemma(*modes, *sites, *trials, seed),
            Err(e) => Err(CommandError::Usage(e)),
        },
    };
    match outcome {
        Ok(report) => render(&report, format.unwrap_or(Format::Text), cli.out.as_deref()),
        Err(e) => Execution::input_error(e),
    }
}

fn render(report: &Report, format: Format, out: Option<&std::path::Path>) -> Execution {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let code = report.exit_code();
    match out {
        None => Execution {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Execution {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Execution::input_error(format!("cannot write {}: {e}", path.display())),
        },
    }
}
