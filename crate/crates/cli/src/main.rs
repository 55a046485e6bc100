//! `kuratowski`: orbits, symbolic enumeration and oracle checks from the
//! command line. Exit status 1 means a check failed, 2 a usage error.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kuratowski_core::automata::{AutomataError, Dfa};
use kuratowski_core::corpus::{self, CorpusError};
use kuratowski_core::langops::{LangOpError, OpSet, OpWord};
use kuratowski_core::oracle::{Claim, Oracle, OracleConfig, OracleError};
use kuratowski_core::orbit::{self, OrbitError};
use kuratowski_core::rewrite::{self, RewriteError, RuleSet, SweepConfig};

#[derive(Parser)]
#[command(name = "kuratowski", version, about = "Orbits of regular languages under closure-like operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the orbit of an automaton's language.
    Orbit {
        /// Automaton as JSON.
        #[arg(long)]
        dfa: PathBuf,
        /// Operation letters, e.g. `kcf`.
        #[arg(long)]
        ops: String,
        #[arg(long, default_value_t = orbit::DEFAULT_CAP)]
        cap: usize,
        /// Write the orbit graph in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Enumerate operation words modulo the built-in identities.
    Enumerate {
        #[arg(long)]
        ops: String,
        #[arg(long, value_enum, default_value_t = Rules::Default)]
        rules: Rules,
        /// Write one line per examined word here.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: usize,
    },
    /// Test `LHS=RHS` (or `LHS ⊆ RHS`) on sampled finite languages.
    Verify {
        #[arg(long)]
        identity: String,
        #[arg(long)]
        inclusion: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        maxlen: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the recorded checks of a built-in witness language.
    Witness {
        /// figure1, figure2, abc or Ln.
        name: String,
        /// The `n` of `Ln`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check every rewrite of an enumeration on sample languages.
    Crosscheck {
        #[arg(long)]
        ops: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    Default,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Ops(#[from] LangOpError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Orbit(OrbitError::CapExceeded(_))
            | CliError::Rewrite(RewriteError::BudgetExceeded(_) | RewriteError::TooManyNodes(_) | RewriteError::WordTooLong(_))
            | CliError::Orbit(OrbitError::Op(LangOpError::NonFinite(_)))
            | CliError::Write { .. } => 1,
            _ => 2,
        }
    }
}

/// What a command printed, and whether its checks held.
struct Outcome {
    text: String,
    passed: bool,
}

fn parse_ops(s: &str) -> Result<OpSet, CliError> {
    let ops: OpSet = s.parse()?;
    if ops.is_empty() {
        return Err(CliError::Usage("--ops needs at least one operation letter".into()));
    }
    Ok(ops)
}

fn parse_claim(identity: &str, inclusion: bool) -> Result<Claim, CliError> {
    let (lhs, rhs) = identity
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected LHS=RHS, got {identity:?}")))?;
    let (lhs, rhs): (OpWord, OpWord) = (lhs.trim().parse()?, rhs.trim().parse()?);
    Ok(if inclusion {
        Claim::Subset(lhs, rhs)
    } else {
        Claim::Equal(lhs, rhs)
    })
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Orbit { dfa, ops, cap, dot } => {
            let text = fs::read_to_string(&dfa).map_err(|source| CliError::Read { path: dfa, source })?;
            let seed = Dfa::from_json(&text)?;
            let result = orbit::compute_orbit(&seed, parse_ops(&ops)?, cap)?;
            if let Some(path) = dot {
                fs::write(&path, result.to_dot()).map_err(|source| CliError::Write { path, source })?;
            }
            Ok(Outcome {
                text: format!(
                    "orbit size: {}\ntrivial members: {}",
                    result.len(),
                    result.trivial_members().count()
                ),
                passed: true,
            })
        }
        Command::Enumerate {
            ops,
            rules: Rules::Default,
            log,
            max_nodes,
        } => {
            let rules = RuleSet::default_for(rewrite::saturate(parse_ops(&ops)?))?;
            let result = rewrite::enumerate(&rules, max_nodes)?;
            if let Some(path) = log {
                File::create(&path)
                    .and_then(|f| result.write_log(BufWriter::new(f)))
                    .map_err(|source| CliError::Write { path, source })?;
            }
            Ok(Outcome {
                text: result.summary(),
                passed: true,
            })
        }
        Command::Verify {
            identity,
            inclusion,
            trials,
            maxlen,
            alphabet,
            seed,
        } => {
            let claim = parse_claim(&identity, inclusion)?;
            let oracle = Oracle::try_new(OracleConfig {
                trials,
                max_len: maxlen,
                alphabet_size: alphabet,
                seed,
                ..OracleConfig::default()
            })?;
            let report = oracle.check(&claim);
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
        Command::Witness { name, n } => {
            let witness = corpus::by_name(&name, n)?;
            let report = orbit::check_witness(&witness, orbit::DEFAULT_CAP)?;
            Ok(Outcome {
                passed: report.passed(),
                text: report.to_string(),
            })
        }
        Command::Crosscheck { ops, trials, seed } => {
            let result = rewrite::enumerate_ops(parse_ops(&ops)?, 100_000)?;
            let mut config = SweepConfig::default();
            config.oracle.trials = trials;
            config.oracle.seed = seed;
            config.seed = seed;
            let report = rewrite::soundness_sweep(&result, &config);
            Ok(Outcome {
                passed: report.passed(),
                text: format!("{}\n{report}", result.summary()),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.text);
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
