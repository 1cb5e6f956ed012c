use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nfcodes::codec::{johnson_params, RootFinder, DEFAULT_L_MAX, DEFAULT_MAX_LATTICE_DIM};
use nfcodes::harness::{self, acceptance, CodeFile, ExperimentConfig, PrimeEntry};
use nfcodes::ideals::primes_above;
use nfcodes::{decode, encode, CodeSpec, DecodeOptions, Error, NumberField, ReceivedWord, Strategy, WeightVector};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(name = "nfcodes", version, about = "Residue codes over number fields with list decoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code descriptions.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Encode a message given as `a0+a1*t+...` or `[a0, a1, ...]`.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        message: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replace exactly `errors` residues of a word.
    Corrupt {
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List-decode a received word.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Practical)]
        strategy: StrategyArg,
        /// Degree `l` for the explicit strategy.
        #[arg(long)]
        l: Option<usize>,
        /// Integer weights `z*` for the explicit strategy, comma separated.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        l_max: usize,
        #[arg(long, value_enum, default_value_t = RootFinderArg::Hensel)]
        root_finder: RootFinderArg,
        #[arg(long, default_value_t = DEFAULT_MAX_LATTICE_DIM)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive decoding over the message ball.
    Oracle {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        word: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        threshold: f64,
        /// Real weights, comma separated; uniform when omitted.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<f64>>,
    },
    /// Johnson-type parameters of a code.
    Johnson {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
    },
    /// Run a batch of encode, corrupt and decode trials.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
enum CodeAction {
    /// Build `code.json`. Primes are `p` or `p:root`, comma separated.
    New {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        poly: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Paper,
    Practical,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum RootFinderArg {
    Reference,
    Hensel,
}

impl From<RootFinderArg> for RootFinder {
    fn from(r: RootFinderArg) -> Self {
        match r {
            RootFinderArg::Reference => RootFinder::Reference,
            RootFinderArg::Hensel => RootFinder::Hensel,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VIOLATION),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::ContractViolation(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

fn read_code(path: &Path) -> nfcodes::Result<CodeSpec> {
    CodeFile::from_json(&fs::read_to_string(path)?)?.to_spec()
}

fn read_word(path: &Path) -> nfcodes::Result<ReceivedWord> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn emit(text: &str, out: Option<&Path>) -> nfcodes::Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))?,
        None => say(text)?,
    }
    Ok(())
}

/// Prints a line, treating a closed pipe as success.
fn say(text: &str) -> io::Result<()> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

fn parse_prime(k: &NumberField, s: &str) -> nfcodes::Result<PrimeEntry> {
    let bad = || Error::Parse(format!("bad prime `{s}`"));
    match s.split_once(':') {
        Some((p, r)) => Ok(PrimeEntry { p: p.trim().parse().map_err(|_| bad())?, root: r.trim().parse().map_err(|_| bad())? }),
        None => {
            let p: u64 = s.trim().parse().map_err(|_| bad())?;
            let first = primes_above(k, p, false)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Parse(format!("{p} has no degree-one prime above it")))?;
            Ok(PrimeEntry { p, root: first.root })
        }
    }
}

/// `Ok(false)` signals a failed check that should exit with status 2.
fn run(cmd: Command) -> nfcodes::Result<bool> {
    match cmd {
        Command::Code { action: CodeAction::New { poly, primes, k, out } } => {
            let field = NumberField::from_i64(&poly)?;
            let primes = primes.iter().map(|s| parse_prime(&field, s)).collect::<nfcodes::Result<_>>()?;
            let file = CodeFile { poly, primes, k };
            file.to_spec()?;
            emit(&file.to_json(), out.as_deref())?;
        }
        Command::Encode { code, message, out } => {
            let code = read_code(&code)?;
            let m = harness::parse_message(code.field(), &message)?;
            emit(&pretty(&encode(&m, &code)?), out.as_deref())?;
        }
        Command::Corrupt { word, code, errors, seed, out } => {
            let code = read_code(&code)?;
            let w = harness::corrupt(&read_word(&word)?, &code, errors, seed)?;
            emit(&pretty(&w), out.as_deref())?;
        }
        Command::Decode { code, word, epsilon, strategy, l, weights, l_max, root_finder, max_dim, out } => {
            let code = read_code(&code)?;
            let word = read_word(&word)?;
            let strategy = match strategy {
                StrategyArg::Paper => Strategy::Paper,
                StrategyArg::Practical => Strategy::Practical { l_max },
                StrategyArg::Explicit => Strategy::Explicit {
                    z_star: weights.unwrap_or_else(|| vec![1; code.n()]),
                    l: l.ok_or_else(|| Error::InvalidWeights("--l is required with --strategy explicit".into()))?,
                },
            };
            let opts = DecodeOptions {
                epsilon,
                strategy,
                root_finder: root_finder.into(),
                max_lattice_dim: max_dim,
                ..DecodeOptions::default()
            };
            let report = decode(&word, &code, &opts)?;
            emit(&pretty(&report.to_json()), out.as_deref())?;
        }
        Command::Oracle { code, word, threshold, weights } => {
            let code = read_code(&code)?;
            let z = match weights {
                Some(w) => WeightVector::new(w)?,
                None => WeightVector::uniform(code.n()),
            };
            let hits = harness::oracle_decode(&read_word(&word)?, &code, &z, threshold)?;
            let rows: Vec<_> = hits
                .iter()
                .map(|h| json!({"message": h.message.to_string(), "agreement": h.agreement, "matches": h.matches}))
                .collect();
            emit(&pretty(&json!({"threshold": threshold, "ball_hits": rows})), None)?;
        }
        Command::Johnson { code, epsilon } => {
            let code = read_code(&code)?;
            let j = johnson_params(&code, epsilon)?;
            let v = json!({
                "t": j.t,
                "T": j.big_t.to_string(),
                "d_min_lb": j.d_min_lb,
                "radius": j.radius,
                "log_radius": j.log_radius,
            });
            emit(&pretty(&v), None)?;
        }
        Command::Experiment { config, out } => {
            let cfg: ExperimentConfig = serde_json::from_str(&fs::read_to_string(config)?)?;
            emit(&harness::run_experiment(&cfg)?.to_json(), out.as_deref())?;
        }
        Command::Selftest => {
            let results = acceptance::run_all();
            for r in &results {
                say(&r.to_string())?;
            }
            return Ok(results.iter().all(|r| r.passed));
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations_map_to_two() {
        assert_eq!(exit_status(&Error::ContractViolation("x".into())), 2);
        assert_eq!(exit_status(&Error::NotMonic), 1);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
