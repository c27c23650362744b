//! `asd`: run the streaming estimators and exact oracles on a pair of files.

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use asd_core::closest::MappingSearch;
use asd_core::harness::{enum_limit_from_env, run_algorithm, run_suite, Algo, RunParams, SuiteConfig};
use asd_core::numeric::parse_rational;
use asd_core::text::{parse_symbols, Alphabet, SymbolReader};
use asd_core::{Error, Rational};

const EXIT_USAGE: u8 = 1;
const EXIT_MODEL: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "asd", version, about = "Sublinear-memory edit distance and LCS estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact edit distance or LCS by full dynamic programming.
    Exact {
        #[arg(long, value_enum)]
        metric: Metric,
        #[command(flatten)]
        io: PairArgs,
    },
    /// Approximate closest substring of the offline file to the online file.
    Closest {
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[command(flatten)]
        recursion: RecursionArgs,
        #[command(flatten)]
        io: PairArgs,
    },
    /// Constant-factor edit distance in O~(n^delta) memory.
    EdConst {
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[command(flatten)]
        recursion: RecursionArgs,
        #[command(flatten)]
        io: PairArgs,
    },
    /// (1-eps)-approximate LCS in O~(sqrt(n)/eps) memory.
    LcsEps {
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
        #[command(flatten)]
        io: PairArgs,
    },
    /// (1+5eps)-approximate edit distance in O~(sqrt(n)/eps) memory.
    EdEps {
        #[arg(long, value_parser = rational)]
        epsilon: Rational,
        #[command(flatten)]
        io: PairArgs,
    },
    /// Run a generated-instance suite described by a TOML file; prints JSON lines.
    Bench {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Random-access string.
    offline: PathBuf,
    /// Streamed string, read once.
    online: PathBuf,
    #[arg(long, value_enum, default_value_t = AlphabetArg::Bytes)]
    alphabet: AlphabetArg,
    /// Also compute the exact value (re-reads the online file, outside the streaming model).
    #[arg(long)]
    with_oracle: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RecursionArgs {
    #[arg(long, value_enum, default_value_t = MappingArg::Enumerate)]
    mapping_search: MappingArg,
    /// Run mapping enumeration even past the tuple-count guard.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Ed,
    Lcs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlphabetArg {
    Bytes,
    Int,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MappingArg {
    Enumerate,
    Dp,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_model_violation() { EXIT_MODEL } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn emit(output: Option<&Path>, lines: &[String]) -> Result<(), Failure> {
    let mut text = lines.join("\n");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn run_pair(algo: Algo, params: RunParams, io_args: &PairArgs) -> Result<(), Failure> {
    let alphabet = match io_args.alphabet {
        AlphabetArg::Bytes => Alphabet::Bytes,
        AlphabetArg::Int => Alphabet::Int,
    };
    let raw = fs::read(&io_args.offline).map_err(|e| io_failure(&io_args.offline, e))?;
    let offline = parse_symbols(&raw, alphabet)?;
    let oracle_online = if io_args.with_oracle {
        let raw = fs::read(&io_args.online).map_err(|e| io_failure(&io_args.online, e))?;
        Some(parse_symbols(&raw, alphabet)?)
    } else {
        None
    };
    let file = File::open(&io_args.online).map_err(|e| io_failure(&io_args.online, e))?;
    let outcome = run_algorithm(
        algo,
        &params,
        offline,
        SymbolReader::new(file, alphabet),
        oracle_online.as_deref(),
    );
    if let Some(e) = outcome.error {
        return Err(e.into());
    }
    let mut report = outcome.report;
    if io_args.with_oracle {
        report.oracle_source = Some("full-dp, second read of the online file".into());
    }
    let line = serde_json::to_string(&report).map_err(|e| usage(e.to_string()))?;
    emit(io_args.output.as_deref(), &[line])
}

fn recursion_params(delta: Rational, args: &RecursionArgs) -> Result<RunParams, Failure> {
    Ok(RunParams {
        param: Some(delta),
        mapping: match args.mapping_search {
            MappingArg::Enumerate => MappingSearch::Enumerate,
            MappingArg::Dp => MappingSearch::Dp,
        },
        force: args.force,
        enum_limit: enum_limit_from_env()?,
    })
}

fn check_epsilon(epsilon: Rational) -> Result<RunParams, Failure> {
    if *epsilon.numer() == 0 || epsilon >= Rational::from_integer(1) {
        return Err(usage(format!("--epsilon must lie in (0, 1), got {epsilon}")));
    }
    Ok(RunParams::with_param(epsilon))
}

fn check_delta(delta: Rational) -> Result<Rational, Failure> {
    if *delta.numer() == 0 || delta > Rational::from_integer(1) {
        return Err(usage(format!("--delta must lie in (0, 1], got {delta}")));
    }
    Ok(delta)
}

fn bench(config: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let text = fs::read_to_string(config).map_err(|e| io_failure(config, e))?;
    let suite: SuiteConfig = toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    let mut lines = Vec::new();
    for outcome in run_suite(&suite)? {
        lines.push(serde_json::to_string(&outcome.report).map_err(|e| usage(e.to_string()))?);
    }
    emit(output, &lines)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Exact { metric, io } => {
            let algo = match metric {
                Metric::Ed => Algo::ExactEd,
                Metric::Lcs => Algo::ExactLcs,
            };
            run_pair(algo, RunParams::default(), &io)
        }
        Command::Closest { delta, recursion, io } => {
            run_pair(Algo::Closest, recursion_params(check_delta(delta)?, &recursion)?, &io)
        }
        Command::EdConst { delta, recursion, io } => {
            run_pair(Algo::EdConst, recursion_params(check_delta(delta)?, &recursion)?, &io)
        }
        Command::LcsEps { epsilon, io } => run_pair(Algo::LcsEps, check_epsilon(epsilon)?, &io),
        Command::EdEps { epsilon, io } => run_pair(Algo::EdEps, check_epsilon(epsilon)?, &io),
        Command::Bench { config, output } => bench(&config, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("asd: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
