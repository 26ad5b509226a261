use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nonproj::cli::{
    run_coverage, run_crosscheck, run_parse, run_stats, CoverageOptions, CrosscheckOptions,
    OracleMode, ParseOutcome, Report,
};

#[derive(Parser)]
#[command(
    name = "nonproj",
    version,
    about = "Non-projective dependency parsing toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum OracleArg {
    Greedy,
    #[default]
    Exact,
    Chart,
}

impl From<OracleArg> for OracleMode {
    fn from(value: OracleArg) -> Self {
        match value {
            OracleArg::Greedy => OracleMode::Greedy,
            OracleArg::Exact => OracleMode::Exact,
            OracleArg::Chart => OracleMode::Chart,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count non-projective sentences in CoNLL-U files
    Stats {
        /// CoNLL-U files or directories
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Coverage of non-projective sentences per transition system
    Coverage {
        /// CoNLL-U files or directories
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Transition system (repeatable); defaults to the four report rows
        #[arg(long = "system")]
        systems: Vec<String>,
        /// Which oracle decides coverage
        #[arg(long, value_enum, default_value_t)]
        oracle: OracleArg,
        /// State budget for the exact oracle before greedy fallback
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Length cap; longer sentences use the greedy oracle (chart mode
        /// defaults to 40)
        #[arg(long)]
        max_len: Option<usize>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Viterbi-parse one sentence from an arc-score file
    Parse {
        /// Transition system preset
        #[arg(long)]
        system: String,
        /// Score file: `n <int>` header, then `h m s` triples
        #[arg(long)]
        scores: PathBuf,
    },
    /// Cross-check oracles, engines and Viterbi search on short sentences
    Crosscheck {
        /// Largest sentence length to enumerate exhaustively (1..=5)
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Random weighted instances per check
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed; fixed seeds give byte-identical reports
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn emit(report: &Report) {
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    let _ = std::io::stdout().flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Stats { paths, json } => run_stats(&paths, json).map(|r| {
            emit(&r);
            ExitCode::SUCCESS
        }),
        Command::Coverage {
            paths,
            systems,
            oracle,
            budget,
            max_len,
            json,
        } => {
            let mut opts = CoverageOptions {
                paths,
                oracle: oracle.into(),
                budget,
                max_len,
                json,
                ..CoverageOptions::default()
            };
            if !systems.is_empty() {
                opts.systems = systems;
            }
            run_coverage(&opts).map(|r| {
                emit(&r);
                ExitCode::SUCCESS
            })
        }
        Command::Parse { system, scores } => {
            run_parse(&system, &scores).map(|outcome| match outcome {
                ParseOutcome::Parsed(text) => {
                    print!("{}", text);
                    ExitCode::SUCCESS
                }
                ParseOutcome::NoParse => {
                    eprintln!("no parse: every derivable tree has a disallowed arc");
                    ExitCode::from(1)
                }
            })
        }
        Command::Crosscheck {
            max_n,
            trials,
            seed,
        } => run_crosscheck(&CrosscheckOptions {
            max_n,
            trials,
            seed,
        })
        .map(|report| {
            print!("{}", report.text);
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
