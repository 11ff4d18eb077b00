//! `nimperiod`: nim sequences, certified periods, and period predictions
//! for three-element subtraction games.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nimperiod::{
    find_period, nim_sequence_packed_with_cap, predict, resume, sweep, DetectionConfig,
    DetectionError, GameError, Prediction, SequenceError, SubtractionSet, SweepConfig, SweepError,
    SweepOutcome, SweepSummary, DEFAULT_SEQUENCE_CAP,
};

#[derive(Parser)]
#[command(
    name = "nimperiod",
    version,
    about = "Nim-value periods of three-element subtraction games",
    long_about = "Computes nim-value sequences of subtraction games S(s1, s2, s3), certifies\n\
                  their eventual periods, predicts periods from the subtraction set alone,\n\
                  and verifies the predictions over whole ranges of games."
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first nim values of a game.
    Seq {
        s1: u32,
        s2: u32,
        s3: u32,
        /// How many values to print.
        #[arg(long, default_value_t = 32)]
        count: usize,
    },
    /// Measure the minimal preperiod and period of a game.
    Period {
        s1: u32,
        s2: u32,
        s3: u32,
        /// Give up once the sequence prefix reaches this length.
        #[arg(long, default_value_t = DEFAULT_SEQUENCE_CAP)]
        max_seq_len: usize,
    },
    /// Predict the period from the subtraction set alone.
    Predict { s1: u32, s2: u32, s3: u32 },
    /// Measure and check every game in a range, writing one record per line.
    Verify(RangeArgs),
    /// Pick up an interrupted verification run from its checkpoint.
    Resume(RangeArgs),
}

#[derive(Args)]
struct RangeArgs {
    /// Smallest subtrahend in the range.
    #[arg(long, default_value_t = 1)]
    min: u32,
    /// Largest subtrahend in the range.
    #[arg(long)]
    max: u32,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Output file; one JSON record per game, in enumeration order.
    #[arg(long)]
    out: PathBuf,
    /// Records each worker writes between checkpoints.
    #[arg(long, default_value_t = 1024)]
    checkpoint_interval: u64,
    /// Give up on a game once its sequence prefix reaches this length.
    #[arg(long, default_value_t = DEFAULT_SEQUENCE_CAP)]
    max_seq_len: usize,
}

/// Exit code 1: the request itself was wrong.
/// Exit code 2: the request was fine but could not be completed.
enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Failure(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SequenceError> for CliError {
    fn from(e: SequenceError) -> Self {
        match e {
            SequenceError::EmptyRequest => CliError::Usage(e.to_string()),
            SequenceError::CapExceeded { .. } => CliError::Failure(e.to_string()),
        }
    }
}

impl From<DetectionError> for CliError {
    fn from(e: DetectionError) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::InvalidConfig { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout and exit 0; parse errors are
            // usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Seq { s1, s2, s3, count } => {
            let game = SubtractionSet::new(s1, s2, s3)?;
            let seq = nim_sequence_packed_with_cap(&game, count, DEFAULT_SEQUENCE_CAP)?;
            if cli.json {
                let values: Vec<u8> = seq.to_vec();
                println!(
                    "{}",
                    serde_json::json!({ "s1": s1, "s2": s2, "s3": s3, "values": values })
                );
            } else {
                let text: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
                println!("{}", text.join(" "));
            }
            Ok(0)
        }
        Command::Period {
            s1,
            s2,
            s3,
            max_seq_len,
        } => {
            let game = SubtractionSet::new(s1, s2, s3)?;
            let config = DetectionConfig::with_max_len(max_seq_len);
            let cert = find_period(&game, &config)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "s1": s1, "s2": s2, "s3": s3,
                        "preperiod": cert.preperiod,
                        "period": cert.period,
                        "seq_len": cert.sequence_length_used,
                    })
                );
            } else {
                println!("preperiod={} period={}", cert.preperiod, cert.period);
            }
            Ok(0)
        }
        Command::Predict { s1, s2, s3 } => {
            let game = SubtractionSet::new(s1, s2, s3)?;
            match predict(&game) {
                Prediction::CaseI { period } => {
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "s1": s1, "s2": s2, "s3": s3,
                                "case": "I", "period": period,
                            })
                        );
                    } else {
                        println!("Case I, period: {period}");
                    }
                }
                Prediction::CaseII { candidates } => {
                    if cli.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "s1": s1, "s2": s2, "s3": s3,
                                "case": "II", "candidates": candidates,
                            })
                        );
                    } else {
                        let list: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
                        println!("Case II, candidates: {}", list.join(" "));
                    }
                }
            }
            Ok(0)
        }
        Command::Verify(args) => run_sweep(&args, cli.json, sweep),
        Command::Resume(args) => run_sweep(&args, cli.json, resume),
    }
}

fn run_sweep(
    args: &RangeArgs,
    json: bool,
    runner: fn(&SweepConfig) -> Result<SweepOutcome, SweepError>,
) -> Result<u8, CliError> {
    let mut config = SweepConfig::new(args.min, args.max, &args.out);
    config.workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    config.checkpoint_interval = args.checkpoint_interval;
    config.detection = DetectionConfig::with_max_len(args.max_seq_len);
    let summary = match runner(&config)? {
        SweepOutcome::Complete(summary) => summary,
        SweepOutcome::Paused { .. } => unreachable!("no record limit is configured"),
    };
    if json {
        println!(
            "{}",
            serde_json::json!({
                "total": summary.total,
                "case1": summary.case_i,
                "case2": summary.case_ii,
                "mismatches": summary.mismatches,
                "failures": summary.failures,
                "wall_seconds": summary.wall.as_secs_f64(),
                "output": args.out,
            })
        );
    } else {
        println!(
            "verified {} games (s in [{}, {}]) in {:.2?}",
            summary.total, args.min, args.max, summary.wall
        );
        println!("case I: {}   case II: {}", summary.case_i, summary.case_ii);
        println!(
            "mismatches: {}   detection failures: {}",
            summary.mismatches, summary.failures
        );
        if summary.mismatches > 0 {
            println!("mismatch records: {}", config.mismatch_path().display());
        }
    }
    Ok(exit_code_for(&summary))
}

/// A found counterexample outranks an inconclusive game.
fn exit_code_for(summary: &SweepSummary) -> u8 {
    if summary.mismatches > 0 {
        3
    } else if summary.failures > 0 {
        2
    } else {
        0
    }
}
