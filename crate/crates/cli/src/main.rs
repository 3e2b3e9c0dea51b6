//! Command-line harness: generate instance words, run seeded recognition
//! trials, evaluate exact acceptance probabilities, sweep the search law
//! against its closed form, and tabulate space usage.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ldisj_core::harness::{
    exact_row, space_rows, sweep_rows, to_csv, to_json, trial_row, CsvRecord, InstanceKind,
};
use ldisj_core::stream::parse_word_file;
use ldisj_core::{generate_instance, run_trials, RecognizerKind};

#[derive(Parser)]
#[command(
    name = "ldisj",
    version,
    about = "One-pass recognizers for the repeated set-disjointness language"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Recognizer {
    Quantum,
    Blockwise,
    Both,
}

impl Recognizer {
    fn kinds(self) -> Vec<RecognizerKind> {
        match self {
            Recognizer::Quantum => vec![RecognizerKind::Quantum],
            Recognizer::Blockwise => vec![RecognizerKind::Blockwise],
            Recognizer::Both => vec![RecognizerKind::Quantum, RecognizerKind::Blockwise],
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the word of a sampled instance (one line over 0, 1, #)
    Gen {
        /// Instance parameter; side strings have length 2^(2k)
        #[arg(long)]
        k: u32,
        /// Number of colliding indices (0 = member)
        #[arg(long, default_value_t = 0)]
        t: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trial-based recognition; prints verdict tallies
    Run {
        /// Word file to recognize (alternative to --k)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Generate the instance with this parameter instead of reading a file
        #[arg(long)]
        k: Option<u32>,
        /// Collisions for a generated instance (0 = member)
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Recognizer::Both)]
        recognizer: Recognizer,
        /// Write report rows here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Acceptance probabilities by enumerating all randomness
    Exact {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Recognizer::Both)]
        recognizer: Recognizer,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact search rejection probabilities against the closed form
    Sweep {
        /// Parameters to sweep, comma separated
        #[arg(long, required = true, value_delimiter = ',')]
        k: Vec<u32>,
        /// Collision counts; all of [0, 2^(2k)] when omitted
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<u64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Space accounting table: quantum versus blockwise peaks per k
    Space {
        #[arg(long, required = true, value_delimiter = ',')]
        k: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

enum AppError {
    Usage(String),
    Core(ldisj_core::Error),
    Io(std::io::Error),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Usage(_) | AppError::Io(_) => 1,
            AppError::Core(e) => {
                if e.is_capacity() {
                    2
                } else {
                    1
                }
            }
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Usage(msg) => write!(f, "{msg}"),
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ldisj_core::Error> for AppError {
    fn from(e: ldisj_core::Error) -> Self {
        AppError::Core(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load_word(
    input: &Option<PathBuf>,
    k: Option<u32>,
    t: Option<u64>,
    seed: u64,
) -> Result<String, AppError> {
    match (input, k) {
        (Some(path), None) => {
            if t.is_some() {
                return Err(AppError::Usage(
                    "--t only applies to generated instances".into(),
                ));
            }
            let contents = fs::read_to_string(path)?;
            Ok(parse_word_file(&contents)?)
        }
        (None, Some(k)) => {
            let kind = match t.unwrap_or(0) {
                0 => InstanceKind::Member,
                t => InstanceKind::WithCollisions(t),
            };
            Ok(generate_instance(k, kind, seed)?.encode())
        }
        _ => Err(AppError::Usage("give exactly one of --input or --k".into())),
    }
}

fn emit<R: CsvRecord + serde::Serialize>(
    rows: &[R],
    out: &Option<PathBuf>,
    format: Format,
) -> Result<(), AppError> {
    let rendered = match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    };
    match out {
        Some(path) => {
            fs::write(path, rendered)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<(), AppError> {
    match command {
        Command::Gen { k, t, seed, out } => {
            let kind = if t == 0 {
                InstanceKind::Member
            } else {
                InstanceKind::WithCollisions(t)
            };
            let instance = generate_instance(k, kind, seed)?;
            let mut word = instance.encode();
            word.push('\n');
            match out {
                Some(path) => {
                    fs::write(&path, word)?;
                    eprintln!(
                        "wrote k={k} t={t} word of {} tokens to {}",
                        instance.word_len(),
                        path.display()
                    );
                }
                None => print!("{word}"),
            }
            Ok(())
        }
        Command::Run {
            input,
            k,
            t,
            trials,
            seed,
            recognizer,
            out,
            format,
        } => {
            if trials == 0 {
                return Err(AppError::Usage("--trials must be at least 1".into()));
            }
            let word = load_word(&input, k, t, seed)?;
            let mut rows = Vec::new();
            for kind in recognizer.kinds() {
                let tally = run_trials(&word, kind, trials, seed)?;
                let pct = |c: u64| 100.0 * c as f64 / trials as f64;
                println!(
                    "{kind}: {trials} trials: accept {} ({:.1}%), reject format {} ({:.1}%), \
                     reject consistency {} ({:.1}%), reject decision {} ({:.1}%)",
                    tally.accepts,
                    pct(tally.accepts),
                    tally.rejects_format,
                    pct(tally.rejects_format),
                    tally.rejects_consistency,
                    pct(tally.rejects_consistency),
                    tally.rejects_decision,
                    pct(tally.rejects_decision),
                );
                println!(
                    "{kind}: acceptance estimate {:?}",
                    tally.acceptance_estimate()
                );
                if out.is_some() {
                    rows.push(trial_row(&word, kind, trials, seed)?);
                }
            }
            if out.is_some() {
                emit(&rows, &out, format)?;
            }
            Ok(())
        }
        Command::Exact {
            input,
            k,
            t,
            seed,
            recognizer,
            out,
            format,
        } => {
            let word = load_word(&input, k, t, seed)?;
            let mut rows = Vec::new();
            for kind in recognizer.kinds() {
                let row = exact_row(&word, kind)?;
                println!(
                    "{kind}: acceptance {:?} ({}), complement acceptance {:?}",
                    row.accept_ldisj,
                    if row.exhaustive {
                        "exact enumeration"
                    } else {
                        "sampled points, full iteration counts"
                    },
                    row.accept_complement,
                );
                rows.push(row);
            }
            if out.is_some() {
                emit(&rows, &out, format)?;
            }
            Ok(())
        }
        Command::Sweep {
            k,
            t,
            seed,
            out,
            format,
        } => {
            let rows = sweep_rows(&k, t.as_deref(), seed)?;
            emit(&rows, &out, format)
        }
        Command::Space {
            k,
            seed,
            out,
            format,
        } => {
            let rows = space_rows(&k, seed)?;
            emit(&rows, &out, format)
        }
    }
}
