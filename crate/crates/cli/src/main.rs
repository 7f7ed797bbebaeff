//! `piforge`: run the identity, series, congruence, and sequence engines
//! from the command line and emit a deterministic report.

mod cache;
mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use piforge_core::series::DEFAULT_MAX_DIGITS;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "piforge", version, about = "exact verification workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Sequence value cache file (created if missing, extended on exit)
    #[arg(long, global = true)]
    cache: Option<std::path::PathBuf>,

    /// Worker threads (default: all available)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Let conjecture-suite failures drive a nonzero exit code
    #[arg(long, global = true)]
    strict_conjectures: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Verify convolution identities, their recurrences, and the s_n facts
    Identities(IdentitiesArgs),
    /// Certify series convergence against closed-form targets
    Series(SeriesArgs),
    /// Check congruences over a prime range
    Congruences(CongruencesArgs),
    /// Print exact sequence terms
    Seq(SeqArgs),
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Comma-separated ids (2.1..2.5, 3.1, rec2.1, rec2.5, rec3.1, s-props)
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    /// Select every identity, recurrence, and the s_n properties
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 300)]
    n_max: u32,
    /// Prime bound for the s_{p-1} residue check
    #[arg(long, default_value_t = 300)]
    pmax: u64,
}

#[derive(Args)]
struct SeriesArgs {
    /// Comma-separated series ids (R1..R6, 1.1, ..., C4.3-7, 5.2, CTYZ, 1.10)
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    /// proved | conjecture | all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 30)]
    digits: u32,
    #[arg(long, default_value_t = 2000)]
    max_terms: u32,
    /// Run the binomial-series closed-form check at this base
    #[arg(long, allow_hyphen_values = true)]
    lemma32: Option<i64>,
}

#[derive(Args)]
struct CongruencesArgs {
    /// Comma-separated case ids (1.5..1.8, C4.1a, ..., C5.9b, scan5.9)
    #[arg(long, value_delimiter = ',')]
    id: Vec<String>,
    /// proved | conjecture | all
    #[arg(long)]
    suite: Option<String>,
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long, default_value_t = 200)]
    pmax: u64,
}

#[derive(Args)]
struct SeqArgs {
    /// central | T | P | P+ | conv-sq | conv-23 | conv-42 | conv-63 | domb | s | euler
    #[arg(long)]
    id: String,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<i64>,
    /// Single index to print
    #[arg(long)]
    n: Option<u32>,
    /// Print indices 0..=n_max instead
    #[arg(long)]
    n_max: Option<u32>,
}

const USAGE_ERROR: u8 = 2;
const PROVED_FAILURE: u8 = 1;
/// Hard ceiling on the prime range, keeping runs desk-scale.
const PMAX_CEILING: u64 = 10_000;

fn digits_ceiling() -> u32 {
    std::env::var("PIFORGE_MAX_DIGITS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIGITS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = cli.workers {
            b = b.num_threads(w.max(1));
        }
        match b.build() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("piforge: cannot build worker pool: {e}");
                return ExitCode::from(USAGE_ERROR);
            }
        }
    };

    let started = std::time::Instant::now();
    let ctx = piforge_core::Context::new();
    let loaded_counts = match &cli.cache {
        Some(path) => match cache::load(path, &ctx) {
            Ok(counts) => Some(counts),
            Err(e) => {
                eprintln!("piforge: warning: ignoring unreadable cache {}: {e}", path.display());
                Some(Default::default())
            }
        },
        None => None,
    };

    let outcome = pool.install(|| match &cli.command {
        Command::Identities(a) => commands::run_identities(&ctx, a),
        Command::Series(a) => commands::run_series(&ctx, a, digits_ceiling()),
        Command::Congruences(a) => commands::run_congruences(&ctx, a, PMAX_CEILING),
        Command::Seq(a) => commands::run_seq(&ctx, a),
    });

    let mut report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("piforge: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    report.timings = piforge_core::Timings {
        timestamp: humantime_now(),
        wall_ms: started.elapsed().as_millis(),
    };

    if let (Some(path), Some(counts)) = (&cli.cache, &loaded_counts) {
        if let Err(e) = cache::append_new(path, &ctx, counts) {
            eprintln!("piforge: warning: cache not updated: {e}");
        }
    }

    match cli.format {
        Format::Json => println!("{}", output::to_json(&report)),
        Format::Csv => print!("{}", output::to_csv(&report)),
        Format::Text => print!("{}", output::to_text(&report)),
    }

    let (proved_fails, conj_fails) = report.fail_counts();
    if proved_fails > 0 || (cli.strict_conjectures && conj_fails > 0) {
        ExitCode::from(PROVED_FAILURE)
    } else {
        ExitCode::SUCCESS
    }
}

fn humantime_now() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}
