use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Generalized Wheeler automata: minimization, BWT and pattern matching.
#[derive(Parser, Debug)]
#[command(name = "gwheel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an automaton and report its class; exit 1 if it is not a GDFA.
    Validate { file: PathBuf },
    /// Drop states that are unreachable or cannot reach a final state.
    Trim {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Replace every edge by a chain (or trie) of single-character edges.
    Expand {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Minimal GDFA with the same language and W-language.
    Minimize {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exit 0 if two GDFAs are isomorphic, 1 otherwise.
    Iso { a: PathBuf, b: PathBuf },
    /// Decide Wheelerness of a trim GDFA and print its order.
    Wheeler {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        emit_order: Option<PathBuf>,
    },
    /// Check a proposed order against the Wheeler properties.
    CheckOrder {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        order: PathBuf,
        #[arg(long, default_value_t = gwheel::gbwt::DEFAULT_ORDER_BOUND)]
        bound: usize,
    },
    /// Build or decode the generalized BWT.
    #[command(subcommand)]
    Bwt(BwtCommand),
    /// Build a pattern-matching index.
    #[command(subcommand)]
    Index(IndexCommand),
    /// Query an index.
    Query(QueryArgs),
    /// Compare index answers with brute-force simulation.
    Xcheck {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        patterns: PathBuf,
        /// Also run 200 random patterns drawn with this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Generate a random trim Wheeler GDFA.
    Gen(GenArgs),
}

#[derive(Subcommand, Debug)]
enum BwtCommand {
    Build {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        order: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    Decode {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum IndexCommand {
    Build {
        input: PathBuf,
        /// Wheeler order; computed when omitted (GDFAs only).
        #[arg(long, value_name = "FILE")]
        order: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
struct QueryArgs {
    index: PathBuf,
    #[command(flatten)]
    source: PatternSource,
    /// Report language membership instead of matching states.
    #[arg(long)]
    member: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct PatternSource {
    #[arg(long)]
    pattern: Option<String>,
    /// One pattern per line.
    #[arg(long, value_name = "FILE")]
    patterns: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    states: usize,
    #[arg(long)]
    max_label: usize,
    #[arg(long, default_value = "ab")]
    alphabet: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
