use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use blockent::equiprob::DEFAULT_AEP_CEILING;
use blockent::pipeline::{default_jobs, run, RunConfig, Stage};
use blockent::rate::DEFAULT_CONDITIONAL_MAX;
use blockent::{Error, Format};

#[derive(Parser, Debug)]
#[command(
    name = "blockent",
    version,
    about = "Block entropy, entropy rate and redundancy of text corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character, alphabet and word statistics.
    Stats(RunArgs),
    /// Shift-averaged block entropies and timings.
    Entropy(RunArgs),
    /// Conditional entropies, zero crossing, entropy rate, redundancy.
    Rate(RunArgs),
    /// Equiprobability distance and word distance.
    Aep(RunArgs),
    /// Plot series for block and conditional entropy curves.
    Report(RunArgs),
    /// Every table plus plot series.
    All(RunArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// JSON array of {id, title, author, path}.
    #[arg(long)]
    manifest: PathBuf,
    /// Largest block length for the entropy profile.
    #[arg(long, default_value_t = 500)]
    n_max: usize,
    /// Largest order of conditional entropy used for the zero crossing
    /// [default: 30, capped at --n-max].
    #[arg(long)]
    cond_max: Option<usize>,
    /// Largest block length checked for equiprobability
    /// [default: 500, capped at --n-max].
    #[arg(long)]
    aep_max: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Directory for cached block entropies.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, env = "BLOCKENT_JOBS")]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            manifest_path: self.manifest.clone(),
            n_max_blocks: self.n_max,
            n_max_conditional: self
                .cond_max
                .unwrap_or(DEFAULT_CONDITIONAL_MAX.min(self.n_max)),
            n_aep_ceiling: self.aep_max.unwrap_or(DEFAULT_AEP_CEILING.min(self.n_max)),
            output_dir: self.out.clone(),
            cache_dir: self.cache.clone(),
            parallel_jobs: self.jobs.unwrap_or_else(default_jobs),
            format: match self.format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
                FormatArg::Both => Format::Both,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, args) = match &cli.command {
        Command::Stats(a) => (Stage::Stats, a),
        Command::Entropy(a) => (Stage::Entropy, a),
        Command::Rate(a) => (Stage::Rate, a),
        Command::Aep(a) => (Stage::Aep, a),
        Command::Report(a) => (Stage::Report, a),
        Command::All(a) => (Stage::All, a),
    };
    match run(&args.config(), stage) {
        Ok(outcome) => {
            for failure in &outcome.failures {
                eprintln!("error: sample `{}`: {}", failure.id, failure.message);
            }
            eprintln!(
                "{} sample(s) analyzed, {} failed; block lengths computed {}, from cache {}; {} file(s) written to {}",
                outcome.bundle.samples.len(),
                outcome.failures.len(),
                outcome.computed,
                outcome.cache_reused,
                outcome.written.len(),
                args.out.display()
            );
            if outcome.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e @ (Error::Config(_) | Error::Manifest { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ Error::Io { .. }) if !args.manifest.exists() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
