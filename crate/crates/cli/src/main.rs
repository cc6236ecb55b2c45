//! `hyperfit` — fit hyperbolic community models to undirected graphs.
//!
//! Subcommands cover the whole pipeline: `sample` draws a seeded synthetic
//! graph from a planted-model spec, `fit-community` and `fit-graph` fit
//! models and emit JSONL records, `lrt` compares two fit outputs with
//! likelihood-ratio tests, `convert` translates integer anchors into the
//! other parameterizations, `render` exports plot data as CSV, and
//! `summarize` reduces fit records to a quartile table. Every subcommand is
//! deterministic: identical inputs and seeds produce byte-identical outputs.

mod commands;
mod records;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfit_core::FitMode;

#[derive(Parser)]
#[command(
    name = "hyperfit",
    version,
    about = "Hyperbolic community models for undirected graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one community from a communities file and print its record.
    FitCommunity(FitCommunityArgs),
    /// Fit all communities jointly against one global outside density.
    FitGraph(FitGraphArgs),
    /// Likelihood-ratio tests between two fit outputs on the same communities.
    Lrt(LrtArgs),
    /// Convert integer anchors (gamma, H, n) to the other parameterizations.
    Convert(ConvertArgs),
    /// Sample a synthetic graph from a planted-model spec file.
    Sample(SampleArgs),
    /// Export one community's ordered adjacency cells and fitted boundary as CSV.
    Render(RenderArgs),
    /// Reduce fit records to quartiles of gamma/n_c, H/n_c, and x.
    Summarize(SummarizeArgs),
}

/// Candidate family, shared by the fitting subcommands.
#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// All feasible integer anchors plus both restricted families.
    Full,
    /// Full square gamma = H = n_c - 1.
    Block,
    /// p = 1 with only the threshold free.
    Hycom,
}

impl From<ModeArg> for FitMode {
    fn from(m: ModeArg) -> FitMode {
        match m {
            ModeArg::Full => FitMode::Full,
            ModeArg::Block => FitMode::Block,
            ModeArg::Hycom => FitMode::Hycom,
        }
    }
}

/// Restricted family an `lrt` run tests against.
#[derive(Clone, Copy, Debug, ValueEnum)]
enum RestrictionArg {
    /// Fixes gamma and H per community: 2 degrees of freedom each.
    Block,
    /// Fixes p = 1 per community: 1 degree of freedom each.
    Hycom,
}

#[derive(Args)]
struct FitCommunityArgs {
    /// Edge-list file: two whitespace-separated node ids per line, `#` comments.
    #[arg(long)]
    graph: PathBuf,
    /// Communities file: one community per line, whitespace-separated node ids.
    #[arg(long)]
    communities: PathBuf,
    /// Zero-based line index of the community to fit.
    #[arg(long, default_value_t = 0)]
    community_index: usize,
    /// Candidate family to search.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    /// Fix the outside density instead of its maximum-likelihood value.
    #[arg(long)]
    d_out: Option<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitGraphArgs {
    /// Edge-list file: two whitespace-separated node ids per line, `#` comments.
    #[arg(long)]
    graph: PathBuf,
    /// Communities file: one community per line, whitespace-separated node ids.
    #[arg(long)]
    communities: PathBuf,
    /// Candidate family to search.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    /// Hard cap on alternating-update rounds.
    #[arg(long, default_value_t = 50)]
    max_rounds: u32,
    /// Minimum log-likelihood gain that re-flags a community's neighborhood.
    #[arg(long, default_value_t = 1e-9)]
    epsilon: f64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LrtArgs {
    /// JSONL fit output for the unrestricted (full) model.
    #[arg(long)]
    full: PathBuf,
    /// JSONL fit output for the restricted model.
    #[arg(long)]
    restricted: PathBuf,
    /// Which restriction the restricted file was fitted under.
    #[arg(long, value_enum)]
    restriction: RestrictionArg,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Core size gamma.
    #[arg(long)]
    gamma: u32,
    /// Tail thickness H.
    #[arg(long)]
    h: u32,
    /// Community size n_c.
    #[arg(long)]
    n: u32,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// JSON sample spec: n, planted communities, outside density, seed.
    #[arg(long)]
    spec: PathBuf,
    /// Prefix for the emitted `.edges`, `.communities`, and `.manifest.json`.
    #[arg(long)]
    out_prefix: PathBuf,
    /// Overrides the spec's seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct RenderArgs {
    /// Edge-list file: two whitespace-separated node ids per line, `#` comments.
    #[arg(long)]
    graph: PathBuf,
    /// Communities file: one community per line, whitespace-separated node ids.
    #[arg(long)]
    communities: PathBuf,
    /// Zero-based line index of the community to render.
    #[arg(long, default_value_t = 0)]
    community_index: usize,
    /// Candidate family to search.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    /// Fix the outside density instead of its maximum-likelihood value.
    #[arg(long)]
    d_out: Option<f64>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SummarizeArgs {
    /// JSONL fit output to summarize.
    #[arg(long)]
    models: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    match cli.command {
        Command::FitCommunity(args) => commands::fit_community(args),
        Command::FitGraph(args) => commands::fit_graph(args),
        Command::Lrt(args) => commands::lrt(args),
        Command::Convert(args) => commands::convert(args),
        Command::Sample(args) => commands::sample(args),
        Command::Render(args) => commands::render(args),
        Command::Summarize(args) => commands::summarize(args),
    }
}

/// Caps the worker pool at `HYPERFIT_THREADS` threads (0 = library default).
#[cfg(feature = "parallel")]
fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HYPERFIT_THREADS") {
        let threads: usize = v
            .parse()
            .with_context(|| format!("HYPERFIT_THREADS must be a non-negative integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("failed to configure the worker pool")?;
    }
    Ok(())
}

/// Sequential build: there is no pool, so the cap is moot.
#[cfg(not(feature = "parallel"))]
fn init_threads() -> Result<()> {
    Ok(())
}
