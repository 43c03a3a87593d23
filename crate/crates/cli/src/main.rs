//! `fuzzydoc`: batch feature selection, clustering and reporting.
//!
//! Exit codes: 0 on success, 1 for data or convergence errors, 2 for usage
//! errors (bad flags, missing input files).

mod commands;
mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

/// An error caused by how the tool was invoked rather than by the data.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(
    name = "fuzzydoc",
    version,
    about = "Fuzzy c-means clustering of text documents"
)]
struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Select discriminative features from labeled sample corpora.
    Features(FeaturesArgs),
    /// Cluster a corpus over a feature file.
    Cluster(ClusterArgs),
    /// Name clusters and classify membership strength.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct PreprocessArgs {
    /// Stopword file (one term per line); defaults to the built-in list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Disable Porter stemming.
    #[arg(long)]
    no_stemming: bool,
    /// Keep markup instead of stripping tags.
    #[arg(long)]
    keep_markup: bool,
    /// Add adjacent-pair phrase tokens.
    #[arg(long)]
    bigrams: bool,
}

impl PreprocessArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if self.stopwords.is_some() {
            cfg.stopwords_file = self.stopwords.clone();
        }
        if self.no_stemming {
            cfg.stemming = Some(false);
        }
        if self.keep_markup {
            cfg.strip_markup = Some(false);
        }
        if self.bigrams {
            cfg.bigrams = Some(true);
        }
    }
}

#[derive(Debug, Args)]
struct FeaturesArgs {
    /// Labeled sample corpus as LABEL=DIR; give at least two.
    #[arg(long = "samples", value_parser = parse_sample)]
    samples: Vec<(String, PathBuf)>,
    /// Maximum number of features to keep [default: 50]
    #[arg(long)]
    top_k: Option<usize>,
    /// Minimum max/(min+1) word-frequency ratio [default: 2.0]
    #[arg(long)]
    min_ratio: Option<f64>,
    /// Minimum word frequency in the best profile [default: 5.0]
    #[arg(long)]
    min_wf: Option<f64>,
    /// Directory for the per-label profile files; defaults to the
    /// directory of --out.
    #[arg(long)]
    profiles_dir: Option<PathBuf>,
    /// Feature file to write.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    preprocess: PreprocessArgs,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    /// Directory of documents to cluster.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Feature file written by `features`.
    #[arg(long)]
    features: Option<PathBuf>,
    /// Number of clusters
    #[arg(long)]
    clusters: Option<usize>,
    /// Membership exponent, greater than 1 [default: 2.0]
    #[arg(long)]
    fuzzifier: Option<f64>,
    /// Stop when no membership moves more than this [default: 0.001]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Iteration cap [default: 100]
    #[arg(long)]
    max_iters: Option<usize>,
    /// Seed for the random initial partition.
    #[arg(long)]
    seed: Option<u64>,
    /// Initial partition, a c x n JSON array, instead of a random one.
    #[arg(long)]
    init_file: Option<PathBuf>,
    /// Print every iteration's memberships, centers and objective as JSON
    /// lines on standard output.
    #[arg(long)]
    trace: bool,
    /// Result file to write.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    preprocess: PreprocessArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Result file written by `cluster`.
    #[arg(long)]
    result: Option<PathBuf>,
    /// Profile file, or a directory of `*.profile.json` files.
    #[arg(long = "profiles")]
    profiles: Vec<PathBuf>,
    /// Top membership at or above this is strong [default: 0.85]
    #[arg(long)]
    strong_threshold: Option<f64>,
    /// Spread below this is ambiguous [default: 0.1]
    #[arg(long)]
    ambiguity_margin: Option<f64>,
    /// Report file to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_sample(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((label, dir)) if !label.is_empty() && !dir.is_empty() => {
            Ok((label.to_owned(), dir.into()))
        }
        _ => Err(format!("expected LABEL=DIR, got {s:?}")),
    }
}

impl Command {
    fn flags(&self) -> RunConfig {
        let mut cfg = RunConfig::default();
        match self {
            Command::Features(a) => {
                cfg.sample_dirs = a.samples.iter().cloned().collect::<BTreeMap<_, _>>();
                cfg.top_k = a.top_k;
                cfg.min_ratio = a.min_ratio;
                cfg.min_wf = a.min_wf;
                cfg.profiles_dir = a.profiles_dir.clone();
                cfg.features_path = a.out.clone();
                a.preprocess.apply(&mut cfg);
            }
            Command::Cluster(a) => {
                cfg.corpus_dir = a.corpus.clone();
                cfg.features_path = a.features.clone();
                cfg.clusters = a.clusters;
                cfg.fuzzifier = a.fuzzifier;
                cfg.epsilon = a.epsilon;
                cfg.max_iters = a.max_iters;
                cfg.seed = a.seed;
                cfg.init_file = a.init_file.clone();
                cfg.trace = a.trace.then_some(true);
                cfg.result_path = a.out.clone();
                a.preprocess.apply(&mut cfg);
            }
            Command::Report(a) => {
                cfg.result_path = a.result.clone();
                cfg.profiles = a.profiles.clone();
                cfg.strong_threshold = a.strong_threshold;
                cfg.ambiguity_margin = a.ambiguity_margin;
                cfg.report_path = a.out.clone();
            }
        }
        cfg
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let base = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let cfg = base.overlay(cli.command.flags());
    match cli.command {
        Command::Features(_) => commands::select_features(&cfg),
        Command::Cluster(_) => commands::cluster(&cfg),
        Command::Report(_) => commands::report(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
