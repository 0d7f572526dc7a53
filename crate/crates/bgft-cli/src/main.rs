//! `bgft` — deterministic spectral experiments on directed graphs.
//!
//! Four subcommands, one CSV file each: `table1` (non-normality metrics),
//! `spectra` (Laplacian eigenvalues in frequency order), `denoise`
//! (bandlimited denoising error curves), `sample` (sampling/recovery trials
//! with stability bounds). Identical flags always produce byte-identical
//! files.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bgft::digraph::Digraph;
use bgft::experiments::{
    cmd_denoise, cmd_sample, cmd_spectra, cmd_table1, resolve_graphs, ExperimentConfig, GraphKind,
    LabeledGraph,
};

#[derive(Parser)]
#[command(
    name = "bgft",
    version,
    about = "Biorthogonal spectral experiments on directed graphs",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Non-normality metrics, one row per graph (metrics.csv)
    Table1(SharedArgs),
    /// Laplacian spectrum in frequency order, one row per eigenvalue (spectra.csv)
    Spectra(SharedArgs),
    /// Bandlimited denoising error per (graph, noise level, trial) (denoise.csv)
    Denoise(SharedArgs),
    /// Random sampling and recovery with stability bounds (sample.csv)
    Sample(SharedArgs),
}

impl Command {
    fn shared(&self) -> &SharedArgs {
        match self {
            Command::Table1(a) | Command::Spectra(a) | Command::Denoise(a) | Command::Sample(a) => {
                a
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    /// Directed cycle on n vertices
    Cycle,
    /// Directed cycle plus random extra edges (needs --seed)
    Perturbed,
    /// Graph read from an edge-list file (needs --edges)
    File,
}

impl From<GraphArg> for GraphKind {
    fn from(value: GraphArg) -> Self {
        match value {
            GraphArg::Cycle => GraphKind::Cycle,
            GraphArg::Perturbed => GraphKind::Perturbed,
            GraphArg::File => GraphKind::File,
        }
    }
}

#[derive(Args)]
struct SharedArgs {
    /// Vertex count for the generated graph families
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Extra-edge probability of the perturbed family
    #[arg(long, default_value_t = 0.2)]
    p: f64,
    /// Extra-edge weight of the perturbed family
    #[arg(long, default_value_t = 0.8)]
    weight: f64,
    /// Base PRNG seed; required for perturbed graphs, denoise, and sample
    #[arg(long)]
    seed: Option<u64>,
    /// Band size K: the number of lowest-|λ| modes
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Run a single graph family instead of cycle + perturbed
    #[arg(long, value_enum)]
    graph: Option<GraphArg>,
    /// Edge-list file for `--graph file`
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Directory the CSV file is written into
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Balance the Laplacian before the eigendecomposition
    #[arg(long)]
    balance: bool,
    /// Monte-Carlo trials per configuration
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Comma-separated noise levels; `sample` uses the first entry
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<f64>>,
    /// Sample set size m (default 2K)
    #[arg(long)]
    samples: Option<usize>,
}

impl SharedArgs {
    fn config(&self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig {
            graph_kind: self.graph.map(GraphKind::from),
            n: self.n,
            p: self.p,
            weight: self.weight,
            seed: self.seed,
            band_size: self.k,
            trials: self.trials,
            sample_set_size: self.samples,
            balance: self.balance,
            ..ExperimentConfig::default()
        };
        if let Some(levels) = &self.levels {
            if levels.is_empty() {
                bail!("--levels needs at least one value");
            }
            cfg.noise_levels = levels.clone();
            cfg.sample_noise = levels[0];
        }
        Ok(cfg)
    }

    fn graphs(&self, cfg: &ExperimentConfig) -> Result<Vec<LabeledGraph>> {
        let file_graph = match (cfg.graph_kind, &self.edges) {
            (Some(GraphKind::File), Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading edge list {}", path.display()))?;
                Some(Digraph::parse_edge_list(&text).context("parsing edge list")?)
            }
            (Some(GraphKind::File), None) => bail!("--graph file needs --edges <path>"),
            _ => None,
        };
        Ok(resolve_graphs(cfg, file_graph)?)
    }
}

fn run(cli: Cli) -> Result<()> {
    let shared = cli.command.shared();
    let cfg = shared.config()?;
    let graphs = shared.graphs(&cfg)?;
    let (file_name, csv) = match &cli.command {
        Command::Table1(_) => ("metrics.csv", cmd_table1(&cfg, &graphs)?),
        Command::Spectra(_) => ("spectra.csv", cmd_spectra(&cfg, &graphs)?),
        Command::Denoise(_) => ("denoise.csv", cmd_denoise(&cfg, &graphs)?),
        Command::Sample(_) => ("sample.csv", cmd_sample(&cfg, &graphs)?),
    };
    fs::create_dir_all(&shared.out)
        .with_context(|| format!("creating output directory {}", shared.out.display()))?;
    let path = shared.out.join(file_name);
    fs::write(&path, &csv).with_context(|| format!("writing {}", path.display()))?;
    println!(
        "wrote {} ({} rows)",
        path.display(),
        csv.lines().count() - 1
    );
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // `{:#}` flattens the context chain onto one line.
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
