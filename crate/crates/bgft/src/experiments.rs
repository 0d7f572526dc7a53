//! Deterministic experiment drivers behind the `bgft` CLI.
//!
//! Each driver returns a complete CSV document as a string; the CLI decides
//! where to write it. Determinism is a hard contract: the same configuration
//! always produces byte-identical output. Three ingredients make that true —
//! per-trial PRNG substreams (so trial results are independent of execution
//! order), canonical row order `(graph, level, trial)`, and shortest
//! round-trip decimal formatting for every float.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::densela::{eig, EigOptions, LaError, DEFAULT_EIG_TOL};
use crate::digraph::{Digraph, DigraphError};
use crate::nonnormality::{report, NonnormalityError};
use crate::prng::Prng;
use crate::sampling::{make_plan, recover_noisy, SamplingError};
use crate::scalar::norm2;
use crate::transform::{Signal, Spectrum, TransformError};

/// Default grid of relative noise levels for the denoising experiment.
pub const DEFAULT_NOISE_LEVELS: [f64; 6] = [0.0, 0.01, 0.05, 0.1, 0.2, 0.5];
/// Default noise level for the sampling experiment when the user supplies no
/// explicit grid.
pub const DEFAULT_SAMPLE_NOISE: f64 = 0.1;
/// Rejection-resampling budget per trial for finding a full-rank sample set.
pub const MAX_PLAN_ATTEMPTS: usize = 100;

/// Errors from the experiment drivers.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("--seed is required for {command}")]
    SeedRequired { command: &'static str },
    #[error("band size k = {k} must lie in 1..=n (n = {n})")]
    BadBandSize { k: usize, n: usize },
    #[error("sample set size m = {m} must lie in 1..=n (n = {n})")]
    BadSampleSize { m: usize, n: usize },
    #[error("graph kind `file` needs a parsed edge-list graph")]
    MissingFileGraph,
    #[error(
        "stability bound violated on graph {graph}, trial {trial}: \
         error {error:e} > bound {bound:e}"
    )]
    BoundViolated {
        graph: String,
        trial: usize,
        error: f64,
        bound: f64,
    },
    #[error(transparent)]
    La(#[from] LaError<f64>),
    #[error(transparent)]
    Digraph(#[from] DigraphError<f64>),
    #[error(transparent)]
    Transform(#[from] TransformError<f64>),
    #[error(transparent)]
    Sampling(#[from] SamplingError<f64>),
    #[error(transparent)]
    Nonnormality(#[from] NonnormalityError<f64>),
}

/// Which graph family a run works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Cycle,
    Perturbed,
    File,
}

/// A graph plus the label used in CSV rows.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub label: String,
    pub graph: Digraph<f64>,
}

/// Everything a driver needs, with defaults matching the reference setup:
/// `n = 20`, `p = 0.2`, `w = 0.8`, `K = 5`, 100 trials.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Restrict the run to one family; `None` runs cycle and perturbed.
    pub graph_kind: Option<GraphKind>,
    pub n: usize,
    pub p: f64,
    pub weight: f64,
    /// Base seed; required whenever randomness is involved (the perturbed
    /// family, denoising, sampling).
    pub seed: Option<u64>,
    /// Band size `K`: the number of lowest-`|λ|` modes.
    pub band_size: usize,
    pub noise_levels: Vec<f64>,
    /// Noise level of the sampling experiment.
    pub sample_noise: f64,
    pub trials: usize,
    /// Sample-set size `m`; `None` means `2K`.
    pub sample_set_size: Option<usize>,
    pub balance: bool,
    pub eig_tol: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            graph_kind: None,
            n: 20,
            p: 0.2,
            weight: 0.8,
            seed: None,
            band_size: 5,
            noise_levels: DEFAULT_NOISE_LEVELS.to_vec(),
            sample_noise: DEFAULT_SAMPLE_NOISE,
            trials: 100,
            sample_set_size: None,
            balance: false,
            eig_tol: DEFAULT_EIG_TOL,
        }
    }
}

impl ExperimentConfig {
    pub fn eig_options(&self) -> EigOptions<f64> {
        EigOptions {
            balance: self.balance,
            tol: self.eig_tol,
        }
    }

    pub fn sample_size(&self) -> usize {
        self.sample_set_size.unwrap_or(2 * self.band_size)
    }

    fn require_seed(&self, command: &'static str) -> Result<u64, ExperimentError> {
        self.seed.ok_or(ExperimentError::SeedRequired { command })
    }

    fn band_checked(&self, n: usize) -> Result<usize, ExperimentError> {
        let k = self.band_size;
        if k == 0 || k > n {
            return Err(ExperimentError::BadBandSize { k, n });
        }
        Ok(k)
    }
}

/// Builds the list of graphs a run works on, in canonical order.
///
/// `file_graph` carries the parsed edge-list graph when `graph_kind` is
/// [`GraphKind::File`]; reading the file is the CLI's job.
pub fn resolve_graphs(
    cfg: &ExperimentConfig,
    file_graph: Option<Digraph<f64>>,
) -> Result<Vec<LabeledGraph>, ExperimentError> {
    let mut graphs = Vec::new();
    let kinds: &[GraphKind] = match cfg.graph_kind {
        None => &[GraphKind::Cycle, GraphKind::Perturbed],
        Some(GraphKind::Cycle) => &[GraphKind::Cycle],
        Some(GraphKind::Perturbed) => &[GraphKind::Perturbed],
        Some(GraphKind::File) => &[GraphKind::File],
    };
    for kind in kinds {
        let labeled = match kind {
            GraphKind::Cycle => LabeledGraph {
                label: "cycle".to_string(),
                graph: Digraph::directed_cycle(cfg.n)?,
            },
            GraphKind::Perturbed => {
                let seed = cfg.require_seed("the perturbed family")?;
                LabeledGraph {
                    label: "perturbed".to_string(),
                    graph: Digraph::perturbed_cycle(cfg.n, cfg.p, cfg.weight, seed)?,
                }
            }
            GraphKind::File => LabeledGraph {
                label: "file".to_string(),
                graph: file_graph
                    .clone()
                    .ok_or(ExperimentError::MissingFileGraph)?,
            },
        };
        graphs.push(labeled);
    }
    Ok(graphs)
}

/// Shortest round-trip decimal representation, with `-0` normalized to `0`.
///
/// Rust's float `Display` already prints the shortest string that parses
/// back to the same bits, which is what makes "byte-identical output" and
/// "recompute the bound from the logged factors" well-defined.
fn fmt_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

/// Non-normality metrics table: one row per graph.
pub fn cmd_table1(
    cfg: &ExperimentConfig,
    graphs: &[LabeledGraph],
) -> Result<String, ExperimentError> {
    let mut out = String::from("graph,kappa_v,henrici,alpha,delta\n");
    for g in graphs {
        let r = report(&g.graph, &g.label, cfg.eig_options())?;
        writeln!(
            out,
            "{},{},{},{},{}",
            r.graph_label,
            fmt_float(r.kappa),
            fmt_float(r.henrici),
            fmt_float(r.alpha),
            fmt_float(r.delta)
        )
        .expect("writing to String cannot fail");
    }
    Ok(out)
}

/// Laplacian spectra: one row per eigenvalue in canonical frequency order.
pub fn cmd_spectra(
    cfg: &ExperimentConfig,
    graphs: &[LabeledGraph],
) -> Result<String, ExperimentError> {
    let mut out = String::from("graph,k,re_lambda,im_lambda\n");
    for g in graphs {
        let system = eig(g.graph.laplacian().matrix(), cfg.eig_options())?;
        for (k, lambda) in system.values.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{}",
                g.label,
                k,
                fmt_float(lambda.re),
                fmt_float(lambda.im)
            )
            .expect("writing to String cannot fail");
        }
    }
    Ok(out)
}

/// Draws one normalized `K`-bandlimited signal from the trial substream.
///
/// The same trial index yields the same coefficients for every graph and
/// noise level (common random numbers), which is what makes cross-family
/// error curves comparable.
fn bandlimited_unit_signal(
    v_band: &crate::densela::CMatrix<f64>,
    rng: &mut Prng,
) -> Vec<Complex64> {
    let c = rng.complex_gaussian_vec(v_band.cols());
    let mut x = v_band.matvec(&c);
    let xnorm = norm2(&x);
    // A zero draw has probability zero; the guard keeps the math total.
    let scale = if xnorm > 0.0 { 1.0 / xnorm } else { 1.0 };
    for z in &mut x {
        *z = z.scale(scale);
    }
    x
}

fn l2_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Bandlimited denoising: ideal low-pass reconstruction error per
/// `(graph, noise level, trial)`.
///
/// Per trial: unit complex-Gaussian coefficients on the `K` lowest-`|λ|`
/// modes, normalized to `‖x‖ = 1`; complex Gaussian noise scaled to relative
/// RMS level `‖η‖_rms = level`; reconstruction by the indicator filter of
/// the band.
pub fn cmd_denoise(
    cfg: &ExperimentConfig,
    graphs: &[LabeledGraph],
) -> Result<String, ExperimentError> {
    let seed = cfg.require_seed("denoise")?;
    let mut out = String::from("graph,level,trial,rel_error,kappa_v\n");
    for g in graphs {
        let spectrum = Spectrum::of_laplacian(&g.graph.laplacian(), cfg.eig_options())?;
        let n = spectrum.n();
        let k = cfg.band_checked(n)?;
        let band: Vec<usize> = (0..k).collect();
        let v_band = spectrum.vectors().select_columns(&band);
        let lowpass: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(if i < k { 1.0 } else { 0.0 }, 0.0))
            .collect();
        let kappa = fmt_float(spectrum.kappa());
        for &level in &cfg.noise_levels {
            for trial in 0..cfg.trials {
                let mut rng = Prng::substream(seed, trial as u64);
                let x = bandlimited_unit_signal(&v_band, &mut rng);
                let noise_scale = level / (n as f64).sqrt();
                let noisy: Vec<Complex64> = rng
                    .complex_gaussian_vec::<f64>(n)
                    .into_iter()
                    .zip(&x)
                    .map(|(eta, &xi)| xi + eta * noise_scale)
                    .collect();
                let reconstructed = spectrum.apply_filter(&lowpass, &Signal::vertex(noisy)?)?;
                let rel_error = l2_distance(reconstructed.values(), &x) / norm2(&x);
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    g.label,
                    fmt_float(level),
                    trial,
                    fmt_float(rel_error),
                    kappa
                )
                .expect("writing to String cannot fail");
            }
        }
    }
    Ok(out)
}

/// Sample-and-recover trials with the explicit stability bound.
///
/// Per trial: a random size-`m` sample set, rejection-resampled (fresh draw
/// from the trial substream) until the plan is full-rank, at most
/// [`MAX_PLAN_ATTEMPTS`] times — exhaustion emits a zeroed row with the
/// `skipped` flag set instead of failing the run. Noise level is
/// `cfg.sample_noise`. Every emitted row is checked against the recovery
/// bound `‖x̂ − x‖ ≤ ‖V_Ω‖₂·‖η‖/γ` (allowing least-squares rounding of
/// `1e-9·‖x‖`, which matters only at zero noise where the bound is 0).
pub fn cmd_sample(
    cfg: &ExperimentConfig,
    graphs: &[LabeledGraph],
) -> Result<String, ExperimentError> {
    let seed = cfg.require_seed("sample")?;
    let mut out = String::from("graph,trial,m,gamma,vnorm,eta_norm,rel_error,bound,skipped\n");
    for g in graphs {
        let spectrum = Spectrum::of_laplacian(&g.graph.laplacian(), cfg.eig_options())?;
        let n = spectrum.n();
        let k = cfg.band_checked(n)?;
        let m = cfg.sample_size();
        if m == 0 || m > n {
            return Err(ExperimentError::BadSampleSize { m, n });
        }
        let band: Vec<usize> = (0..k).collect();
        let level = cfg.sample_noise;
        for trial in 0..cfg.trials {
            let mut rng = Prng::substream(seed, trial as u64);
            let mut plan = None;
            for _ in 0..MAX_PLAN_ATTEMPTS {
                let samples = rng.distinct_indices(n, m);
                let candidate = make_plan(&spectrum, &band, &samples)?;
                if candidate.is_full_rank() {
                    plan = Some(candidate);
                    break;
                }
            }
            let Some(plan) = plan else {
                writeln!(out, "{},{},{},0,0,0,0,0,1", g.label, trial, m)
                    .expect("writing to String cannot fail");
                continue;
            };
            let x = bandlimited_unit_signal(plan.v_omega(), &mut rng);
            let noise_scale = level / (m as f64).sqrt();
            let eta: Vec<Complex64> = rng
                .complex_gaussian_vec::<f64>(m)
                .into_iter()
                .map(|z| z * noise_scale)
                .collect();
            let eta_norm = norm2(&eta);
            let y: Vec<Complex64> = plan
                .samples()
                .iter()
                .zip(&eta)
                .map(|(&v, &e)| x[v] + e)
                .collect();
            let rec = recover_noisy(&plan, &y, eta_norm)?;
            let xnorm = norm2(&x);
            let error = l2_distance(rec.x_hat.values(), &x);
            let bound = rec.bound_noise.expect("noisy recovery carries its bound");
            if error > bound + 1e-9 * xnorm {
                return Err(ExperimentError::BoundViolated {
                    graph: g.label.clone(),
                    trial,
                    error,
                    bound,
                });
            }
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},0",
                g.label,
                trial,
                m,
                fmt_float(plan.gamma()),
                fmt_float(plan.vnorm()),
                fmt_float(eta_norm),
                fmt_float(error / xnorm),
                fmt_float(bound)
            )
            .expect("writing to String cannot fail");
        }
    }
    Ok(out)
}
