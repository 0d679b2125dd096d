//! Experiment runners behind the `urgsub` binary.
//!
//! Every CSV row carries the seed, a build id and a hash of the experiment
//! config, and every runner is deterministic given the config.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use urg_subgraphs::distinguisher::{
    algorithm1, attempt_success_probability, window_centre_profile, AlgorithmConfig, EdgeModel, Verdict,
};
use urg_subgraphs::samplers::{default_swap_budget, sample_irg, switch_chain_sample, KernelKind, WeightVector};
use urg_subgraphs::{
    build_powerlaw_sequence, count_induced_exact, count_induced_windowed, fit_scaling, optimize_partitions,
    DegreeSequence, DegreeWindow, Graph, Pattern, PowerLawSpec,
};

pub const BUILD_ID: &str = match option_env!("URGSUB_BUILD_ID") {
    Some(id) => id,
    None => concat!("v", env!("CARGO_PKG_VERSION")),
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Urg,
    IrgChungLu,
    IrgExponential,
    IrgMaxEntropy,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Urg => "urg",
            Model::IrgChungLu => "irg_chung_lu",
            Model::IrgExponential => "irg_exponential",
            Model::IrgMaxEntropy => "irg_max_entropy",
        }
    }

    pub fn kernel(self) -> Option<KernelKind> {
        match self {
            Model::Urg => None,
            Model::IrgChungLu => Some(KernelKind::ChungLu),
            Model::IrgExponential => Some(KernelKind::Exponential),
            Model::IrgMaxEntropy => Some(KernelKind::MaxEntropy),
        }
    }

    fn edge_model(self) -> EdgeModel {
        self.kernel().map_or(EdgeModel::Urg, EdgeModel::Kernel)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_model")]
    pub model: Model,
    /// Extra models for the distinguisher benchmark; `model` is used alone when empty.
    #[serde(default)]
    pub models: Vec<Model>,
    pub n: Vec<usize>,
    pub tau: f64,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default)]
    pub pattern: Option<PathBuf>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    /// Switch-chain proposals per sample; `10 m ln m` when unset.
    #[serde(default)]
    pub swap_budget: Option<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Window half-width for windowed counts.
    #[serde(default = "default_window_epsilon")]
    pub window_epsilon: f64,
    #[serde(default)]
    pub attempt_cap: Option<usize>,
}

fn default_model() -> Model {
    Model::Urg
}
fn default_c() -> f64 {
    1.0
}
fn default_trials() -> usize {
    1
}
fn default_window_epsilon() -> f64 {
    0.25
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).context("parsing experiment config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::from_json(&text)?;
        if let Some(pattern) = &cfg.pattern {
            if pattern.is_relative() {
                if let Some(dir) = path.parent() {
                    cfg.pattern = Some(dir.join(pattern));
                }
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(!self.n.is_empty(), "n grid is empty");
        ensure!(self.n.windows(2).all(|w| w[0] < w[1]), "n grid must be strictly ascending");
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(self.tau > 2.0 && self.tau < 3.0, "tau = {} not in (2, 3)", self.tau);
        ensure!(self.c > 0.0 && self.c.is_finite(), "c = {} must be positive", self.c);
        ensure!(
            self.window_epsilon > 0.0 && self.window_epsilon < 1.0,
            "window_epsilon = {} not in (0, 1)",
            self.window_epsilon
        );
        Ok(())
    }

    /// `model` followed by `models`, deduplicated in first-seen order.
    pub fn all_models(&self) -> Vec<Model> {
        let mut out = vec![self.model];
        for &m in &self.models {
            if !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// First 16 hex digits of SHA-256 over the canonical JSON form.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    fn trial_seed(&self, trial: usize) -> u64 {
        self.seed.wrapping_add(trial as u64)
    }

    fn sequence(&self, n: usize) -> Result<DegreeSequence> {
        Ok(build_powerlaw_sequence(&PowerLawSpec::new(n, self.tau, self.c)?)?)
    }

    fn load_pattern(&self) -> Result<Pattern> {
        let path = self.pattern.as_ref().context("config has no pattern path")?;
        read_pattern(path)
    }
}

pub fn read_pattern(path: &Path) -> Result<Pattern> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Pattern::from_text(&text)?)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::from_edge_list(&text)?)
}

/// One graph from `model` on the sequence `seq`.
pub fn sample_graph(model: Model, seq: &DegreeSequence, swap_budget: Option<u64>, seed: u64) -> Result<Graph> {
    Ok(match model.kernel() {
        None => {
            let swaps = swap_budget.unwrap_or_else(|| default_swap_budget(seq.edge_count()));
            switch_chain_sample(seq, swaps, seed)?
        }
        Some(kind) => sample_irg(&WeightVector::from_degrees(seq), kind, seed),
    })
}

fn write_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

/// Writes one edge list per `(n, trial)` into `dir` and returns the paths in
/// `(n, trial)` order.
pub fn run_generate(cfg: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut jobs = Vec::new();
    for &n in &cfg.n {
        let seq = cfg.sequence(n)?;
        for trial in 0..cfg.trials {
            jobs.push((n, seq.clone(), cfg.trial_seed(trial)));
        }
    }
    jobs.par_iter()
        .map(|(n, seq, seed)| {
            let g = sample_graph(cfg.model, seq, cfg.swap_budget, *seed)?;
            let path = dir.join(format!("{}_n{}_seed{}.edges", cfg.model.name(), n, seed));
            fs::write(&path, g.to_edge_list()).with_context(|| format!("writing {}", path.display()))?;
            Ok(path)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingRow {
    pub model: &'static str,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub count: u64,
    pub windowed_count: u64,
    pub build: &'static str,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingSummary {
    pub model: &'static str,
    /// Empty when some mean count is zero.
    pub fitted_slope: Option<f64>,
    pub predicted_exponent: f64,
    pub zero_counts: bool,
    pub seed: u64,
    pub build: &'static str,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub summary: ScalingSummary,
}

impl ScalingReport {
    pub fn rows_csv(&self) -> Result<String> {
        write_csv(&self.rows)
    }

    pub fn summary_csv(&self) -> Result<String> {
        write_csv(std::slice::from_ref(&self.summary))
    }
}

/// Counts the config pattern (total and inside the optimal degree window) on
/// every `(n, trial)` graph and fits the growth exponent of the mean count.
pub fn run_scaling(cfg: &ExperimentConfig) -> Result<ScalingReport> {
    cfg.validate()?;
    let pattern = cfg.load_pattern()?;
    let optimum = optimize_partitions(&pattern, cfg.tau);
    let alpha = urg_subgraphs::optimizer::alpha_from_partition(&pattern, optimum.best(), cfg.tau)?;
    let hash = cfg.hash();

    let mut jobs = Vec::new();
    for &n in &cfg.n {
        let seq = cfg.sequence(n)?;
        for trial in 0..cfg.trials {
            jobs.push((n, trial, seq.clone()));
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(n, trial, seq)| {
            let seed = cfg.trial_seed(*trial);
            let g = sample_graph(cfg.model, seq, cfg.swap_budget, seed)?;
            let window = DegreeWindow::from_assignment(&alpha, cfg.window_epsilon, g.mean_degree())?;
            Ok(ScalingRow {
                model: cfg.model.name(),
                n: *n,
                trial: *trial,
                seed,
                count: count_induced_exact(&g, &pattern)?.labeled_count,
                windowed_count: count_induced_windowed(&g, &pattern, &window)?.labeled_count,
                build: BUILD_ID,
                config_hash: hash.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let means: Vec<(f64, f64)> = cfg
        .n
        .iter()
        .map(|&n| {
            let total: u64 = rows.iter().filter(|r| r.n == n).map(|r| r.count).sum();
            (n as f64, total as f64 / cfg.trials as f64)
        })
        .collect();
    let zero_counts = means.iter().any(|&(_, m)| m == 0.0);
    let fitted_slope = if zero_counts { None } else { fit_scaling(&means).ok() };
    Ok(ScalingReport {
        rows,
        summary: ScalingSummary {
            model: cfg.model.name(),
            fitted_slope,
            predicted_exponent: optimum.exponent,
            zero_counts,
            seed: cfg.seed,
            build: BUILD_ID,
            config_hash: hash,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictJson {
    pub outcome: &'static str,
    pub attempts: usize,
    pub v_prime: usize,
    pub w_prime: usize,
    pub windows_overlap: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found_vertices: Option<[usize; 6]>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        let found_vertices = match v.outcome {
            urg_subgraphs::Outcome::Found(t) => Some(t),
            urg_subgraphs::Outcome::Fail => None,
        };
        Self {
            outcome: if found_vertices.is_some() { "found" } else { "fail" },
            attempts: v.attempts_used,
            v_prime: v.high_count,
            w_prime: v.low_count,
            windows_overlap: v.windows_overlap,
            found_vertices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRow {
    pub model: &'static str,
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub outcome: &'static str,
    pub attempts: usize,
    pub v_prime: usize,
    pub w_prime: usize,
    pub windows_overlap: bool,
    pub build: &'static str,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    pub model: &'static str,
    pub n: usize,
    pub found: usize,
    pub trials: usize,
    pub found_rate: f64,
    /// Per-attempt success probability at the window centres.
    pub attempt_probability: f64,
    /// URG attempt probability over this model's.
    pub urg_ratio: f64,
    pub seed: u64,
    pub build: &'static str,
    pub config_hash: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkReport {
    pub verdicts: Vec<VerdictRow>,
    pub rates: Vec<RateRow>,
}

impl BenchmarkReport {
    pub fn verdicts_csv(&self) -> Result<String> {
        write_csv(&self.verdicts)
    }

    pub fn rates_csv(&self) -> Result<String> {
        write_csv(&self.rates)
    }
}

/// Runs the distinguisher on `trials` graphs per model and `n`, then reports
/// find-rates next to the analytic per-attempt probabilities.
pub fn run_distinguish_benchmark(cfg: &ExperimentConfig) -> Result<BenchmarkReport> {
    cfg.validate()?;
    let models = cfg.all_models();
    if !models.contains(&Model::Urg)
        || !(models.contains(&Model::IrgChungLu) || models.contains(&Model::IrgExponential))
    {
        bail!("benchmark needs urg and at least one of irg_chung_lu, irg_exponential");
    }
    let hash = cfg.hash();
    let mut jobs = Vec::new();
    for &n in &cfg.n {
        let seq = cfg.sequence(n)?;
        for &model in &models {
            for trial in 0..cfg.trials {
                jobs.push((model, n, trial, seq.clone()));
            }
        }
    }
    let verdicts = jobs
        .par_iter()
        .map(|(model, n, trial, seq)| {
            let seed = cfg.trial_seed(*trial);
            let g = sample_graph(*model, seq, cfg.swap_budget, seed)?;
            let algo = AlgorithmConfig { attempt_cap: cfg.attempt_cap, ..AlgorithmConfig::new(cfg.tau, seed) };
            let v = VerdictJson::from(&algorithm1(&g, &algo)?);
            Ok(VerdictRow {
                model: model.name(),
                n: *n,
                trial: *trial,
                seed,
                outcome: v.outcome,
                attempts: v.attempts,
                v_prime: v.v_prime,
                w_prime: v.w_prime,
                windows_overlap: v.windows_overlap,
                build: BUILD_ID,
                config_hash: hash.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rates = Vec::new();
    for &n in &cfg.n {
        let seq = cfg.sequence(n)?;
        let total = seq.total_degree() as f64;
        let profile = window_centre_profile(n, cfg.tau);
        let urg_p = attempt_success_probability(EdgeModel::Urg, &profile, total)?;
        for &model in &models {
            let found = verdicts.iter().filter(|v| v.n == n && v.model == model.name() && v.outcome == "found").count();
            let p = attempt_success_probability(model.edge_model(), &profile, total)?;
            rates.push(RateRow {
                model: model.name(),
                n,
                found,
                trials: cfg.trials,
                found_rate: found as f64 / cfg.trials as f64,
                attempt_probability: p,
                urg_ratio: urg_p / p,
                seed: cfg.seed,
                build: BUILD_ID,
                config_hash: hash.clone(),
            });
        }
    }
    Ok(BenchmarkReport { verdicts, rates })
}
