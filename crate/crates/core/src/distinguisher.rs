//! Linear-time test separating uniform random graphs from rank-1
//! inhomogeneous ones by searching for an induced `K_{2,4}` whose 2-side has
//! degrees near `n^(1/(tau-1))` and whose 4-side has degrees near
//! `n^((tau-2)/(tau-1))`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{matches_unchecked, Graph};
use crate::pattern::Pattern;
use crate::samplers::{urg_edge_probability, KernelKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmConfig {
    pub tau: f64,
    /// Window half-width; `1 / ln n` when unset.
    pub epsilon_override: Option<f64>,
    /// Maximum number of (pair, 4-set) tests; `n` when unset.
    pub attempt_cap: Option<usize>,
    pub seed: u64,
}

impl AlgorithmConfig {
    pub fn new(tau: f64, seed: u64) -> Self {
        Self { tau, epsilon_override: None, attempt_cap: None, seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Vertices `[a, b, w1, w2, w3, w4]`: the 2-side first, then the 4-side.
    Found([usize; 6]),
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub attempts_used: usize,
    /// Vertices with degree in the high window.
    pub high_count: usize,
    /// Vertices with degree in the low window.
    pub low_count: usize,
    /// Set when the two windows intersect and vertices were split by the
    /// nearer window centre.
    pub windows_overlap: bool,
}

impl Verdict {
    pub fn found(&self) -> bool {
        matches!(self.outcome, Outcome::Found(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelLabel {
    UrgLike,
    IrgLike,
}

impl ModelLabel {
    pub fn name(self) -> &'static str {
        match self {
            ModelLabel::UrgLike => "URG-like",
            ModelLabel::IrgLike => "IRG-like",
        }
    }
}

/// Degree windows for a graph on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Windows {
    pub epsilon: f64,
    pub high_centre: f64,
    pub low_centre: f64,
    /// `[eps n^(1/(tau-1)), n^(1/(tau-1)) / eps]`
    pub high: (f64, f64),
    /// `[eps n^((tau-2)/(tau-1)), n^((tau-2)/(tau-1)) / eps]`
    pub low: (f64, f64),
}

impl Windows {
    pub fn new(n: usize, tau: f64, epsilon: Option<f64>) -> Result<Self> {
        if !(tau > 2.0 && tau < 3.0) {
            return Err(Error::InvalidSpec(format!("tau = {tau} not in (2, 3)")));
        }
        let nf = n as f64;
        let epsilon = epsilon.unwrap_or(1.0 / nf.ln());
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidSpec(format!("epsilon = {epsilon} not in (0, 1)")));
        }
        let high_centre = nf.powf(1.0 / (tau - 1.0));
        let low_centre = nf.powf((tau - 2.0) / (tau - 1.0));
        Ok(Self {
            epsilon,
            high_centre,
            low_centre,
            high: (high_centre * epsilon, high_centre / epsilon),
            low: (low_centre * epsilon, low_centre / epsilon),
        })
    }

    pub fn overlap(&self) -> bool {
        self.low.1 >= self.high.0
    }

    /// `Some(true)` for the high window, `Some(false)` for the low one.
    /// A degree in both goes to the centre nearer in log-degree.
    pub fn classify(&self, degree: usize) -> Option<bool> {
        let d = degree as f64;
        let in_high = d >= self.high.0 && d <= self.high.1;
        let in_low = d >= self.low.0 && d <= self.low.1;
        match (in_high, in_low) {
            (true, true) => {
                let ld = d.ln();
                Some((ld - self.high_centre.ln()).abs() < (ld - self.low_centre.ln()).abs())
            }
            (true, false) => Some(true),
            (false, true) => Some(false),
            (false, false) => None,
        }
    }
}

/// The witness pattern: `K_{2,4}` with the 2-side on slots 0 and 1.
pub fn witness_pattern() -> Pattern {
    Pattern::complete_bipartite(2, 4).expect("K_{2,4} is a valid pattern")
}

/// One degree scan, a random split of the high-window vertices into pairs and
/// of the low-window vertices into 4-sets, then pair-by-4-set tests in nested
/// order until a witness is found or the attempt cap is hit.
pub fn algorithm1(g: &Graph, cfg: &AlgorithmConfig) -> Result<Verdict> {
    let n = g.n();
    if n < 6 {
        return Err(Error::GraphTooSmall { n, min: 6 });
    }
    let windows = Windows::new(n, cfg.tau, cfg.epsilon_override)?;
    let cap = cfg.attempt_cap.unwrap_or(n);

    let mut high = Vec::new();
    let mut low = Vec::new();
    for v in 0..n {
        match windows.classify(g.degree(v)) {
            Some(true) => high.push(v),
            Some(false) => low.push(v),
            None => {}
        }
    }
    let mut verdict = Verdict {
        outcome: Outcome::Fail,
        attempts_used: 0,
        high_count: high.len(),
        low_count: low.len(),
        windows_overlap: windows.overlap(),
    };
    if cap == 0 {
        return Ok(verdict);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    high.shuffle(&mut rng);
    low.shuffle(&mut rng);
    let witness = witness_pattern();
    let mut tuple = [0usize; 6];
    for pair in high.chunks_exact(2) {
        for quad in low.chunks_exact(4) {
            verdict.attempts_used += 1;
            tuple[..2].copy_from_slice(pair);
            tuple[2..].copy_from_slice(quad);
            if matches_unchecked(g, &tuple, &witness) {
                verdict.outcome = Outcome::Found(tuple);
                return Ok(verdict);
            }
            if verdict.attempts_used == cap {
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

/// `URG-like` iff [`algorithm1`] finds a witness.
pub fn classify(g: &Graph, cfg: &AlgorithmConfig) -> Result<ModelLabel> {
    Ok(if algorithm1(g, cfg)?.found() { ModelLabel::UrgLike } else { ModelLabel::IrgLike })
}

/// Edge model used by [`attempt_success_probability`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeModel {
    Urg,
    Kernel(KernelKind),
}

/// Probability that six vertices with the given degrees (weights) form the
/// witness with the 2-side on the first two: product of the 8 edge
/// probabilities and the 7 non-edge complements. `total` is `L_n` for the
/// uniform model and `mu n` for kernels.
pub fn attempt_success_probability(model: EdgeModel, profile: &[f64; 6], total: f64) -> Result<f64> {
    if profile.iter().any(|&d| d.is_nan() || d <= 0.0) || total.is_nan() || total <= 0.0 {
        return Err(Error::NonPositiveInput);
    }
    let edge = |a: f64, b: f64| match model {
        EdgeModel::Urg => urg_edge_probability(a, b, total),
        EdgeModel::Kernel(kind) => kind.edge_probability(a * b / total),
    };
    let witness = witness_pattern();
    let mut prob = 1.0;
    for i in 0..6 {
        for j in i + 1..6 {
            let p = edge(profile[i], profile[j]);
            prob *= if witness.has_edge(i, j) { p } else { 1.0 - p };
        }
    }
    Ok(prob)
}

/// Degrees at the two window centres: `n^(1/(tau-1))` twice, then
/// `n^((tau-2)/(tau-1))` four times.
pub fn window_centre_profile(n: usize, tau: f64) -> [f64; 6] {
    let nf = n as f64;
    let high = nf.powf(1.0 / (tau - 1.0));
    let low = nf.powf((tau - 2.0) / (tau - 1.0));
    [high, high, low, low, low, low]
}
