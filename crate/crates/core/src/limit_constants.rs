//! Limiting constant of sqrt(n)-regime induced counts and exact expected counts.
//!
//! For a pattern whose optimal placement puts every vertex at degree
//! `sqrt(n)`, the labeled induced count divided by `n^(k(3-tau)/2)` tends to
//!
//! ```text
//! A(H) = (C (tau-1) / mu^((tau-1)/2))^k
//!        * int_(0,inf)^k prod_i x_i^(-tau)
//!          prod_{ij in E} x_i x_j / (1 + x_i x_j)
//!          prod_{uv not in E} 1 / (1 + x_u x_v) dx
//! ```
//!
//! The integral is estimated by plain Monte Carlo on `(0,1)^k` after the
//! substitution `x = (t / (1 - t))^g` with `g = 1 / (3 - tau)`. Near zero the
//! integrand of a vertex of pattern degree two behaves like `x^(2 - tau)`; the
//! exponent `g` makes the transformed integrand bounded there, so the sample
//! variance is finite.

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::census::DegreeWindow;
use crate::degree_model::DegreeSequence;
use crate::error::{Error, Result};
use crate::optimizer::{optimize_partitions, PartitionAssignment};
use crate::pattern::Pattern;

pub const MIN_SAMPLES: u64 = 10_000;
const BLOCK: u64 = 1 << 16;
const COMPRESSED_TERM_LIMIT: f64 = 1e7;
const DIRECT_TERM_LIMIT: f64 = 1e9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Streaming mean / sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Moments { count, mean, m2 }
    }

    fn estimate(self, scale: f64) -> IntegralEstimate {
        let var = if self.count > 1 { self.m2 / (self.count - 1) as f64 } else { 0.0 };
        IntegralEstimate {
            mean: self.mean * scale,
            stderr: (var / self.count as f64).sqrt() * scale.abs(),
            samples: self.count,
        }
    }
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

/// Log of the integrand's pair factors given `ln x` per slot.
fn log_pair_factors(edges: &[(usize, usize)], non_edges: &[(usize, usize)], log_x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for &(i, j) in edges {
        acc -= softplus(-(log_x[i] + log_x[j]));
    }
    for &(u, v) in non_edges {
        acc -= softplus(log_x[u] + log_x[v]);
    }
    acc
}

/// Uniform draw from the open interval (0, 1).
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.gen::<u64>() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Checks the sqrt(n)-regime preconditions: pattern degree at least two and
/// a unique optimal placement with `B = 0` at all-`S3`.
pub fn check_sqrt_regime(p: &Pattern, tau: f64) -> Result<()> {
    if p.min_h_degree() < 2 {
        return Err(Error::PreconditionB(format!("minimum pattern degree is {}", p.min_h_degree())));
    }
    let opt = optimize_partitions(p, tau);
    if !opt.unique {
        return Err(Error::PreconditionB(format!("{} optimal placements", opt.maximizers.len())));
    }
    if opt.b.abs() > 1e-9 || *opt.best() != PartitionAssignment::all_sqrt(p) {
        return Err(Error::PreconditionB(format!("optimum B = {} at {:?}", opt.b, opt.best())));
    }
    Ok(())
}

fn prefactor(k: usize, tau: f64, c: f64, mu: f64) -> f64 {
    (c * (tau - 1.0) / mu.powf((tau - 1.0) / 2.0)).powi(k as i32)
}

fn validate_inputs(tau: f64, c: f64, mu: f64, samples: u64) -> Result<()> {
    if !(tau > 2.0 && tau < 3.0) {
        return Err(Error::InvalidSpec(format!("tau = {tau} not in (2, 3)")));
    }
    if !(c > 0.0 && mu > 0.0) {
        return Err(Error::InvalidSpec("C and mu must be positive".into()));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidSpec(format!("need at least {MIN_SAMPLES} samples")));
    }
    Ok(())
}

/// Runs `samples` draws split into fixed-size blocks, block `b` using stream
/// `b` of the master seed, and merges the blocks in order.
fn block_moments<F>(samples: u64, seed: u64, k: usize, draw: F) -> Moments
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) -> f64 + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let parts: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = BLOCK.min(samples - b * BLOCK);
            let mut scratch = vec![0.0; k];
            let mut m = Moments::default();
            for _ in 0..len {
                m.push(draw(&mut rng, &mut scratch));
            }
            m
        })
        .collect();
    parts.into_iter().fold(Moments::default(), Moments::merge)
}

/// Monte Carlo estimate of `A(H)` with tail constant `c` (`C` in the tail law)
/// and mean degree `mu`.
pub fn a_monte_carlo(p: &Pattern, tau: f64, c: f64, mu: f64, samples: u64, seed: u64) -> Result<IntegralEstimate> {
    validate_inputs(tau, c, mu, samples)?;
    check_sqrt_regime(p, tau)?;
    let k = p.k();
    let (edges, non_edges) = (p.edges(), p.non_edges());
    let g = 1.0 / (3.0 - tau);
    let log_g = g.ln();
    let moments = block_moments(samples, seed, k, |rng, log_x| {
        let mut log_f = 0.0;
        for lx in log_x.iter_mut() {
            let t = open_unit(rng);
            let log_one_minus = (-t).ln_1p();
            let log_s = t.ln() - log_one_minus;
            *lx = g * log_s;
            // x^(-tau) dx/dt with dx/dt = g s^(g-1) / (1-t)^2
            log_f += -tau * *lx + log_g + (g - 1.0) * log_s - 2.0 * log_one_minus;
        }
        (log_f + log_pair_factors(&edges, &non_edges, log_x)).exp()
    });
    Ok(moments.estimate(prefactor(k, tau, c, mu)))
}

/// Same integrand restricted to `[eps, 1/eps]^k`, sampled uniformly in `ln x`.
pub fn a_truncated(
    p: &Pattern,
    tau: f64,
    c: f64,
    mu: f64,
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    validate_inputs(tau, c, mu, samples)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidSpec(format!("eps = {eps} not in (0, 1]")));
    }
    check_sqrt_regime(p, tau)?;
    let k = p.k();
    let half_width = -eps.ln();
    if half_width == 0.0 {
        return Ok(IntegralEstimate { mean: 0.0, stderr: 0.0, samples });
    }
    let (edges, non_edges) = (p.edges(), p.non_edges());
    let moments = block_moments(samples, seed, k, |rng, log_x| {
        let mut log_f = 0.0;
        for lx in log_x.iter_mut() {
            *lx = half_width * (2.0 * open_unit(rng) - 1.0);
            // x^(-tau) dx with dx = x du
            log_f += (1.0 - tau) * *lx;
        }
        (log_f + log_pair_factors(&edges, &non_edges, log_x)).exp()
    });
    let volume = (2.0 * half_width).powi(k as i32);
    Ok(moments.estimate(prefactor(k, tau, c, mu) * volume))
}

/// Probability-weight of one ordered tuple with the given degrees:
/// `prod_{edges} d_i d_j / (L + d_i d_j) * prod_{non-edges} L / (L + d_u d_v)`.
pub fn tuple_weight<T: Float>(p: &Pattern, degrees: &[T], total: T) -> T {
    let mut w = T::one();
    for i in 0..p.k() {
        for j in i + 1..p.k() {
            w = w * pair_factor(p.has_edge(i, j), degrees[i], degrees[j], total);
        }
    }
    w
}

fn pair_factor<T: Float>(edge: bool, a: T, b: T, total: T) -> T {
    let prod = a * b;
    if edge {
        prod / (total + prod)
    } else {
        total / (total + prod)
    }
}

type SlotFilter<'a> = Box<dyn Fn(usize) -> bool + Sync + 'a>;

/// Per-slot admissible degree predicate.
fn slot_filter<'a>(
    p: &Pattern,
    n: usize,
    window: Option<&'a DegreeWindow>,
) -> Result<Vec<SlotFilter<'a>>> {
    if let Some(w) = window {
        if w.alpha.len() != p.k() {
            return Err(Error::InvalidSpec(format!("window has {} slots, pattern {}", w.alpha.len(), p.k())));
        }
    }
    Ok((0..p.k())
        .map(|slot| -> SlotFilter<'a> {
            match window {
                Some(w) => Box::new(move |d| w.contains(slot, d, n)),
                None => Box::new(|_| true),
            }
        })
        .collect())
}

/// Sum of [`tuple_weight`] over ordered tuples of distinct vertices whose
/// slot degrees lie in `window` (all tuples when `None`).
///
/// Degrees are compressed to `(value, multiplicity)` pairs and the sum runs
/// over value combinations weighted by falling factorials. When that needs
/// more than `10^7` terms the vertex-level sum is used instead, if it is at
/// most `10^9` terms.
pub fn expected_count<T: Float + Send + Sync>(
    seq: &DegreeSequence,
    p: &Pattern,
    window: Option<&DegreeWindow>,
) -> Result<T> {
    if p.k() > 6 {
        return Err(Error::InvalidPattern(format!("expected count supports k <= 6, got {}", p.k())));
    }
    let filters = slot_filter(p, seq.len(), window)?;
    let mut values: Vec<(usize, usize)> = Vec::new();
    let mut sorted = seq.degrees().to_vec();
    sorted.sort_unstable();
    for d in sorted {
        match values.last_mut() {
            Some((v, m)) if *v == d => *m += 1,
            _ => values.push((d, 1)),
        }
    }
    let per_slot: Vec<Vec<usize>> = filters
        .iter()
        .map(|f| (0..values.len()).filter(|&i| f(values[i].0)).collect())
        .collect();
    let compressed_terms = per_slot.iter().fold(1.0f64, |acc, s| acc * s.len() as f64);
    if compressed_terms <= COMPRESSED_TERM_LIMIT {
        return Ok(compressed_sum(p, seq.total_degree(), &values, &per_slot));
    }
    let per_slot_vertices: Vec<Vec<usize>> = filters
        .iter()
        .map(|f| (0..seq.len()).filter(|&v| f(seq.degrees()[v])).collect())
        .collect();
    let direct_terms = per_slot_vertices.iter().fold(1.0f64, |acc, s| acc * s.len() as f64);
    if direct_terms <= DIRECT_TERM_LIMIT {
        return Ok(direct_sum_over(p, seq, &per_slot_vertices));
    }
    Err(Error::TooManyDistinctValues { terms: compressed_terms })
}

/// Vertex-level reference sum behind [`expected_count`].
pub fn expected_count_direct<T: Float + Send + Sync>(
    seq: &DegreeSequence,
    p: &Pattern,
    window: Option<&DegreeWindow>,
) -> Result<T> {
    if p.k() > 6 {
        return Err(Error::InvalidPattern(format!("expected count supports k <= 6, got {}", p.k())));
    }
    let filters = slot_filter(p, seq.len(), window)?;
    let per_slot: Vec<Vec<usize>> =
        filters.iter().map(|f| (0..seq.len()).filter(|&v| f(seq.degrees()[v])).collect()).collect();
    Ok(direct_sum_over(p, seq, &per_slot))
}

fn compressed_sum<T: Float + Send + Sync>(
    p: &Pattern,
    total: u64,
    values: &[(usize, usize)],
    per_slot: &[Vec<usize>],
) -> T {
    let total = T::from(total).expect("finite");
    let degree: Vec<T> = values.iter().map(|&(d, _)| T::from(d).expect("finite")).collect();

    fn walk<T: Float>(
        p: &Pattern,
        total: T,
        degree: &[T],
        values: &[(usize, usize)],
        per_slot: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        acc: T,
    ) -> T {
        let slot = chosen.len();
        if slot == per_slot.len() {
            return acc;
        }
        let mut sum = T::zero();
        for &vi in &per_slot[slot] {
            let used = chosen.iter().filter(|&&c| c == vi).count();
            if used >= values[vi].1 {
                continue;
            }
            let mut w = acc * T::from(values[vi].1 - used).expect("finite");
            for (t, &ci) in chosen.iter().enumerate() {
                w = w * pair_factor(p.has_edge(t, slot), degree[ci], degree[vi], total);
            }
            chosen.push(vi);
            sum = sum + walk(p, total, degree, values, per_slot, chosen, w);
            chosen.pop();
        }
        sum
    }

    let parts: Vec<T> = per_slot[0]
        .par_iter()
        .map(|&vi| {
            let mut chosen = vec![vi];
            let w = T::from(values[vi].1).expect("finite");
            walk(p, total, &degree, values, per_slot, &mut chosen, w)
        })
        .collect();
    parts.into_iter().fold(T::zero(), |a, b| a + b)
}

fn direct_sum_over<T: Float + Send + Sync>(p: &Pattern, seq: &DegreeSequence, per_slot: &[Vec<usize>]) -> T {
    let total = T::from(seq.total_degree()).expect("finite");
    let degree: Vec<T> = seq.degrees().iter().map(|&d| T::from(d).expect("finite")).collect();

    fn walk<T: Float>(p: &Pattern, total: T, degree: &[T], per_slot: &[Vec<usize>], chosen: &mut Vec<usize>, acc: T) -> T {
        let slot = chosen.len();
        if slot == per_slot.len() {
            return acc;
        }
        let mut sum = T::zero();
        for &v in &per_slot[slot] {
            if chosen.contains(&v) {
                continue;
            }
            let mut w = acc;
            for (t, &u) in chosen.iter().enumerate() {
                w = w * pair_factor(p.has_edge(t, slot), degree[u], degree[v], total);
            }
            chosen.push(v);
            sum = sum + walk(p, total, degree, per_slot, chosen, w);
            chosen.pop();
        }
        sum
    }

    let parts: Vec<T> = per_slot[0]
        .par_iter()
        .map(|&v| walk(p, total, &degree, per_slot, &mut vec![v], T::one()))
        .collect();
    parts.into_iter().fold(T::zero(), |a, b| a + b)
}
