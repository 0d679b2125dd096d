//! Labeled induced-subgraph counts.
//!
//! Counts are over ordered tuples `(v_1, ..., v_k)` of distinct vertices whose
//! induced subgraph equals the pattern under the identity labeling, so every
//! occurrence is counted once per pattern automorphism.

use num_rational::Ratio;
use num_traits::Float;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{matches_unchecked, Graph};
use crate::optimizer::AlphaAssignment;
use crate::pattern::{Pattern, MAX_PATTERN_SIZE};
use crate::scalar::Scalar;

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Per-slot admissible degrees `[eps (mu n)^alpha_i, (mu n)^alpha_i / eps]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeWindow {
    pub alpha: Vec<f64>,
    pub epsilon: f64,
    pub mu: f64,
}

impl DegreeWindow {
    pub fn new(alpha: Vec<f64>, epsilon: f64, mu: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidSpec(format!("window epsilon {epsilon} not in (0, 1)")));
        }
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidSpec(format!("window mu {mu} must be positive")));
        }
        if alpha.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::InvalidSpec("window exponents must be finite and non-negative".into()));
        }
        Ok(Self { alpha, epsilon, mu })
    }

    pub fn from_assignment<T: Scalar>(a: &AlphaAssignment<T>, epsilon: f64, mu: f64) -> Result<Self> {
        Self::new(a.values.iter().map(Scalar::to_f64_lossy).collect(), epsilon, mu)
    }

    /// Real-valued interval of each slot for a graph on `n` vertices.
    pub fn intervals(&self, n: usize) -> Vec<(f64, f64)> {
        let scale = self.mu * n as f64;
        self.alpha
            .iter()
            .map(|&a| {
                let centre = scale.powf(a);
                (self.epsilon * centre, centre / self.epsilon)
            })
            .collect()
    }

    pub fn contains(&self, slot: usize, degree: usize, n: usize) -> bool {
        let centre = (self.mu * n as f64).powf(self.alpha[slot]);
        let d = degree as f64;
        d >= self.epsilon * centre && d <= centre / self.epsilon
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub labeled_count: u64,
    /// `labeled_count / automorphism_count`.
    pub orbit_count: Ratio<u64>,
    /// Candidate vertices tested while extending partial matches.
    pub tuples_examined: u64,
    /// Set when some slot admits no vertex at all.
    pub empty_window: bool,
}

impl CensusResult {
    fn new(labeled: u64, examined: u64, p: &Pattern, empty_window: bool) -> Self {
        Self {
            labeled_count: labeled,
            orbit_count: Ratio::new(labeled, p.automorphism_count()),
            tuples_examined: examined,
            empty_window,
        }
    }
}

/// Search order with the per-position checks against earlier positions.
struct Plan {
    order: Vec<usize>,
    /// For position `s`: earlier positions and whether an edge is required.
    checks: Vec<Vec<(usize, bool)>>,
    /// For position `s > 0`: earlier positions adjacent in the pattern.
    anchors: Vec<Vec<usize>>,
    /// Inclusive degree bounds per position.
    bounds: Vec<(usize, usize)>,
}

impl Plan {
    /// Greedy order: highest pattern degree first, then the vertex with the
    /// most edges into the placed set.
    fn new(p: &Pattern, slot_bounds: &[(usize, usize)]) -> Self {
        let k = p.k();
        let mut order = Vec::with_capacity(k);
        let mut placed = 0u8;
        let first = (0..k).max_by_key(|&v| (p.h_degree(v), std::cmp::Reverse(v))).expect("k >= 3");
        order.push(first);
        placed |= 1 << first;
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| ((p.neighbor_mask(v) & placed).count_ones(), p.h_degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex exists");
            order.push(next);
            placed |= 1 << next;
        }
        let checks = (0..k)
            .map(|s| (0..s).map(|t| (t, p.has_edge(order[s], order[t]))).collect())
            .collect();
        let anchors = (0..k)
            .map(|s| (0..s).filter(|&t| p.has_edge(order[s], order[t])).collect())
            .collect();
        let bounds = order.iter().map(|&v| slot_bounds[v]).collect();
        Self { order, checks, anchors, bounds }
    }

    fn admits(&self, pos: usize, degree: usize) -> bool {
        let (lo, hi) = self.bounds[pos];
        degree >= lo && degree <= hi
    }

    fn count_from(&self, g: &Graph, root: usize) -> (u64, u64) {
        let mut mapped = [usize::MAX; MAX_PATTERN_SIZE];
        mapped[0] = root;
        let mut examined = 0;
        let count = self.extend(g, &mut mapped, 1, &mut examined);
        (count, examined)
    }

    fn extend(&self, g: &Graph, mapped: &mut [usize; MAX_PATTERN_SIZE], pos: usize, examined: &mut u64) -> u64 {
        if pos == self.order.len() {
            return 1;
        }
        let anchor = self.anchors[pos]
            .iter()
            .map(|&t| mapped[t])
            .min_by_key(|&v| g.degree(v))
            .expect("connected search order");
        let mut total = 0;
        for &cand in g.neighbors(anchor) {
            *examined += 1;
            if !self.admits(pos, g.degree(cand)) || mapped[..pos].contains(&cand) {
                continue;
            }
            let ok = self.checks[pos].iter().all(|&(t, edge)| {
                let other = mapped[t];
                other == anchor && edge || g.has_edge(cand, other) == edge
            });
            if ok {
                mapped[pos] = cand;
                total += self.extend(g, mapped, pos + 1, examined);
            }
        }
        mapped[pos] = usize::MAX;
        total
    }
}

fn run_plan(g: &Graph, p: &Pattern, slot_bounds: &[(usize, usize)]) -> (u64, u64) {
    let plan = Plan::new(p, slot_bounds);
    let roots: Vec<usize> = (0..g.n()).filter(|&v| plan.admits(0, g.degree(v))).collect();
    let (count, examined) = roots
        .par_iter()
        .map(|&v| plan.count_from(g, v))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    (count, examined + roots.len() as u64)
}

/// Exact labeled induced count by degree-ordered backtracking.
pub fn count_induced_exact(g: &Graph, p: &Pattern) -> Result<CensusResult> {
    if p.k() > g.n() {
        return Err(Error::PatternLargerThanGraph { k: p.k(), n: g.n() });
    }
    let bounds: Vec<(usize, usize)> = (0..p.k()).map(|v| (p.h_degree(v), usize::MAX)).collect();
    let (count, examined) = run_plan(g, p, &bounds);
    Ok(CensusResult::new(count, examined, p, false))
}

/// Labeled induced count restricted to tuples whose slot degrees lie in the
/// window. Returns zero with `empty_window` set when a slot admits no vertex.
pub fn count_induced_windowed(g: &Graph, p: &Pattern, w: &DegreeWindow) -> Result<CensusResult> {
    if p.k() > g.n() {
        return Err(Error::PatternLargerThanGraph { k: p.k(), n: g.n() });
    }
    if w.alpha.len() != p.k() {
        return Err(Error::InvalidSpec(format!("window has {} slots, pattern {}", w.alpha.len(), p.k())));
    }
    let bounds: Vec<(usize, usize)> = w
        .intervals(g.n())
        .into_iter()
        .enumerate()
        .map(|(slot, (lo, hi))| {
            let lo = (lo.ceil().max(0.0) as usize).max(p.h_degree(slot));
            let hi = if hi >= usize::MAX as f64 { usize::MAX } else { hi.floor() as usize };
            (lo, hi)
        })
        .collect();

    let mut present = vec![false; p.k()];
    for v in 0..g.n() {
        let d = g.degree(v);
        for (slot, &(lo, hi)) in bounds.iter().enumerate() {
            if d >= lo && d <= hi {
                present[slot] = true;
            }
        }
    }
    if present.iter().any(|&x| !x) {
        return Ok(CensusResult::new(0, 0, p, true));
    }
    let (count, examined) = run_plan(g, p, &bounds);
    Ok(CensusResult::new(count, examined, p, false))
}

/// Reference count over every ordered tuple of distinct vertices.
pub fn brute_force_count(g: &Graph, p: &Pattern) -> Result<u64> {
    if g.n() > BRUTE_FORCE_MAX_N {
        return Err(Error::GraphTooLarge { n: g.n(), max: BRUTE_FORCE_MAX_N });
    }
    fn walk(g: &Graph, p: &Pattern, tuple: &mut Vec<usize>) -> u64 {
        if tuple.len() == p.k() {
            return matches_unchecked(g, tuple, p) as u64;
        }
        let mut total = 0;
        for v in 0..g.n() {
            if !tuple.contains(&v) {
                tuple.push(v);
                total += walk(g, p, tuple);
                tuple.pop();
            }
        }
        total
    }
    Ok(walk(g, p, &mut Vec::with_capacity(p.k())))
}

/// Least-squares slope of `ln(count)` against `ln(n)`.
pub fn fit_scaling<T: Float>(points: &[(T, T)]) -> Result<T> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput(format!("need at least 3 points, got {}", points.len())));
    }
    if points.iter().any(|&(n, c)| !(n > T::zero() && c > T::zero())) {
        return Err(Error::DegenerateInput("sizes and counts must be positive".into()));
    }
    let len = T::from(points.len()).expect("small count");
    let xs: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1.ln()).collect();
    let mean_x = xs.iter().fold(T::zero(), |a, &b| a + b) / len;
    let mean_y = ys.iter().fold(T::zero(), |a, &b| a + b) / len;
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (&x, &y) in xs.iter().zip(&ys) {
        sxx = sxx + (x - mean_x) * (x - mean_x);
        sxy = sxy + (x - mean_x) * (y - mean_y);
    }
    if sxx <= T::zero() {
        return Err(Error::DegenerateInput("all sizes are equal".into()));
    }
    Ok(sxy / sxx)
}
