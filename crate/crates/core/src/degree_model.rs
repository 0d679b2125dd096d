//! Deterministic power-law degree sequences.
//!
//! Degrees are laid out by rank: vertex `i` (0-based) receives
//! `ceil(c * (n / (i + 1))^(1/(tau - 1)))`, so the empirical tail
//! `#{v : d_v > j} / n` follows `c^(tau-1) * j^(1-tau)` without sampling noise.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Parameters of the deterministic quantile construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawSpec {
    pub n: usize,
    pub tau: f64,
    pub c: f64,
}

impl PowerLawSpec {
    pub fn new(n: usize, tau: f64, c: f64) -> Result<Self> {
        let spec = Self { n, tau, c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if !(self.tau > 2.0 && self.tau < 3.0) {
            return Err(Error::InvalidSpec(format!("tau = {} not in (2, 3)", self.tau)));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidSpec(format!("c = {} must be positive", self.c)));
        }
        Ok(())
    }

    /// The constant `C` of the tail law `1 - F(j) ~ C j^(1-tau)`, i.e. `c^(tau-1)`.
    pub fn tail_constant(&self) -> f64 {
        self.c.powf(self.tau - 1.0)
    }
}

/// Tail metadata carried by sequences built from a [`PowerLawSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailInfo {
    pub tau: f64,
    pub c: f64,
}

impl TailInfo {
    pub fn tail_constant(&self) -> f64 {
        self.c.powf(self.tau - 1.0)
    }
}

/// A graphical sequence of positive degrees with cached summary values.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    total: u64,
    max: usize,
    tail: Option<TailInfo>,
}

impl DegreeSequence {
    /// Validates positivity, even sum and the Erdős–Gallai condition.
    pub fn from_degrees(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidSpec("empty degree sequence".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidSpec("degrees must be at least 1".into()));
        }
        if !is_graphical(&degrees) {
            return Err(Error::NotGraphical);
        }
        Ok(Self::new_unchecked(degrees, None))
    }

    fn new_unchecked(degrees: Vec<usize>, tail: Option<TailInfo>) -> Self {
        let total = degrees.iter().map(|&d| d as u64).sum();
        let max = degrees.iter().copied().max().unwrap_or(0);
        Self { degrees, total, max, tail }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `L_n`, the sum of all degrees.
    pub fn total_degree(&self) -> u64 {
        self.total
    }

    /// Empirical mean degree `L_n / n`.
    pub fn mean_degree(&self) -> f64 {
        self.total as f64 / self.degrees.len() as f64
    }

    pub fn max_degree(&self) -> usize {
        self.max
    }

    pub fn tail(&self) -> Option<TailInfo> {
        self.tail
    }

    /// Number of edges of any realization.
    pub fn edge_count(&self) -> usize {
        (self.total / 2) as usize
    }

    /// One degree per line, preceded by a `#` header recording `n`, `tau`, `c`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.degrees.len() * 4 + 64);
        match self.tail {
            Some(t) => {
                let _ = writeln!(out, "# n={} tau={} c={}", self.degrees.len(), t.tau, t.c);
            }
            None => {
                let _ = writeln!(out, "# n={}", self.degrees.len());
            }
        }
        for d in &self.degrees {
            let _ = writeln!(out, "{d}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut degrees = Vec::new();
        let mut tau = None;
        let mut c = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                for field in comment.split_whitespace() {
                    if let Some((key, value)) = field.split_once('=') {
                        match key {
                            "tau" => tau = value.parse::<f64>().ok(),
                            "c" => c = value.parse::<f64>().ok(),
                            _ => {}
                        }
                    }
                }
                continue;
            }
            let d = line.parse::<usize>().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("bad degree {line:?}: {e}"),
            })?;
            degrees.push(d);
        }
        let mut seq = Self::from_degrees(degrees)?;
        if let (Some(tau), Some(c)) = (tau, c) {
            seq.tail = Some(TailInfo { tau, c });
        }
        Ok(seq)
    }
}

/// Erdős–Gallai test. Accepts any order and zero entries.
pub fn is_graphical(degrees: &[usize]) -> bool {
    let n = degrees.len();
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return false;
    }
    if degrees.iter().any(|&d| d >= n.max(1) && d > 0) {
        return false;
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    // suffix[i] = sum of sorted[i..]
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + sorted[i] as u64;
    }
    // at_least = #{i : sorted[i] >= k}, shrinks as k grows
    let mut at_least = n;
    let mut lhs = 0u64;
    for k in 1..=n {
        lhs += sorted[k - 1] as u64;
        while at_least > 0 && sorted[at_least - 1] < k {
            at_least -= 1;
        }
        let kk = k as u64;
        let rhs_tail = if at_least <= k {
            suffix[k]
        } else {
            (at_least - k) as u64 * kk + suffix[at_least]
        };
        if lhs > kk * (kk - 1) + rhs_tail {
            return false;
        }
    }
    true
}

fn rank_degree(spec: &PowerLawSpec, rank: usize) -> usize {
    let x = spec.c * (spec.n as f64 / rank as f64).powf(1.0 / (spec.tau - 1.0));
    // Guard against pow() landing a hair above an exact integer.
    let d = (x - 1e-9).ceil();
    d.max(1.0) as usize
}

fn fix_parity(degrees: &mut [usize]) {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        // Smallest degree sits at the last rank.
        if let Some(last) = degrees.last_mut() {
            *last += 1;
        }
    }
}

/// Builds the rank-ordered power-law sequence (vertex 0 has the largest degree).
pub fn build_powerlaw_sequence(spec: &PowerLawSpec) -> Result<DegreeSequence> {
    spec.validate()?;
    let mut degrees: Vec<usize> = (1..=spec.n).map(|rank| rank_degree(spec, rank)).collect();
    fix_parity(&mut degrees);
    if !is_graphical(&degrees) {
        degrees[0] -= 1;
        fix_parity(&mut degrees);
        if degrees[0] == 0 || !is_graphical(&degrees) {
            return Err(Error::NotGraphical);
        }
    }
    Ok(DegreeSequence::new_unchecked(
        degrees,
        Some(TailInfo { tau: spec.tau, c: spec.c }),
    ))
}

/// Limit of `L_n / n` for the quantile construction:
/// `1 + sum_{m >= 1} min(1, (c / m)^(tau - 1))`.
pub fn limiting_mean_degree(tau: f64, c: f64) -> Result<f64> {
    PowerLawSpec::new(1, tau, c)?;
    const TERMS: usize = 1_000_000;
    let mut sum = 1.0;
    for m in (1..=TERMS).rev() {
        sum += (c / m as f64).powf(tau - 1.0).min(1.0);
    }
    // midpoint integral for the remaining terms
    let edge = TERMS as f64 + 0.5;
    if edge > c {
        sum += c.powf(tau - 1.0) * edge.powf(2.0 - tau) / (tau - 2.0);
    }
    Ok(sum)
}

/// Tightest constants `(K1, K2)` with `K1 j^(1-tau) <= P(D >= j) <= K2 j^(1-tau)`
/// over `j = 1..=d_max`, where `P(D >= j)` is the empirical fraction of
/// vertices with degree at least `j`.
pub fn validate_tail_bounds(seq: &DegreeSequence, tau: f64) -> (f64, f64) {
    let n = seq.len() as f64;
    let d_max = seq.max_degree();
    // count[d] = number of vertices with degree exactly d
    let mut count = vec![0usize; d_max + 2];
    for &d in seq.degrees() {
        count[d] += 1;
    }
    let mut k1 = f64::INFINITY;
    let mut k2 = 0.0f64;
    let mut at_least = 0usize;
    for j in (1..=d_max).rev() {
        at_least += count[j];
        let ratio = at_least as f64 / n * (j as f64).powf(tau - 1.0);
        k1 = k1.min(ratio);
        k2 = k2.max(ratio);
    }
    (k1, k2)
}
