//! Degree-placement optimization for induced subgraphs.
//!
//! Every vertex of a pattern `H` of pattern degree at least two is placed in
//! one of three degree classes: `S1` (degrees near `n^((tau-2)/(tau-1))`),
//! `S2` (near `n^(1/(tau-1))`) or `S3` (near `sqrt(n)`). Degree-one vertices
//! stay at constant degree. The best placement maximizes
//!
//! ```text
//! B = |S1| + |S2| (2 - tau - k + |S1| + k1) / (tau - 1)
//!     - (2 E(S1) - 2 E(S2) + E(S1,S3) - E(S2,S3) + E(S1,V1) - E(S2,V1)) / (tau - 1)
//! ```
//!
//! and the induced count then grows like `n^((3-tau)/2 (k2+ + B) + k1/2)`.
//! The same optimum is reachable from the per-vertex exponent problem over
//! `alpha in {0, (tau-2)/(tau-1), 1/2, 1/(tau-1)}^k`, which is implemented
//! separately in [`optimize_grid`] as an independent check.

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegreeClass {
    S1,
    S2,
    S3,
    /// Degree-one pattern vertex, kept at constant degree.
    Leaf,
}

/// A split of the pattern vertices of degree at least two into `S1`, `S2`, `S3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionAssignment {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub s3: Vec<usize>,
}

impl PartitionAssignment {
    pub fn new(mut s1: Vec<usize>, mut s2: Vec<usize>, mut s3: Vec<usize>) -> Self {
        s1.sort_unstable();
        s2.sort_unstable();
        s3.sort_unstable();
        Self { s1, s2, s3 }
    }

    /// Every non-leaf vertex in `S3`.
    pub fn all_sqrt(p: &Pattern) -> Self {
        let s3 = (0..p.k()).filter(|&v| p.h_degree(v) >= 2).collect();
        Self::new(Vec::new(), Vec::new(), s3)
    }

    /// Per-vertex classes; fails unless the three sets exactly cover the
    /// non-leaf vertices.
    pub fn classes(&self, p: &Pattern) -> Result<Vec<DegreeClass>> {
        let mut classes = vec![None; p.k()];
        for (set, class) in [(&self.s1, DegreeClass::S1), (&self.s2, DegreeClass::S2), (&self.s3, DegreeClass::S3)] {
            for &v in set {
                if v >= p.k() {
                    return Err(Error::InvalidPartition(format!("vertex {v} not in pattern")));
                }
                if p.h_degree(v) == 1 {
                    return Err(Error::InvalidPartition(format!("degree-one vertex {v} placed in a set")));
                }
                if classes[v].replace(class).is_some() {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two sets")));
                }
            }
        }
        (0..p.k())
            .map(|v| match classes[v] {
                Some(c) => Ok(c),
                None if p.h_degree(v) == 1 => Ok(DegreeClass::Leaf),
                None => Err(Error::InvalidPartition(format!("vertex {v} not covered"))),
            })
            .collect()
    }

    fn from_classes(classes: &[DegreeClass]) -> Self {
        let pick = |c: DegreeClass| classes.iter().enumerate().filter(|(_, &x)| x == c).map(|(v, _)| v).collect();
        Self::new(pick(DegreeClass::S1), pick(DegreeClass::S2), pick(DegreeClass::S3))
    }
}

/// Per-vertex degree exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaAssignment<T> {
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult<T> {
    pub b: T,
    /// All optimal partitions, ordered by their base-3 encoding.
    pub maximizers: Vec<PartitionAssignment>,
    pub unique: bool,
    pub exponent: T,
}

impl<T: Scalar> OptimizationResult<T> {
    /// The first maximizer in encoding order.
    pub fn best(&self) -> &PartitionAssignment {
        &self.maximizers[0]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridOptimum<T> {
    pub value: T,
    pub maximizers: Vec<Vec<T>>,
    pub unique: bool,
}

fn objective_from_classes<T: Scalar>(p: &Pattern, classes: &[DegreeClass], tau: &T) -> T {
    use DegreeClass::*;
    let count = |c: DegreeClass| classes.iter().filter(|&&x| x == c).count() as i64;
    let (n_s1, n_s2) = (count(S1), count(S2));
    let k = p.k() as i64;
    let k1 = count(Leaf);

    // 2E(S1) - 2E(S2) + E(S1,S3) - E(S2,S3) + E(S1,V1) - E(S2,V1)
    let mut weighted_edges = 0i64;
    for (u, v) in p.edges() {
        let (a, b) = if classes[u] <= classes[v] { (classes[u], classes[v]) } else { (classes[v], classes[u]) };
        weighted_edges += match (a, b) {
            (S1, S1) => 2,
            (S2, S2) => -2,
            (S1, S3) | (S1, Leaf) => 1,
            (S2, S3) | (S2, Leaf) => -1,
            _ => 0,
        };
    }
    let tau_minus_one = tau.clone() - T::one();
    let bracket = T::from_int(2 - k + n_s1 + k1) - tau.clone();
    T::from_int(n_s1) + T::from_int(n_s2) * bracket / tau_minus_one.clone()
        - T::from_int(weighted_edges) / tau_minus_one
}

/// Value of the placement objective for one partition.
pub fn partition_objective<T: Scalar>(p: &Pattern, part: &PartitionAssignment, tau: T) -> Result<T> {
    let classes = part.classes(p)?;
    Ok(objective_from_classes(p, &classes, &tau))
}

/// Exhaustive search over all `3^{k2+}` partitions.
pub fn optimize_partitions<T: Scalar>(p: &Pattern, tau: T) -> OptimizationResult<T> {
    let movable: Vec<usize> = (0..p.k()).filter(|&v| p.h_degree(v) >= 2).collect();
    let total = 3usize.pow(movable.len() as u32);
    let mut classes = vec![DegreeClass::Leaf; p.k()];
    let mut values = Vec::with_capacity(total);
    for code in 0..total {
        let mut rest = code;
        for &v in &movable {
            classes[v] = match rest % 3 {
                0 => DegreeClass::S1,
                1 => DegreeClass::S2,
                _ => DegreeClass::S3,
            };
            rest /= 3;
        }
        values.push((objective_from_classes(p, &classes, &tau), classes.clone()));
    }
    let mut best = values[0].0.clone();
    for (v, _) in &values {
        if *v > best {
            best = v.clone();
        }
    }
    let maximizers: Vec<PartitionAssignment> = values
        .iter()
        .filter(|(v, _)| v.approx_eq(&best))
        .map(|(_, c)| PartitionAssignment::from_classes(c))
        .collect();
    let exponent = scaling_exponent(p, tau, best.clone());
    OptimizationResult { unique: maximizers.len() == 1, b: best, maximizers, exponent }
}

/// Exponent of each class: `S1 -> (tau-2)/(tau-1)`, `S2 -> 1/(tau-1)`,
/// `S3 -> 1/2`, degree-one vertices `-> 0`.
pub fn alpha_from_partition<T: Scalar>(
    p: &Pattern,
    part: &PartitionAssignment,
    tau: T,
) -> Result<AlphaAssignment<T>> {
    let classes = part.classes(p)?;
    let [zero, low, half, high] = grid_values(&tau);
    let values = classes
        .iter()
        .map(|c| match c {
            DegreeClass::S1 => low.clone(),
            DegreeClass::S2 => high.clone(),
            DegreeClass::S3 => half.clone(),
            DegreeClass::Leaf => zero.clone(),
        })
        .collect();
    Ok(AlphaAssignment { values })
}

/// `{0, (tau-2)/(tau-1), 1/2, 1/(tau-1)}` in increasing order.
pub fn grid_values<T: Scalar>(tau: &T) -> [T; 4] {
    let tau_minus_one = tau.clone() - T::one();
    [
        T::zero(),
        (tau.clone() - T::from_int(2)) / tau_minus_one.clone(),
        T::ratio(1, 2),
        T::one() / tau_minus_one,
    ]
}

/// `(1 - tau) sum(alpha) + sum over edges with alpha_i + alpha_j < 1 of
/// (alpha_i + alpha_j - 1) - sum over non-edges with alpha_u + alpha_v > 1
/// of (alpha_u + alpha_v - 1)`.
pub fn grid_objective<T: Scalar>(p: &Pattern, alphas: &[T], tau: T) -> Result<T> {
    if alphas.len() != p.k() {
        return Err(Error::InvalidPattern(format!("{} alphas for {} vertices", alphas.len(), p.k())));
    }
    let max = T::one() / (tau.clone() - T::one());
    for (slot, a) in alphas.iter().enumerate() {
        if *a < T::zero() || *a > max {
            return Err(Error::AlphaOutOfRange { slot, value: a.to_f64_lossy(), max: max.to_f64_lossy() });
        }
    }
    Ok(grid_objective_unchecked(p, alphas, &tau))
}

fn grid_objective_unchecked<T: Scalar>(p: &Pattern, alphas: &[T], tau: &T) -> T {
    let one = T::one();
    let mut sum_alpha = T::zero();
    for a in alphas {
        sum_alpha = sum_alpha + a.clone();
    }
    let mut value = (one.clone() - tau.clone()) * sum_alpha;
    let k = p.k();
    for i in 0..k {
        for j in i + 1..k {
            let excess = alphas[i].clone() + alphas[j].clone() - one.clone();
            if p.has_edge(i, j) {
                if excess < T::zero() {
                    value = value + excess;
                }
            } else if excess > T::zero() {
                value = value - excess;
            }
        }
    }
    value
}

/// Exhaustive search of [`grid_objective`] over the four-value grid.
pub fn optimize_grid<T: Scalar>(p: &Pattern, tau: T) -> GridOptimum<T> {
    let grid = grid_values(&tau);
    let k = p.k();
    let total = 4usize.pow(k as u32);
    let mut alphas = vec![T::zero(); k];
    let mut scored = Vec::with_capacity(total);
    for code in 0..total {
        let mut rest = code;
        for a in alphas.iter_mut() {
            *a = grid[rest % 4].clone();
            rest /= 4;
        }
        scored.push((grid_objective_unchecked(p, &alphas, &tau), code));
    }
    let mut best = scored[0].0.clone();
    for (v, _) in &scored {
        if *v > best {
            best = v.clone();
        }
    }
    let maximizers: Vec<Vec<T>> = scored
        .iter()
        .filter(|(v, _)| v.approx_eq(&best))
        .map(|&(_, code)| {
            let mut rest = code;
            (0..k)
                .map(|_| {
                    let a = grid[rest % 4].clone();
                    rest /= 4;
                    a
                })
                .collect()
        })
        .collect();
    GridOptimum { unique: maximizers.len() == 1, value: best, maximizers }
}

/// Grid optimum predicted from the partition optimum `b`:
/// `(1 - tau) k / 2 + (3 - tau) / 2 * b + (tau - 2) / 2 * k1`.
pub fn grid_value_from_partition_optimum<T: Scalar>(p: &Pattern, tau: T, b: T) -> T {
    let half = T::ratio(1, 2);
    let k = T::from_int(p.k() as i64);
    let k1 = T::from_int(p.k1() as i64);
    (T::one() - tau.clone()) * k * half.clone()
        + (T::from_int(3) - tau.clone()) * half.clone() * b
        + (tau - T::from_int(2)) * half * k1
}

/// Growth exponent of the induced count: `(3 - tau)/2 (k2+ + b) + k1/2`.
pub fn scaling_exponent<T: Scalar>(p: &Pattern, tau: T, b: T) -> T {
    let half = T::ratio(1, 2);
    (T::from_int(3) - tau) * half.clone() * (T::from_int(p.k2plus() as i64) + b)
        + T::from_int(p.k1() as i64) * half
}
