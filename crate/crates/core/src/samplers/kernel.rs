use std::fmt;
use std::str::FromStr;

use num_traits::Float;

use crate::degree_model::DegreeSequence;
use crate::error::{Error, Result};

/// Connection kernels of the rank-1 inhomogeneous random graph, each a
/// function of `x = w_i w_j / (mu n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KernelKind {
    /// `min(x, 1)`
    ChungLu,
    /// `1 - exp(-x)`. The complement `exp(-x)` is the non-edge probability.
    Exponential,
    /// `x / (1 + x)`
    MaxEntropy,
}

impl KernelKind {
    pub const ALL: [KernelKind; 3] = [KernelKind::ChungLu, KernelKind::Exponential, KernelKind::MaxEntropy];

    /// Edge probability as a function of the scaled weight product `x >= 0`.
    pub fn edge_probability<T: Float>(self, x: T) -> T {
        match self {
            KernelKind::ChungLu => x.min(T::one()),
            KernelKind::Exponential => -(-x).exp_m1(),
            KernelKind::MaxEntropy => x / (x + T::one()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelKind::ChungLu => "chung_lu",
            KernelKind::Exponential => "exponential",
            KernelKind::MaxEntropy => "max_entropy",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chung_lu" | "chung-lu" => Ok(KernelKind::ChungLu),
            "exponential" | "exp" => Ok(KernelKind::Exponential),
            "max_entropy" | "max-entropy" => Ok(KernelKind::MaxEntropy),
            other => Err(Error::InvalidSpec(format!("unknown kernel {other:?}"))),
        }
    }
}

/// Kernel edge probability for weights `wi`, `wj` and total weight `mu_n`.
pub fn kernel_probability<T: Float>(kind: KernelKind, wi: T, wj: T, mu_n: T) -> Result<T> {
    let zero = T::zero();
    if !(wi > zero && wj > zero && mu_n > zero) {
        return Err(Error::NonPositiveInput);
    }
    Ok(kind.edge_probability(wi * wj / mu_n))
}

/// Leading-order edge probability between vertices of degrees `di`, `dj` in a
/// uniform simple graph with degree sum `total`: `di dj / (total + di dj)`.
pub fn urg_edge_probability<T: Float>(di: T, dj: T, total: T) -> T {
    let prod = di * dj;
    prod / (total + prod)
}

/// Positive vertex weights with their sum cached.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    total: f64,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::NonPositiveInput);
        }
        let total = weights.iter().sum();
        Ok(Self { weights, total })
    }

    /// Weights equal to the degrees, so both models share one tail law.
    pub fn from_degrees(seq: &DegreeSequence) -> Self {
        let weights: Vec<f64> = seq.degrees().iter().map(|&d| d as f64).collect();
        let total = seq.total_degree() as f64;
        Self { weights, total }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `mu n`, the sum of all weights.
    pub fn total(&self) -> f64 {
        self.total
    }
}
