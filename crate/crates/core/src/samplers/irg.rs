use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::{KernelKind, WeightVector};
use crate::graph::Graph;

/// Samples a rank-1 inhomogeneous random graph in expected `O(n + m)` time.
///
/// Vertices are visited in decreasing weight order. For a fixed `u`, the
/// kernel probability towards later vertices is non-increasing, so the
/// current probability bounds all later ones: candidates are reached by a
/// geometric skip with that bound and then thinned by the exact ratio.
pub fn sample_irg(w: &WeightVector, kind: KernelKind, seed: u64) -> Graph {
    let n = w.len();
    let weights = w.weights();
    let total = w.total();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![Vec::new(); n];
    let prob = |a: usize, b: usize| kind.edge_probability(weights[a] * weights[b] / total);

    for (pos, &u) in order.iter().enumerate() {
        let mut next = pos + 1;
        while next < n {
            let bound = prob(u, order[next]);
            if bound <= 0.0 {
                break;
            }
            if bound < 1.0 {
                let uniform: f64 = 1.0 - rng.gen::<f64>();
                let skip = (uniform.ln() / (-bound).ln_1p()).floor();
                if skip >= (n - next) as f64 {
                    break;
                }
                next += skip as usize;
            }
            let v = order[next];
            let p = prob(u, v);
            if p >= bound || rng.gen::<f64>() * bound < p {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
            next += 1;
        }
    }
    Graph::from_unsorted_adjacency(adjacency)
}

/// Reference sampler: one Bernoulli trial per vertex pair, `O(n^2)`.
pub fn sample_irg_naive(w: &WeightVector, kind: KernelKind, seed: u64) -> Graph {
    let n = w.len();
    let weights = w.weights();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let p = kind.edge_probability(weights[u] * weights[v] / w.total());
            if rng.gen::<f64>() < p {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    Graph::from_unsorted_adjacency(adjacency)
}
