use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::degree_model::{is_graphical, DegreeSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Havel–Hakimi: repeatedly joins the vertex of largest residual degree to
/// the next-largest ones.
pub fn initial_realization(seq: &DegreeSequence) -> Result<Graph> {
    Ok(Graph::from_unsorted_adjacency(havel_hakimi(seq.degrees())?))
}

fn havel_hakimi(degrees: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !is_graphical(degrees) {
        return Err(Error::NotGraphical);
    }
    let n = degrees.len();
    let mut adjacency = vec![Vec::new(); n];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        degrees.iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, &d)| (d, Reverse(v))).collect();
    let mut taken = Vec::new();
    while let Some((d, Reverse(v))) = heap.pop() {
        taken.clear();
        for _ in 0..d {
            let (r, Reverse(u)) = heap.pop().ok_or(Error::NotGraphical)?;
            adjacency[v].push(u);
            adjacency[u].push(v);
            taken.push((r - 1, u));
        }
        for &(r, u) in &taken {
            if r > 0 {
                heap.push((r, Reverse(u)));
            }
        }
    }
    Ok(adjacency)
}

/// Proposed double-edge swaps used when no explicit budget is given:
/// `10 m ln m`.
pub fn default_swap_budget(edge_count: usize) -> u64 {
    if edge_count < 2 {
        return 0;
    }
    let m = edge_count as f64;
    (10.0 * m * m.ln()).ceil() as u64
}

fn key(u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a as u64) << 32 | b as u64
}

/// Degree-preserving double-edge-swap Markov chain over simple graphs.
///
/// Each step picks two distinct edges `{a,b}`, `{c,d}` uniformly and, by a
/// fair coin, proposes `{a,d},{c,b}` or `{a,c},{b,d}`. Proposals creating a
/// loop or a repeated edge are rejected.
#[derive(Debug, Clone)]
pub struct SwitchChain {
    n: usize,
    edges: Vec<(usize, usize)>,
    present: FxHashSet<u64>,
    rng: ChaCha8Rng,
    proposed: u64,
    accepted: u64,
}

impl SwitchChain {
    pub fn new(seq: &DegreeSequence, seed: u64) -> Result<Self> {
        Ok(Self::from_graph(&initial_realization(seq)?, seed))
    }

    pub fn from_graph(g: &Graph, seed: u64) -> Self {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let present = edges.iter().map(|&(u, v)| key(u, v)).collect();
        Self { n: g.n(), edges, present, rng: ChaCha8Rng::seed_from_u64(seed), proposed: 0, accepted: 0 }
    }

    /// Performs one proposal; returns whether it was accepted.
    pub fn step(&mut self) -> bool {
        let m = self.edges.len();
        if m < 2 {
            return false;
        }
        self.proposed += 1;
        let i = self.rng.gen_range(0..m);
        let mut j = self.rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        let (first, second) = if self.rng.gen::<bool>() { ((a, d), (c, b)) } else { ((a, c), (b, d)) };
        if first.0 == first.1 || second.0 == second.1 {
            return false;
        }
        let (k1, k2) = (key(first.0, first.1), key(second.0, second.1));
        if k1 == k2 || self.present.contains(&k1) || self.present.contains(&k2) {
            return false;
        }
        self.present.remove(&key(a, b));
        self.present.remove(&key(c, d));
        let fresh = self.present.insert(k1) & self.present.insert(k2);
        debug_assert!(fresh, "swap produced a multi-edge");
        debug_assert_eq!(self.present.len(), m);
        self.edges[i] = first;
        self.edges[j] = second;
        self.accepted += 1;
        true
    }

    pub fn run(&mut self, proposals: u64) {
        for _ in 0..proposals {
            self.step();
        }
    }

    pub fn proposed(&self) -> u64 {
        self.proposed
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn graph(&self) -> Graph {
        let mut adjacency = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Graph::from_unsorted_adjacency(adjacency)
    }
}

/// Runs `swaps` proposals from the Havel–Hakimi realization of `seq`.
pub fn switch_chain_sample(seq: &DegreeSequence, swaps: u64, seed: u64) -> Result<Graph> {
    let mut chain = SwitchChain::new(seq, seed)?;
    chain.run(swaps);
    Ok(chain.graph())
}
