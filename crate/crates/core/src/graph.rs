//! Immutable simple graphs with sorted adjacency lists.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate pairs collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_unsorted_adjacency(adjacency))
    }

    /// Sorts and deduplicates each list. Lists must already be symmetric
    /// and loop-free.
    pub(crate) fn from_unsorted_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Self { adjacency, edge_count: twice / 2 }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adjacency[u].len() <= self.adjacency[v].len() { (u, v) } else { (v, u) };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edge-list text: a `# n=<n>` header, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edge_count * 12 + 16);
        let _ = writeln!(out, "# n={}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses whitespace-separated `u v` lines; `#` starts a comment. The
    /// vertex count comes from a `# n=<n>` header when present, otherwise
    /// from the largest id seen.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let (content, comment) = match raw.split_once('#') {
                Some((c, rest)) => (c, Some(rest)),
                None => (raw, None),
            };
            if let Some(n) = comment
                .and_then(|c| c.trim().strip_prefix("n="))
                .and_then(|v| v.split_whitespace().next())
            {
                declared = Some(n.parse::<usize>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad vertex count: {e}"),
                })?);
            }
            let mut tokens = content.split_whitespace();
            let Some(first) = tokens.next() else { continue };
            let second = tokens.next().ok_or_else(|| Error::Parse {
                line: idx + 1,
                msg: "edge line needs two vertices".into(),
            })?;
            let parse = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse { line: idx + 1, msg: format!("{tok:?}: {e}") })
            };
            edges.push((parse(first)?, parse(second)?));
        }
        let seen = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Self::new(declared.unwrap_or(seen), &edges)
    }

    /// `L / n` of the realized degrees.
    pub fn mean_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.n() as f64
        }
    }
}

/// True iff `tuple[i] ~ tuple[j]` in `g` exactly when `{i, j}` is a pattern
/// edge, for every pair of slots.
pub fn induced_match_labeled(g: &Graph, tuple: &[usize], p: &Pattern) -> Result<bool> {
    if tuple.len() != p.k() {
        return Err(Error::InvalidPattern(format!(
            "tuple has {} vertices, pattern {}",
            tuple.len(),
            p.k()
        )));
    }
    for (i, &v) in tuple.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::OutOfRange { vertex: v, n: g.n() });
        }
        if tuple[..i].contains(&v) {
            return Err(Error::DuplicateVertex(v));
        }
    }
    Ok(matches_unchecked(g, tuple, p))
}

pub(crate) fn matches_unchecked(g: &Graph, tuple: &[usize], p: &Pattern) -> bool {
    let k = tuple.len();
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(tuple[i], tuple[j]) != p.has_edge(i, j) {
                return false;
            }
        }
    }
    true
}
