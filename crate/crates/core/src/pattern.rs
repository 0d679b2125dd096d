//! Small connected patterns (3 to 8 vertices) stored as bit rows.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const MIN_PATTERN_SIZE: usize = 3;
pub const MAX_PATTERN_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    k: usize,
    rows: [u8; MAX_PATTERN_SIZE],
    automorphisms: u64,
}

impl Pattern {
    /// Builds a connected pattern on `k` vertices. Repeated edges are merged.
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if !(MIN_PATTERN_SIZE..=MAX_PATTERN_SIZE).contains(&k) {
            return Err(Error::InvalidPattern(format!(
                "pattern size {k} outside {MIN_PATTERN_SIZE}..={MAX_PATTERN_SIZE}"
            )));
        }
        let mut rows = [0u8; MAX_PATTERN_SIZE];
        for &(u, v) in edges {
            if u >= k || v >= k {
                return Err(Error::InvalidPattern(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidPattern(format!("self-loop at {u}")));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        if !is_connected(k, &rows) {
            return Err(Error::InvalidPattern("pattern is not connected".into()));
        }
        let automorphisms = count_automorphisms(k, &rows);
        Ok(Self { k, rows, automorphisms })
    }

    pub fn triangle() -> Self {
        Self::complete(3).expect("valid")
    }

    pub fn complete(k: usize) -> Result<Self> {
        let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
        Self::new(k, &edges)
    }

    pub fn path(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
        Self::new(k, &edges)
    }

    pub fn cycle(k: usize) -> Result<Self> {
        let edges: Vec<_> = (0..k).map(|v| (v, (v + 1) % k)).collect();
        Self::new(k, &edges)
    }

    /// `K_{a,b}` with the `a`-side on vertices `0..a` and the `b`-side on `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::new(a + b, &edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn neighbor_mask(&self, i: usize) -> u8 {
        self.rows[i]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|u| (u + 1..self.k).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|u| (u + 1..self.k).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.h_degrees().iter().sum::<usize>() / 2
    }

    /// Degree of slot `i` inside the pattern.
    pub fn h_degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn h_degrees(&self) -> Vec<usize> {
        (0..self.k).map(|i| self.h_degree(i)).collect()
    }

    pub fn min_h_degree(&self) -> usize {
        (0..self.k).map(|i| self.h_degree(i)).min().unwrap_or(0)
    }

    /// Vertices of pattern degree one.
    pub fn degree_one_vertices(&self) -> Vec<usize> {
        (0..self.k).filter(|&i| self.h_degree(i) == 1).collect()
    }

    pub fn k1(&self) -> usize {
        self.degree_one_vertices().len()
    }

    pub fn k2plus(&self) -> usize {
        self.k - self.k1()
    }

    /// Number of vertex permutations preserving the edge set.
    pub fn automorphism_count(&self) -> u64 {
        self.automorphisms
    }

    /// The pattern with vertex `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.k || perm.iter().collect::<BTreeSet<_>>().len() != self.k {
            return Err(Error::InvalidPattern("relabeling is not a permutation".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.k, &edges)
    }

    /// Pattern file: first non-comment line holds `k`, then one `u v` edge per line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut k = None;
        let mut edges = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|e| Error::Parse { line: idx + 1, msg: format!("{tok:?}: {e}") })
            };
            let mut tokens = line.split_whitespace();
            match k {
                None => {
                    k = Some(parse(tokens.next().unwrap_or_default())?);
                }
                Some(_) => {
                    let u = parse(tokens.next().unwrap_or_default())?;
                    let v = parse(tokens.next().ok_or_else(|| Error::Parse {
                        line: idx + 1,
                        msg: "edge line needs two vertices".into(),
                    })?)?;
                    edges.push((u, v));
                }
            }
        }
        let k = k.ok_or_else(|| Error::Parse { line: 0, msg: "missing pattern size".into() })?;
        Self::new(k, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    fn edge_code(&self) -> u32 {
        edge_code(self.k, &self.rows, &identity(self.k))
    }
}

fn identity(k: usize) -> Vec<usize> {
    (0..k).collect()
}

fn is_connected(k: usize, rows: &[u8; MAX_PATTERN_SIZE]) -> bool {
    let full: u8 = if k == 8 { u8::MAX } else { (1u8 << k) - 1 };
    let mut seen = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0u8;
        for (v, row) in rows.iter().enumerate().take(k) {
            if frontier >> v & 1 == 1 {
                next |= row;
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen & full == full
}

/// Calls `visit` on every permutation of `0..k` (Heap's algorithm).
pub(crate) fn for_each_permutation(k: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut counters = vec![0usize; k];
    visit(&perm);
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            visit(&perm);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
}

fn count_automorphisms(k: usize, rows: &[u8; MAX_PATTERN_SIZE]) -> u64 {
    let mut count = 0;
    for_each_permutation(k, |perm| {
        let preserved = (0..k).all(|u| {
            (0..k).all(|v| (rows[u] >> v & 1) == (rows[perm[u]] >> perm[v] & 1))
        });
        if preserved {
            count += 1;
        }
    });
    count
}

/// Bit `index(u,v)` set iff `{perm[u], perm[v]}` is an edge.
fn edge_code(k: usize, rows: &[u8; MAX_PATTERN_SIZE], perm: &[usize]) -> u32 {
    let mut code = 0u32;
    let mut bit = 0;
    for u in 0..k {
        for v in u + 1..k {
            if rows[perm[u]] >> perm[v] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn canonical_code(k: usize, rows: &[u8; MAX_PATTERN_SIZE]) -> u32 {
    let mut best = u32::MAX;
    for_each_permutation(k, |perm| best = best.min(edge_code(k, rows, perm)));
    best
}

/// All connected patterns on `k` vertices up to isomorphism, `3 <= k <= 6`.
/// Each representative is the labeling with the smallest edge code.
pub fn connected_patterns(k: usize) -> Result<Vec<Pattern>> {
    if !(MIN_PATTERN_SIZE..=6).contains(&k) {
        return Err(Error::InvalidPattern(format!("catalog only covers 3..=6, got {k}")));
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut rows = [0u8; MAX_PATTERN_SIZE];
        for (bit, &(u, v)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        if !is_connected(k, &rows) {
            continue;
        }
        let canon = canonical_code(k, &rows);
        if canon == mask && seen.insert(canon) {
            let edges: Vec<_> =
                pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
            out.push(Pattern::new(k, &edges)?);
        }
    }
    debug_assert!(out.iter().all(|p| p.edge_code() == canonical_code(p.k, &p.rows)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: u64) -> u64 {
        (1..=k).product()
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(Pattern::triangle().automorphism_count(), 6);
        assert_eq!(Pattern::path(3).unwrap().automorphism_count(), 2);
        assert_eq!(Pattern::complete_bipartite(2, 4).unwrap().automorphism_count(), 48);
        assert_eq!(Pattern::cycle(5).unwrap().automorphism_count(), 10);
    }

    #[test]
    fn automorphisms_divide_factorial() {
        for k in 3..=5 {
            for p in connected_patterns(k).unwrap() {
                assert_eq!(factorial(k as u64) % p.automorphism_count(), 0);
                assert_eq!(p.k1() + p.k2plus(), k);
                assert!(p.min_h_degree() >= 1);
            }
        }
    }

    #[test]
    fn catalog_sizes() {
        let sizes: Vec<usize> = (3..=6).map(|k| connected_patterns(k).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 6, 21, 112]);
    }

    #[test]
    fn rejects_disconnected_and_bad_sizes() {
        assert!(Pattern::new(4, &[(0, 1), (2, 3)]).is_err());
        assert!(Pattern::new(2, &[(0, 1)]).is_err());
        assert!(Pattern::new(9, &[]).is_err());
        assert!(Pattern::new(3, &[(0, 0), (1, 2)]).is_err());
    }

    #[test]
    fn degree_one_bookkeeping() {
        let star = Pattern::complete_bipartite(1, 3).unwrap();
        assert_eq!(star.degree_one_vertices(), vec![1, 2, 3]);
        assert_eq!(star.k1(), 3);
        assert_eq!(star.k2plus(), 1);
    }

    #[test]
    fn pattern_text_round_trip() {
        let p = Pattern::complete_bipartite(2, 4).unwrap();
        let parsed = Pattern::from_text(&format!("# K24\n{}", p.to_text())).unwrap();
        assert_eq!(parsed, p);
        assert!(Pattern::from_text("3\n0 1\n").is_err());
    }

    #[test]
    fn permutation_enumeration_is_complete() {
        let mut seen = BTreeSet::new();
        for_each_permutation(5, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }
}
