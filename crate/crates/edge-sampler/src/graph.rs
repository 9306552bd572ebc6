//! Ground-truth graph representation, generators, file ingestion and relabeling.
//!
//! A [`GraphInstance`] is immutable after construction. Algorithm code never
//! touches it directly; all access goes through an oracle session.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An undirected edge, normalized so that `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
}

impl Edge {
    /// Builds a normalized edge. Panics on a self-loop: edges of that form
    /// never exist in a valid graph and indicate a caller bug.
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a != b, "self-loop {a}-{b}");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: u32) -> u32 {
        if x == self.u {
            self.v
        } else if x == self.v {
            self.u
        } else {
            panic!("vertex {x} is not an endpoint of {self:?}")
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("malformed line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("vertex id {id} out of range (n = {n})")]
    VertexOutOfRange { id: u32, n: usize },
    #[error("declared m = {declared} but found {found} distinct edges")]
    CountMismatch { declared: usize, found: usize },
    #[error("infeasible parameters for family {family}: {reason}")]
    InfeasibleParams { family: String, reason: String },
    #[error("permutation is not a bijection on 0..{0}")]
    NotAPermutation(usize),
}

const WORD_BITS: usize = 64;

/// The hidden ground-truth graph: adjacency lists (sorted ascending, which
/// fixes the neighbor-oracle indexing), a row-major adjacency bitset for fast
/// induced-edge checks, and the edge list.
#[derive(Clone)]
pub struct GraphInstance {
    n: usize,
    m: usize,
    adj: Vec<Vec<u32>>,
    /// Row-major adjacency matrix; row `v` occupies `words_per_row` words.
    bits: Vec<u64>,
    words_per_row: usize,
    edges: Vec<Edge>,
}

impl fmt::Debug for GraphInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphInstance(n={}, m={})", self.n, self.m)
    }
}

impl GraphInstance {
    /// Builds a graph from an edge list. Edges may appear in any order but
    /// must be distinct, non-loop and within range.
    pub fn from_edges(n: usize, edge_list: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut edges: Vec<Edge> = Vec::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for id in [a, b] {
                if id as usize >= n {
                    return Err(GraphError::VertexOutOfRange { id, n });
                }
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.len() != before {
            // Callers that tolerate duplicates dedup before calling.
            return Err(GraphError::CountMismatch {
                declared: before,
                found: edges.len(),
            });
        }
        Ok(Self::from_sorted_distinct(n, edges))
    }

    fn from_sorted_distinct(n: usize, edges: Vec<Edge>) -> Self {
        let words_per_row = n.div_ceil(WORD_BITS).max(1);
        let mut adj = vec![Vec::new(); n];
        let mut bits = vec![0u64; n * words_per_row];
        for e in &edges {
            adj[e.u as usize].push(e.v);
            adj[e.v as usize].push(e.u);
            let (u, v) = (e.u as usize, e.v as usize);
            bits[u * words_per_row + v / WORD_BITS] |= 1 << (v % WORD_BITS);
            bits[v * words_per_row + u / WORD_BITS] |= 1 << (u % WORD_BITS);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        GraphInstance {
            n,
            m: edges.len(),
            adj,
            bits,
            words_per_row,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in ascending vertex order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let (a, b) = (a as usize, b as usize);
        self.bits[a * self.words_per_row + b / WORD_BITS] >> (b % WORD_BITS) & 1 == 1
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    pub(crate) fn row(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.bits[v * self.words_per_row..(v + 1) * self.words_per_row]
    }

    /// Parses the `"n m"` header format: first line `n m`, then one `u v`
    /// line per edge.
    pub fn load_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lineno, header) = lines.next().ok_or_else(|| GraphError::Malformed {
            line: 0,
            reason: "empty input".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse = |tok: Option<&str>, lineno: usize| -> Result<usize, GraphError> {
            tok.and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| GraphError::Malformed {
                    line: lineno + 1,
                    reason: format!("expected two integers, got {header:?}"),
                })
        };
        let n = parse(parts.next(), lineno)?;
        let declared_m = parse(parts.next(), lineno)?;
        if parts.next().is_some() {
            return Err(GraphError::Malformed {
                line: lineno + 1,
                reason: "trailing tokens in header".into(),
            });
        }

        let mut edges = Vec::with_capacity(declared_m);
        for (lineno, line) in lines {
            let mut parts = line.split_whitespace();
            let mut field = || -> Result<u32, GraphError> {
                parts
                    .next()
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or_else(|| GraphError::Malformed {
                        line: lineno + 1,
                        reason: format!("expected two vertex ids, got {line:?}"),
                    })
            };
            let a = field()?;
            let b = field()?;
            if parts.next().is_some() {
                return Err(GraphError::Malformed {
                    line: lineno + 1,
                    reason: "trailing tokens".into(),
                });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for id in [a, b] {
                if id as usize >= n {
                    return Err(GraphError::VertexOutOfRange { id, n });
                }
            }
            edges.push(Edge::new(a, b));
        }
        edges.sort_unstable();
        edges.dedup();
        if edges.len() != declared_m {
            return Err(GraphError::CountMismatch {
                declared: declared_m,
                found: edges.len(),
            });
        }
        Ok(Self::from_sorted_distinct(n, edges))
    }

    /// Emits the same format `load_edge_list` parses, edges sorted.
    pub fn write_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }

    /// Applies a vertex relabeling: edge (u,v) maps to (perm[u], perm[v]).
    pub fn relabel(&self, perm: &[u32]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::NotAPermutation(self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || seen[p as usize] {
                return Err(GraphError::NotAPermutation(self.n));
            }
            seen[p as usize] = true;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.u as usize], perm[e.v as usize]))
            .collect();
        edges.sort_unstable();
        Ok(Self::from_sorted_distinct(self.n, edges))
    }

    /// Checks the structural invariants; used by tests and the harness.
    pub fn check_invariants(&self) {
        assert_eq!(self.m, self.edges.len());
        let degree_sum: usize = (0..self.n).map(|v| self.adj[v].len()).sum();
        assert_eq!(2 * self.m, degree_sum);
        for (i, e) in self.edges.iter().enumerate() {
            assert!(e.u < e.v, "edge not normalized: {e:?}");
            assert!((e.v as usize) < self.n);
            if i > 0 {
                assert!(self.edges[i - 1] < *e, "edges not sorted/distinct");
            }
        }
        for v in 0..self.n as u32 {
            let list = &self.adj[v as usize];
            for w in list.windows(2) {
                assert!(w[0] < w[1], "adjacency of {v} not sorted ascending");
            }
            for &u in list {
                assert!(self.has_edge(v, u));
                assert!(self.adj[u as usize].binary_search(&v).is_ok(), "asymmetric adjacency");
            }
        }
    }
}

/// Graph families used to exercise the different degree regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphFamily {
    Gnm,
    Clique,
    Star,
    Path,
    Biclique,
    CliquePlusBiclique,
    /// A clique with a path tail attached at one clique vertex.
    Lollipop,
    /// A clique and a disjoint star: one dense block, one high-degree hub.
    CliqueStar,
    Empty,
}

impl GraphFamily {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "gnm" => Self::Gnm,
            "clique" => Self::Clique,
            "star" => Self::Star,
            "path" => Self::Path,
            "biclique" => Self::Biclique,
            "clique_plus_biclique" => Self::CliquePlusBiclique,
            "lollipop" => Self::Lollipop,
            "clique_star" => Self::CliqueStar,
            "empty" => Self::Empty,
            _ => return None,
        })
    }
}

/// Deterministic generator: fixed (family, params, seed) yields a fixed graph.
///
/// Parameter conventions:
/// - `gnm`: `[n, m]`
/// - `clique`: `[k]` (n = k)
/// - `star`: `[centers, leaves]` — that many disjoint stars, so
///   `(star, [1, 6])` is K_{1,6}
/// - `path`: `[n]`
/// - `biclique`: `[a, b]`
/// - `clique_plus_biclique`: `[n, k, l, h]` (k-clique on 0..k, (l,h)-biclique
///   on the next l+h ids, singletons after)
/// - `lollipop`: `[k, t]` (k-clique on 0..k, path of t extra vertices hanging
///   off vertex k−1; n = k + t)
/// - `clique_star`: `[k, l]` (k-clique on 0..k, disjoint K_{1,l} centered at
///   k; n = k + l + 1)
/// - `empty`: `[n]`
pub fn generate(family: GraphFamily, params: &[usize], seed: u64) -> Result<GraphInstance, GraphError> {
    let err = |reason: &str| GraphError::InfeasibleParams {
        family: format!("{family:?}"),
        reason: reason.into(),
    };
    match family {
        GraphFamily::Empty => {
            let [n] = params else { return Err(err("expected [n]")) };
            Ok(GraphInstance::from_sorted_distinct(*n, Vec::new()))
        }
        GraphFamily::Clique => {
            let [k] = params else { return Err(err("expected [k]")) };
            let mut edges = Vec::new();
            for u in 0..*k as u32 {
                for v in u + 1..*k as u32 {
                    edges.push(Edge { u, v });
                }
            }
            Ok(GraphInstance::from_sorted_distinct(*k, edges))
        }
        GraphFamily::Star => {
            let [c, l] = params else { return Err(err("expected [centers, leaves]")) };
            let (c, l) = (*c, *l);
            if c == 0 {
                return Err(err("need at least one center"));
            }
            let n = c * (l + 1);
            let mut edges = Vec::new();
            for s in 0..c {
                let center = (s * (l + 1)) as u32;
                for i in 1..=l {
                    edges.push(Edge::new(center, center + i as u32));
                }
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(n, edges))
        }
        GraphFamily::Path => {
            let [n] = params else { return Err(err("expected [n]")) };
            let edges = (1..*n as u32).map(|v| Edge { u: v - 1, v }).collect();
            Ok(GraphInstance::from_sorted_distinct(*n, edges))
        }
        GraphFamily::Biclique => {
            let [a, b] = params else { return Err(err("expected [a, b]")) };
            let mut edges = Vec::new();
            for u in 0..*a as u32 {
                for v in 0..*b as u32 {
                    edges.push(Edge::new(u, *a as u32 + v));
                }
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(a + b, edges))
        }
        GraphFamily::CliquePlusBiclique => {
            let [n, k, l, h] = params else { return Err(err("expected [n, k, l, h]")) };
            let (n, k, l, h) = (*n, *k, *l, *h);
            if k + l + h > n {
                return Err(err("k + l + h exceeds n"));
            }
            let mut edges = Vec::new();
            for u in 0..k as u32 {
                for v in u + 1..k as u32 {
                    edges.push(Edge { u, v });
                }
            }
            for i in 0..l as u32 {
                for j in 0..h as u32 {
                    edges.push(Edge::new(k as u32 + i, (k + l) as u32 + j));
                }
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(n, edges))
        }
        GraphFamily::Lollipop => {
            let [k, t] = params else { return Err(err("expected [k, tail]")) };
            let (k, t) = (*k, *t);
            if k < 2 {
                return Err(err("clique head needs k >= 2"));
            }
            let mut edges = Vec::new();
            for u in 0..k as u32 {
                for v in u + 1..k as u32 {
                    edges.push(Edge { u, v });
                }
            }
            for i in 0..t as u32 {
                let prev = if i == 0 { k as u32 - 1 } else { k as u32 + i - 1 };
                edges.push(Edge::new(prev, k as u32 + i));
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(k + t, edges))
        }
        GraphFamily::CliqueStar => {
            let [k, l] = params else { return Err(err("expected [k, leaves]")) };
            let (k, l) = (*k, *l);
            if k < 2 || l == 0 {
                return Err(err("need k >= 2 and at least one leaf"));
            }
            let mut edges = Vec::new();
            for u in 0..k as u32 {
                for v in u + 1..k as u32 {
                    edges.push(Edge { u, v });
                }
            }
            let center = k as u32;
            for i in 1..=l as u32 {
                edges.push(Edge::new(center, center + i));
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(k + l + 1, edges))
        }
        GraphFamily::Gnm => {
            let [n, m] = params else { return Err(err("expected [n, m]")) };
            let (n, m) = (*n, *m);
            let max_m = n.saturating_mul(n.saturating_sub(1)) / 2;
            if m > max_m {
                return Err(err("m exceeds n(n-1)/2"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges: Vec<Edge> = Vec::with_capacity(m);
            let mut chosen = std::collections::HashSet::with_capacity(m * 2);
            // Rejection of duplicate pairs; fine at desk scale (m well below
            // the total pair count in every test configuration).
            while edges.len() < m {
                let a = rng.gen_range(0..n as u32);
                let b = rng.gen_range(0..n as u32);
                if a == b {
                    continue;
                }
                let e = Edge::new(a, b);
                if chosen.insert((e.u, e.v)) {
                    edges.push(e);
                }
            }
            edges.sort_unstable();
            Ok(GraphInstance::from_sorted_distinct(n, edges))
        }
    }
}
