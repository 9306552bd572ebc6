//! Elementary building blocks: indicator-inverse estimation, deterministic
//! edge extraction, IS-only edge enumeration, the brute-force sampler, and
//! the loneliness/starness event machinery shared by both full samplers.

use crate::graph::Edge;
use crate::oracle::{OracleSession, VertexSet};

/// Result of one sampler invocation: a concrete edge or an explicit Reject.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleOutcome {
    Edge(Edge),
    Reject,
}

impl SampleOutcome {
    pub fn edge(&self) -> Option<Edge> {
        match self {
            SampleOutcome::Edge(e) => Some(*e),
            SampleOutcome::Reject => None,
        }
    }

    pub fn is_reject(&self) -> bool {
        matches!(self, SampleOutcome::Reject)
    }
}

impl From<Option<Edge>> for SampleOutcome {
    fn from(o: Option<Edge>) -> Self {
        match o {
            Some(e) => SampleOutcome::Edge(e),
            None => SampleOutcome::Reject,
        }
    }
}

/// Parameters of the indicator-inverse filter.
///
/// `c` is the constant inside `ln(c/eps)`. The default of 4 keeps
/// `(e/c)·eps ≤ 1 − e^{−eps}` for all `eps ≤ 1/3`, which the accuracy
/// guarantee needs; it is configurable for sensitivity studies.
#[derive(Clone, Copy, Debug)]
pub struct IndicatorInvParams {
    pub eps: f64,
    pub rho: f64,
    pub c: f64,
}

pub const DEFAULT_C: f64 = 4.0;

impl IndicatorInvParams {
    pub fn new(eps: f64, rho: f64) -> Self {
        Self::with_c(eps, rho, DEFAULT_C)
    }

    pub fn with_c(eps: f64, rho: f64, c: f64) -> Self {
        assert!(eps > 0.0 && eps <= 1.0, "eps out of (0,1]: {eps}");
        assert!(rho > 0.0 && rho <= 1.0, "rho out of (0,1]: {rho}");
        let p = IndicatorInvParams { eps, rho, c };
        assert!(p.c_prime() > 0.0, "ln(c/eps) must be positive");
        assert!(p.n_max() >= 1);
        p
    }

    /// C' = ln(c / eps).
    pub fn c_prime(&self) -> f64 {
        (self.c / self.eps).ln()
    }

    /// Worst-case number of event invocations, floor(C'/rho).
    pub fn n_max(&self) -> u64 {
        (self.c_prime() / self.rho).floor() as u64
    }
}

/// Draws the event until its first accept (or `n_max` tries) and converts
/// the try count `N` into one output bit with mean `min{N·rho/C', 1}`.
/// If the event probability is at least `rho`, the output mean is within
/// `e^{±eps}` of `rho / (p_event · ln(c/eps))`.
pub fn estimate_indicator_inverse<F>(
    s: &mut OracleSession,
    mut event: F,
    params: &IndicatorInvParams,
) -> bool
where
    F: FnMut(&mut OracleSession) -> bool,
{
    let c_prime = params.c_prime();
    let n_max = params.n_max();
    let mut n = 0u64;
    while n < n_max {
        n += 1;
        if event(s) {
            break;
        }
    }
    s.coin((n as f64 * params.rho / c_prime).min(1.0))
}

/// Deterministically extracts one induced edge of `set`, or returns `None`
/// if `set` is independent. Halving is fixed: the lower half (in sorted
/// vertex order) takes the ceiling. Costs at most `2·ceil(log2 |S|) + 3`
/// IS queries.
pub fn extract_edge(s: &mut OracleSession, set: &VertexSet) -> Option<Edge> {
    if set.len() <= 1 {
        return None;
    }
    if s.query_is(set) {
        return None;
    }
    let (s1, s2) = set.split_half();
    if !s.query_is(&s1) {
        return extract_edge(s, &s1);
    }
    if !s.query_is(&s2) {
        return extract_edge(s, &s2);
    }
    // Both halves independent: narrow each side to the single endpoint of a
    // crossing edge.
    let (mut s1, mut s2) = (s1, s2);
    while s1.len() > 1 {
        let (s11, s12) = s1.split_half();
        s1 = if s.query_is(&s11.union(&s2)) { s12 } else { s11 };
    }
    while s2.len() > 1 {
        let (s21, s22) = s2.split_half();
        s2 = if s.query_is(&s1.union(&s22)) { s21 } else { s22 };
    }
    Some(Edge::new(s1.as_slice()[0], s2.as_slice()[0]))
}

/// Enumerates the exact edge set using IS queries only.
///
/// Small graphs (n ≤ 64) are probed pairwise. Larger graphs are peeled:
/// extract an edge, discover every neighbor of one endpoint by set
/// splitting (an accept of IS({u} ∪ T) certifies that T holds no
/// u-neighbor), record those edges and drop the vertex.
pub fn enumerate_edges(s: &mut OracleSession) -> Vec<Edge> {
    let n = s.n();
    let mut edges = Vec::new();
    if n <= 64 {
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if !s.query_is(&VertexSet::from_ids([u, v])) {
                    edges.push(Edge { u, v });
                }
            }
        }
        return edges;
    }

    let mut active = VertexSet::from_ids(0..n as u32);
    while let Some(e) = extract_edge(s, &active) {
        let u = e.u;
        let rest = active.without(u);
        let mut neighbors = Vec::new();
        find_neighbors(s, u, &rest, &mut neighbors);
        for v in neighbors {
            edges.push(Edge::new(u, v));
        }
        active = rest;
    }
    edges.sort_unstable();
    edges
}

fn find_neighbors(s: &mut OracleSession, u: u32, t: &VertexSet, out: &mut Vec<u32>) {
    if t.is_empty() {
        return;
    }
    if s.query_is(&t.with(u)) {
        return; // no edges at all inside {u} ∪ T, hence no u-neighbor in T
    }
    if t.len() == 1 {
        // {u, v} rejecting means the edge u–v exists.
        out.push(t.as_slice()[0]);
        return;
    }
    let (a, b) = t.split_half();
    find_neighbors(s, u, &a, out);
    find_neighbors(s, u, &b, out);
}

/// Enumerates all edges, then returns one uniformly (or `None` on the empty
/// graph).
pub fn sample_edge_bruteforce(s: &mut OracleSession) -> Option<Edge> {
    let edges = enumerate_edges(s);
    if edges.is_empty() {
        return None;
    }
    let i = rand::Rng::gen_range(s.rng_mut(), 0..edges.len());
    Some(edges[i])
}

/// Accepts iff the pair {u,v} is lonely in `set`: no edge survives in
/// `set ∪ {v} \ {u}` nor in `set ∪ {u} \ {v}`. 1 or 2 IS queries
/// (short-circuit).
pub fn test_loneliness(s: &mut OracleSession, set: &VertexSet, u: u32, v: u32) -> bool {
    if !s.query_is(&set.with_without(v, u)) {
        return false; // a non-u edge exists
    }
    s.query_is(&set.with_without(u, v))
}

/// Density used by the lone-edge/star-vertex machinery, capped at 1 for
/// degenerate advice below 1/100.
fn sparse_density(m_tilde: f64) -> f64 {
    assert!(m_tilde > 0.0);
    (1.0 / (10.0 * m_tilde.sqrt())).min(1.0)
}

/// One Bernoulli draw whose mean is exactly the loneliness factor
/// L_{u,v}(m̃).
pub fn loneliness_event(s: &mut OracleSession, m_tilde: f64, u: u32, v: u32) -> bool {
    let p = sparse_density(m_tilde);
    let set = s.draw_bernoulli_subset(&[], p);
    test_loneliness(s, &set, u, v)
}

/// Returns each edge uv with probability exactly L_{u,v}(m̃) / (100·m̃).
pub fn sample_lone_edge(s: &mut OracleSession, m_tilde: f64) -> Option<Edge> {
    let p = sparse_density(m_tilde);
    let set = s.draw_bernoulli_subset(&[], p);
    if s.query_is(&set) {
        return None; // no edges
    }
    let e = extract_edge(s, &set).expect("non-independent set must yield an edge");
    if test_loneliness(s, &set, e.u, e.v) {
        Some(e)
    } else {
        None // more than one edge in the set
    }
}

/// Accepts with the probability that `u` would be the star-vertex sample
/// when drawing the set `set ∪ {u}`: reject on non-u edges or on no edges;
/// a lone edge accepts with probability 1/2; two or more u-edges accept.
pub fn test_starness(s: &mut OracleSession, set: &VertexSet, u: u32) -> bool {
    if !s.query_is(set) {
        return false; // non-u edges exist
    }
    let su = set.with(u);
    if s.query_is(&su) {
        return false; // no edges at all
    }
    let wz = extract_edge(s, &su).expect("non-independent set must yield an edge");
    if test_loneliness(s, set, wz.u, wz.v) {
        s.coin(0.5) // a single edge
    } else {
        true // two or more edges, all adjacent to u
    }
}

/// One Bernoulli draw whose mean is exactly the starness factor S_u(m̃).
pub fn starness_event(s: &mut OracleSession, m_tilde: f64, u: u32) -> bool {
    let p = sparse_density(m_tilde);
    let set = s.draw_bernoulli_subset(&[], p);
    test_starness(s, &set, u)
}

/// Returns each vertex u with probability exactly S_u(m̃) / (10·√m̃).
pub fn sample_star_vertex(s: &mut OracleSession, m_tilde: f64) -> Option<u32> {
    let p = sparse_density(m_tilde);
    let set = s.draw_bernoulli_subset(&[], p);
    if s.query_is(&set) {
        return None; // no edges
    }
    let e = extract_edge(s, &set).expect("non-independent set must yield an edge");
    let (w, z) = if s.coin(0.5) { (e.u, e.v) } else { (e.v, e.u) };
    if s.query_is(&set.without(w)) {
        Some(w) // w covers every edge
    } else if s.query_is(&set.without(z)) {
        Some(z) // z covers every edge, which w does not
    } else {
        None
    }
}
