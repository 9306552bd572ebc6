//! Hard instance pair for sampling lower bounds: a clique-plus-singletons
//! graph G and its superset H that hides an additional biclique. A sampler
//! whose output is near-uniform must put noticeable mass on the biclique
//! edges of H, which makes randomly relabeled G and H distinguishable —
//! the effect the experiment here measures.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::advice::AdviceProvider;
use crate::graph::{Edge, GraphError, GraphInstance};
use crate::hybrid::sample_edge_hyb;
use crate::is_model::sample_edge_is;
use crate::oracle::OracleSession;
use crate::rng::child_seed;
use crate::Model;

/// Derived sizes of the instance pair for a given (n, m).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LowerBoundParams {
    pub n: usize,
    pub m: usize,
    /// Clique size floor(√m).
    pub k: usize,
    /// Biclique edge budget m − C(k,2).
    pub mprime: usize,
    /// High side of the biclique, ceil(2m′/n).
    pub h: usize,
    /// Low side of the biclique, ceil(m′/h).
    pub ell: usize,
}

impl LowerBoundParams {
    pub fn new(n: usize, m: usize) -> Result<Self, GraphError> {
        if n < 16 || m < 9 || 16 * m > n * n {
            return Err(GraphError::InfeasibleParams {
                family: "lower-bound pair".into(),
                reason: format!("need n >= 16 and 9 <= m <= n^2/16, got n={n} m={m}"),
            });
        }
        let k = (m as f64).sqrt().floor() as usize;
        let mprime = m - k * (k - 1) / 2;
        let h = (2 * mprime).div_ceil(n);
        let ell = mprime.div_ceil(h);
        let p = LowerBoundParams { n, m, k, mprime, h, ell };
        assert!(p.k + p.h + p.ell <= n, "construction exceeds vertex budget");
        Ok(p)
    }
}

/// The k-clique on {0..k−1} plus n−k singletons.
pub fn build_g(p: &LowerBoundParams) -> GraphInstance {
    let mut edges = Vec::with_capacity(p.k * (p.k - 1) / 2);
    for u in 0..p.k as u32 {
        for v in u + 1..p.k as u32 {
            edges.push((u, v));
        }
    }
    GraphInstance::from_edges(p.n, &edges).unwrap()
}

/// build_g plus a complete bipartite block between the low side
/// {k..k+ℓ−1} and the high side {k+ℓ..k+ℓ+h−1}.
pub fn build_h(p: &LowerBoundParams) -> GraphInstance {
    let g = build_g(p);
    let mut edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let lo = p.k as u32..(p.k + p.ell) as u32;
    for a in lo {
        for b in (p.k + p.ell) as u32..(p.k + p.ell + p.h) as u32 {
            edges.push((a, b));
        }
    }
    GraphInstance::from_edges(p.n, &edges).unwrap()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCheck {
    pub name: &'static str,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub params: LowerBoundParams,
    pub checks: Vec<ConstructionCheck>,
    pub all_pass: bool,
}

/// Evaluates the four size guarantees of the construction on the concrete
/// instances: the vertex budget suffices, G has at most m/2 edges, and H
/// adds between m/2 and m extra edges.
pub fn verify_construction(p: &LowerBoundParams) -> ConstructionReport {
    let g = build_g(p);
    let h = build_h(p);
    let diff = h.m() - g.m();
    let le = |name, lhs, rhs| ConstructionCheck { name, lhs, rhs, pass: lhs <= rhs };
    let checks = vec![
        le("vertex budget k+h+ell <= n", p.k + p.h + p.ell, p.n),
        le("2*|E(G)| <= m", 2 * g.m(), p.m),
        le("m <= 2*(|E(H)|-|E(G)|)", p.m, 2 * diff),
        le("|E(H)|-|E(G)| <= m", diff, p.m),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    ConstructionReport { params: *p, checks, all_pass }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishabilityReport {
    pub params: LowerBoundParams,
    pub model: Model,
    pub eps: f64,
    pub trials: u64,
    /// Fraction of G-side runs whose returned edge lies outside π(E(G)).
    /// Structurally zero: a sampler cannot emit a non-edge.
    pub g_side_rate: f64,
    /// Fraction of H-side runs whose returned edge lies outside π(E(G)).
    pub h_side_rate: f64,
    pub g_accept_rate: f64,
    pub h_accept_rate: f64,
    pub mean_queries_g: f64,
    pub mean_queries_h: f64,
}

/// Runs the chosen sampler on freshly relabeled copies of G and H and
/// measures how often the returned edge betrays the biclique. A
/// (λ, eps)-uniform sampler forces an H-side rate of at least
/// λ·e^{−eps}·|E(H)∖E(G)|/|E(H)|.
pub fn distinguishability_experiment(
    model: Model,
    p: &LowerBoundParams,
    eps: f64,
    trials: u64,
    seed: u64,
) -> DistinguishabilityReport {
    let g = build_g(p);
    let h = build_h(p);
    let advice = AdviceProvider::exact();
    let mut g_outside = 0u64;
    let mut h_outside = 0u64;
    let mut g_accept = 0u64;
    let mut h_accept = 0u64;
    let mut queries_g = 0u64;
    let mut queries_h = 0u64;

    for t in 0..trials {
        let trial_seed = child_seed(seed, t);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
        let mut perm: Vec<u32> = (0..p.n as u32).collect();
        perm.shuffle(&mut rng);
        let gp = g.relabel(&perm).unwrap();
        let hp = h.relabel(&perm).unwrap();
        // Both sides share the relabeled clique edge set.
        let in_g = |e: Edge| gp.has_edge(e.u, e.v);

        let mut s = OracleSession::new(&gp, child_seed(trial_seed, 1));
        let out = match model {
            Model::Hybrid => sample_edge_hyb(&mut s, eps, &advice),
            Model::Is => sample_edge_is(&mut s, eps, &advice),
        };
        queries_g += s.counters().total();
        if let Some(e) = out.edge() {
            g_accept += 1;
            if !in_g(e) {
                g_outside += 1;
            }
        }

        let mut s = OracleSession::new(&hp, child_seed(trial_seed, 2));
        let out = match model {
            Model::Hybrid => sample_edge_hyb(&mut s, eps, &advice),
            Model::Is => sample_edge_is(&mut s, eps, &advice),
        };
        queries_h += s.counters().total();
        if let Some(e) = out.edge() {
            h_accept += 1;
            assert!(hp.has_edge(e.u, e.v), "sampler emitted a non-edge");
            if !in_g(e) {
                h_outside += 1;
            }
        }
    }

    let frac = |a: u64| if trials == 0 { 0.0 } else { a as f64 / trials as f64 };
    DistinguishabilityReport {
        params: *p,
        model,
        eps,
        trials,
        g_side_rate: frac(g_outside),
        h_side_rate: frac(h_outside),
        g_accept_rate: frac(g_accept),
        h_accept_rate: frac(h_accept),
        mean_queries_g: frac(queries_g),
        mean_queries_h: frac(queries_h),
    }
}
