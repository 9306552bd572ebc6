//! Edge sampler for the hybrid model (IS + degree/neighbor oracles).
//!
//! Degrees are split into low (≤ k2), medium ((k2, k3]) and high (> k3)
//! classes; each edge class gets a dedicated sampler whose per-edge return
//! probability is class-independent up to e^{±eps}. A coin mixture then
//! equalizes the classes, an amplification loop lifts the success
//! probability to ≥ 3/4, and the entry point plugs in the edge-count
//! advice.

use rand::Rng;

use crate::advice::AdviceProvider;
use crate::elementary::{
    estimate_indicator_inverse, loneliness_event, sample_edge_bruteforce, sample_lone_edge,
    sample_star_vertex, starness_event, IndicatorInvParams, SampleOutcome, DEFAULT_C,
};
use crate::graph::Edge;
use crate::oracle::{OracleSession, VertexSet};

/// Degree thresholds of the hybrid model for a given advice value.
#[derive(Clone, Copy, Debug)]
pub struct HybridThresholds {
    /// Tiny-degree bound 3·√(m̃^{3/2}/n).
    pub k1: f64,
    /// Low/medium boundary √m̃.
    pub k2: f64,
    /// Medium/high boundary √(n·√m̃).
    pub k3: f64,
    /// min{√m̃, √(n/√m̃)}; governs mixture coins and loop counts.
    pub r_tilde: f64,
}

impl HybridThresholds {
    pub fn new(n: usize, m_tilde: f64) -> Self {
        assert!(m_tilde > 0.0 && n > 0);
        let n = n as f64;
        let sm = m_tilde.sqrt();
        let alt = (n / sm).sqrt();
        HybridThresholds {
            k1: 3.0 * (m_tilde * sm / n).sqrt(),
            k2: sm,
            k3: (n * sm).sqrt(),
            r_tilde: sm.min(alt),
        }
    }

    /// True when √m̃ ≤ √(n/√m̃), i.e. m̃^{3/2} ≤ n: the regime where L-M
    /// and L-H edges are handled together as L-MH.
    pub fn sparse(n: usize, m_tilde: f64) -> bool {
        let sm = m_tilde.sqrt();
        sm <= (n as f64 / sm).sqrt()
    }
}

/// Samples each low-low edge with probability e^{±eps}/(200·m̃·ln(C/eps)):
/// a lone-edge draw, two degree checks, then the loneliness factor is
/// canceled by the indicator-inverse filter (rho = 1/2).
pub fn sample_ll_edge_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let k2 = m_tilde.sqrt();
    let Some(e) = sample_lone_edge(s, m_tilde) else {
        return SampleOutcome::Reject;
    };
    if s.query_degree(e.u) as f64 > k2 || s.query_degree(e.v) as f64 > k2 {
        return SampleOutcome::Reject;
    }
    let params = IndicatorInvParams::new(eps, 0.5);
    if estimate_indicator_inverse(s, |s| loneliness_event(s, m_tilde, e.u, e.v), &params) {
        SampleOutcome::Edge(e)
    } else {
        SampleOutcome::Reject
    }
}

/// Samples each vertex of degree > k2 with probability
/// e^{±eps}/(300·√m̃·ln(C/eps)): a star-vertex draw, a degree check, then
/// the starness factor is canceled (rho = 1/30).
pub fn sample_mh_vertex_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> Option<u32> {
    let k2 = m_tilde.sqrt();
    let u = sample_star_vertex(s, m_tilde)?;
    if s.query_degree(u) as f64 <= k2 {
        return None;
    }
    let params = IndicatorInvParams::new(eps, 1.0 / 30.0);
    if estimate_indicator_inverse(s, |s| starness_event(s, m_tilde, u), &params) {
        Some(u)
    } else {
        None
    }
}

/// Sparse-regime sampler for edges between a low vertex and a medium-or-high
/// vertex: each with probability e^{±eps}/(600·m̃·√m̃·ln(C/eps)). The
/// uniform-neighbor step is normalized away by the min{1, d_u/(2m̃)} coin.
pub fn sample_lmh_edge_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let k2 = m_tilde.sqrt();
    let Some(u) = sample_mh_vertex_hyb(s, eps, m_tilde) else {
        return SampleOutcome::Reject;
    };
    let v = s.uniform_neighbor(u);
    let d_u = s.query_degree(u);
    if d_u as f64 > k2 && s.query_degree(v) as f64 <= k2 {
        let p = (d_u as f64 / (2.0 * m_tilde)).min(1.0);
        if s.coin(p) {
            return SampleOutcome::Edge(Edge::new(u, v));
        }
    }
    SampleOutcome::Reject
}

/// Dense-regime sampler for low–medium edges: each with probability
/// e^{±eps}/(300·m̃·√(n/√m̃)·ln(C/eps)), via the d_u/k3 coin.
pub fn sample_lm_edge_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let th = HybridThresholds::new(s.n(), m_tilde);
    let Some(u) = sample_mh_vertex_hyb(s, eps, m_tilde) else {
        return SampleOutcome::Reject;
    };
    let v = s.uniform_neighbor(u);
    let d_u = s.query_degree(u) as f64;
    if d_u > th.k2 && d_u <= th.k3 && s.query_degree(v) as f64 <= th.k2 && s.coin(d_u / th.k3) {
        return SampleOutcome::Edge(Edge::new(u, v));
    }
    SampleOutcome::Reject
}

/// One Bernoulli draw whose mean is exactly the tininess factor T_u(m̃):
/// the fraction of u's neighbors of degree ≤ k1. Requires deg(u) ≥ 1.
pub fn tininess_event(s: &mut OracleSession, m_tilde: f64, u: u32) -> bool {
    assert!(s.graph().degree(u) >= 1, "tininess undefined for isolated vertex {u}");
    let k1 = 3.0 * (m_tilde * m_tilde.sqrt() / s.n() as f64).sqrt();
    let v = s.uniform_neighbor(u);
    s.query_degree(v) as f64 <= k1
}

/// Dense-regime sampler for low–high edges: a two-step walk from a uniform
/// vertex w (proceed with probability d_w/k1), endpoint filters, then the
/// tininess factor of the high endpoint is canceled (rho = 1/4). Each L-H
/// edge is returned with probability e^{±eps}/(12·m̃·√(n/√m̃)·ln(C/eps)).
pub fn sample_lh_edge_local(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let th = HybridThresholds::new(s.n(), m_tilde);
    let w = s.uniform_vertex();
    let d_w = s.query_degree(w);
    if d_w == 0 {
        return SampleOutcome::Reject; // no walk can start here
    }
    let i = s.rng_mut().gen_range(1..=d_w);
    let u = s.query_neighbor(w, i);
    let d_u = s.query_degree(u);
    let j = s.rng_mut().gen_range(1..=d_u);
    let v = s.query_neighbor(u, j);
    let d_v = s.query_degree(v);
    if d_w as f64 <= th.k1
        && d_u as f64 > th.k3
        && d_v as f64 <= th.k2
        && s.coin(d_w as f64 / th.k1)
    {
        let params = IndicatorInvParams::new(eps, 0.25);
        if estimate_indicator_inverse(s, |s| tininess_event(s, m_tilde, u), &params) {
            return SampleOutcome::Edge(Edge::new(u, v));
        }
    }
    SampleOutcome::Reject
}

/// Samples each edge whose endpoints are both medium-or-high with
/// probability e^{±eps}/(45000·m̃·ln(C/eps)): two independent star-vertex
/// draws, one IS adjacency check, degree checks, and a joint starness
/// filter (rho = 1/900).
pub fn sample_mhmh_edge_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let k2 = m_tilde.sqrt();
    let u = sample_star_vertex(s, m_tilde);
    let v = sample_star_vertex(s, m_tilde);
    let (Some(u), Some(v)) = (u, v) else {
        return SampleOutcome::Reject;
    };
    // When u = v the pair set is a singleton, the IS query accepts, and we
    // reject — a vertex is never adjacent to itself.
    if s.query_is(&VertexSet::from_ids([u, v])) {
        return SampleOutcome::Reject;
    }
    if s.query_degree(u) as f64 <= k2 || s.query_degree(v) as f64 <= k2 {
        return SampleOutcome::Reject;
    }
    let params = IndicatorInvParams::new(eps, 1.0 / 900.0);
    let joint = |s: &mut OracleSession| {
        let b1 = starness_event(s, m_tilde, u);
        let b2 = starness_event(s, m_tilde, v);
        b1 && b2
    };
    if estimate_indicator_inverse(s, joint, &params) {
        SampleOutcome::Edge(Edge::new(u, v))
    } else {
        SampleOutcome::Reject
    }
}

/// Mixture coin masses of the core sampler: (LL, LM-or-LMH, LH, MHMH),
/// with the LH mass zero on the sparse branch.
pub fn core_coin_masses(n: usize, m_tilde: f64) -> (f64, f64, f64, f64) {
    let rt = HybridThresholds::new(n, m_tilde).r_tilde;
    if HybridThresholds::sparse(n, m_tilde) {
        (1.0 / (225.0 * rt), 1.0 / 75.0, 0.0, 1.0 / rt)
    } else {
        (1.0 / (225.0 * rt), 1.0 / 150.0, 1.0 / 3750.0, 1.0 / rt)
    }
}

/// One round of the mixture: each edge, regardless of class, is returned
/// with probability e^{±2eps}/(45000·m̃·R̃·ln(C/eps)).
pub fn sample_edge_core_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let n = s.n();
    let (p_ll, p_mid, p_lh, p_mhmh) = core_coin_masses(n, m_tilde);
    let x: f64 = s.rng_mut().gen();
    if x < p_ll {
        sample_ll_edge_hyb(s, eps, m_tilde)
    } else if x < p_ll + p_mid {
        if HybridThresholds::sparse(n, m_tilde) {
            sample_lmh_edge_hyb(s, eps, m_tilde)
        } else {
            sample_lm_edge_hyb(s, eps, m_tilde)
        }
    } else if x < p_ll + p_mid + p_lh {
        sample_lh_edge_local(s, eps, m_tilde)
    } else if x < p_ll + p_mid + p_lh + p_mhmh {
        sample_mhmh_edge_hyb(s, eps, m_tilde)
    } else {
        SampleOutcome::Reject
    }
}

/// Number of core rounds the amplifier runs: ceil(10^6·R̃·ln(C/eps)).
pub fn amplified_rounds_hyb(n: usize, m_tilde: f64, eps: f64) -> u64 {
    let rt = HybridThresholds::new(n, m_tilde).r_tilde;
    (1e6 * rt * (DEFAULT_C / eps).ln()).ceil() as u64
}

/// Repeats the core sampler (at accuracy eps/5) until the first success.
/// If m̃ ∈ e^{±1/10}·m, the success probability is ≥ 3/4 and the output is
/// e^{±eps}-proportional across edges.
pub fn sample_edge_amplified_hyb(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let rounds = amplified_rounds_hyb(s.n(), m_tilde, eps);
    for _ in 0..rounds {
        let out = sample_edge_core_hyb(s, eps / 5.0, m_tilde);
        if !out.is_reject() {
            return out;
        }
    }
    SampleOutcome::Reject
}

/// Failure budget for the advice step: min{eps²/6, 1/(n²·ln n·ln²(1/eps))},
/// with both logs floored at 1.
pub fn advice_failure_budget(n: usize, eps: f64) -> f64 {
    let nf = n as f64;
    let ln_n = nf.ln().max(1.0);
    let ln_ie = (1.0 / eps).ln().max(1.0);
    (eps * eps / 6.0).min(1.0 / (nf * nf * ln_n * ln_ie * ln_ie))
}

/// Entry point: clamps eps to 1/3, obtains advice, brute-forces tiny
/// graphs (m̃ < 4), and otherwise runs the amplified sampler at accuracy
/// eps/5. A (2/3, eps)-edge-sampling algorithm.
pub fn sample_edge_hyb(s: &mut OracleSession, eps: f64, advice: &AdviceProvider) -> SampleOutcome {
    assert!(eps > 0.0);
    let eps = eps.min(1.0 / 3.0);
    let r = advice_failure_budget(s.n(), eps);
    let n = s.n() as f64;
    // No advice within contract exceeds e^{1/10}·n(n−1)/2; clamping wilder
    // values keeps the mixture-coin masses summing below 1.
    let cap = (0.1f64).exp() * n * (n - 1.0) / 2.0;
    let m_tilde = advice.advise(s, r).min(cap);
    if m_tilde < 4.0 {
        return sample_edge_bruteforce(s).into();
    }
    sample_edge_amplified_hyb(s, eps / 5.0, m_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphInstance};

    #[test]
    fn threshold_arithmetic() {
        let th = HybridThresholds::new(256, 16.0);
        assert!((th.k1 - 1.5).abs() < 1e-12);
        assert!((th.k2 - 4.0).abs() < 1e-12);
        assert!((th.k3 - 32.0).abs() < 1e-12);
        assert!((th.r_tilde - 4.0).abs() < 1e-12);
        assert!(HybridThresholds::sparse(256, 16.0));
        assert!(!HybridThresholds::sparse(64, 200.0));
    }

    #[test]
    fn coin_masses_sum_below_one() {
        // The bound holds for every advice value within the contract,
        // i.e. m̃ ≤ e^{1/10}·n(n−1)/2 (the entry point clamps to this).
        for n in [4usize, 16, 64, 1024, 1 << 13] {
            let cap = (0.1f64).exp() * (n * (n - 1)) as f64 / 2.0;
            let mut m_tilde = 4.0;
            while m_tilde <= cap {
                let (a, b, c, d) = core_coin_masses(n, m_tilde);
                assert!(
                    a + b + c + d <= 1.0 + 1e-12,
                    "mass overflow at n={n} m̃={m_tilde}"
                );
                m_tilde *= 1.5;
            }
        }
    }

    #[test]
    fn ll_rejects_without_low_low_edges() {
        let g = generate(GraphFamily::Empty, &[2], 0).unwrap();
        let mut s = OracleSession::new(&g, 1);
        for _ in 0..200 {
            assert!(sample_ll_edge_hyb(&mut s, 0.1, 4.0).is_reject());
        }
        // K_{1,50}: every edge touches the center (degree 50 > k2 ≈ 7.07).
        let star = generate(GraphFamily::Star, &[1, 50], 0).unwrap();
        let mut s = OracleSession::new(&star, 2);
        for _ in 0..2000 {
            assert!(sample_ll_edge_hyb(&mut s, 0.1, 50.0).is_reject());
        }
    }

    #[test]
    fn mh_vertex_only_above_k2() {
        // K_{1,9}, m̃ = 9, k2 = 3: only the center qualifies.
        let g = generate(GraphFamily::Star, &[1, 9], 0).unwrap();
        let mut s = OracleSession::new(&g, 3);
        let mut hits = 0;
        for _ in 0..20_000 {
            if let Some(u) = sample_mh_vertex_hyb(&mut s, 0.1, 9.0) {
                assert_eq!(u, 0);
                hits += 1;
            }
        }
        assert!(hits > 0);
        // Path: all degrees ≤ 2 ≤ k2 = 3 → never returns.
        let p = generate(GraphFamily::Path, &[8], 0).unwrap();
        let mut s = OracleSession::new(&p, 3);
        for _ in 0..2000 {
            assert_eq!(sample_mh_vertex_hyb(&mut s, 0.1, 9.0), None);
        }
    }

    #[test]
    fn lmh_rejects_on_k3_and_empty() {
        // K3 with m̃ = 3: all degrees 2 > k2 = √3, so no low endpoint.
        let g = generate(GraphFamily::Clique, &[3], 0).unwrap();
        let mut s = OracleSession::new(&g, 4);
        for _ in 0..2000 {
            assert!(sample_lmh_edge_hyb(&mut s, 0.1, 3.0).is_reject());
        }
        let e = generate(GraphFamily::Empty, &[6], 0).unwrap();
        let mut s = OracleSession::new(&e, 4);
        for _ in 0..200 {
            assert!(sample_lmh_edge_hyb(&mut s, 0.1, 4.0).is_reject());
        }
    }

    #[test]
    fn category_exclusivity_on_mixed_graph() {
        // K6 ∪ K_{1,12} ∪ 3 isolated: n = 25, m = 27.
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for u in 0..6u32 {
            for v in u + 1..6 {
                edges.push((u, v));
            }
        }
        for leaf in 7..19u32 {
            edges.push((6, leaf));
        }
        let g = GraphInstance::from_edges(25, &edges).unwrap();
        let m_tilde = 27.0;
        let th = HybridThresholds::new(25, m_tilde);
        let mut s = OracleSession::new(&g, 5);
        for _ in 0..30_000 {
            if let SampleOutcome::Edge(e) = sample_ll_edge_hyb(&mut s, 0.2, m_tilde) {
                assert!(g.degree(e.u) as f64 <= th.k2 && g.degree(e.v) as f64 <= th.k2);
            }
            if let Some(u) = sample_mh_vertex_hyb(&mut s, 0.2, m_tilde) {
                assert!(g.degree(u) as f64 > th.k2);
            }
            if let SampleOutcome::Edge(e) = sample_mhmh_edge_hyb(&mut s, 0.2, m_tilde) {
                assert!(g.has_edge(e.u, e.v));
                assert!(g.degree(e.u) as f64 > th.k2 && g.degree(e.v) as f64 > th.k2);
            }
        }
    }

    #[test]
    fn lh_walk_filters() {
        // No vertex of degree > k3 → always Reject.
        let g = generate(GraphFamily::Path, &[20], 0).unwrap();
        let mut s = OracleSession::new(&g, 6);
        for _ in 0..2000 {
            assert!(sample_lh_edge_local(&mut s, 0.2, 16.0).is_reject());
        }
    }

    #[test]
    fn tininess_exact_fraction() {
        // Path 0-1-2-3: deg = 1,2,2,1. m̃ = 1 → k1 = 3/2: only the two
        // endpoint neighbors count. T_1 = 1/2 (neighbors 0 and 2).
        let g = generate(GraphFamily::Path, &[4], 0).unwrap();
        let mut s = OracleSession::new(&g, 7);
        let trials = 100_000;
        let mut acc = 0u64;
        for _ in 0..trials {
            acc += tininess_event(&mut s, 1.0, 1) as u64;
        }
        let rate = acc as f64 / trials as f64;
        let sigma = (0.25f64 / trials as f64).sqrt();
        assert!((rate - 0.5).abs() < 4.0 * sigma, "rate {rate}");
    }

    #[test]
    fn amplified_succeeds_on_single_edge() {
        let g = GraphInstance::from_edges(4, &[(0, 1)]).unwrap();
        let mut s = OracleSession::new(&g, 8);
        let mut ok = 0;
        let trials = 40;
        for _ in 0..trials {
            match sample_edge_amplified_hyb(&mut s, 0.3, 4.0) {
                SampleOutcome::Edge(e) => {
                    assert_eq!(e, Edge::new(0, 1));
                    ok += 1;
                }
                SampleOutcome::Reject => {}
            }
        }
        assert!(ok * 4 >= trials * 3, "success {ok}/{trials}");
    }

    #[test]
    fn entry_point_small_paths() {
        let empty = generate(GraphFamily::Empty, &[5], 0).unwrap();
        let mut s = OracleSession::new(&empty, 9);
        assert!(sample_edge_hyb(&mut s, 0.2, &AdviceProvider::exact()).is_reject());

        // m = 2 < 4 → brute-force path: exactly uniform.
        let g = GraphInstance::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let mut s = OracleSession::new(&g, 10);
        let trials = 40_000;
        let mut a = 0u64;
        for _ in 0..trials {
            match sample_edge_hyb(&mut s, 0.2, &AdviceProvider::exact()) {
                SampleOutcome::Edge(e) if e == Edge::new(0, 1) => a += 1,
                SampleOutcome::Edge(_) => {}
                SampleOutcome::Reject => panic!("brute-force path cannot reject"),
            }
        }
        let rate = a as f64 / trials as f64;
        let sigma = (0.25f64 / trials as f64).sqrt();
        assert!((rate - 0.5).abs() < 4.0 * sigma, "rate {rate}");
    }
}
