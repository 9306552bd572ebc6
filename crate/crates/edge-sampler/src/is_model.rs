//! Edge sampler for the pure-IS model.
//!
//! Without degree or neighbor oracles, degrees can only be *tested*
//! statistically: a vertex of degree ≤ k is classified low and one of
//! degree ≥ 2k high (each with probability 1 − r), while the band in
//! between may land either way. Neighbor draws are simulated with IS
//! queries. Everything here keeps the degree/neighbor counters at zero.

use rand::Rng;

use crate::advice::AdviceProvider;
use crate::elementary::{
    estimate_indicator_inverse, loneliness_event, sample_edge_bruteforce, sample_lone_edge,
    sample_star_vertex, starness_event, test_loneliness, IndicatorInvParams, SampleOutcome,
    DEFAULT_C,
};
use crate::elementary::extract_edge;
use crate::graph::Edge;
use crate::oracle::{OracleSession, VertexSet};

/// Parameters of the IS-only model for a given advice value.
#[derive(Clone, Copy, Debug)]
pub struct IsThresholds {
    /// Low/high boundary √m̃.
    pub k: f64,
    /// Effective vertex bound min{n, 2m̃}.
    pub nstar_tilde: f64,
    /// min{√m̃, n/√m̃}; governs the amplification loop count.
    pub r_tilde: f64,
}

impl IsThresholds {
    pub fn new(n: usize, m_tilde: f64) -> Self {
        assert!(m_tilde > 0.0 && n > 0);
        let nf = n as f64;
        let k = m_tilde.sqrt();
        IsThresholds {
            k,
            nstar_tilde: nf.min(2.0 * m_tilde),
            r_tilde: k.min(nf / k),
        }
    }

    /// True when ñ* = n, i.e. n ≤ 2m̃: the regime where a uniform vertex
    /// plus one pair query is an adequate neighbor sampler.
    pub fn nstar_is_n(n: usize, m_tilde: f64) -> bool {
        n as f64 <= 2.0 * m_tilde
    }
}

/// Samples a neighbor of `u` using IS queries only. If ñ* = n, each
/// neighbor is returned with probability exactly 1/n; otherwise with
/// probability exactly N_{u,v}(m̃)/m̃ via a lone-edge-style draw.
pub fn sample_neighbor_is(s: &mut OracleSession, m_tilde: f64, u: u32) -> Option<u32> {
    let n = s.n();
    if IsThresholds::nstar_is_n(n, m_tilde) {
        let v = s.uniform_vertex();
        // v = u gives the singleton {u}, which always accepts.
        if s.query_is(&VertexSet::from_ids([u, v])) {
            return None;
        }
        return Some(v);
    }
    let set = s.draw_bernoulli_subset(&[u], 1.0 / m_tilde);
    let e = extract_edge(s, &set.with(u))?;
    if !e.contains(u) {
        return None;
    }
    let v = e.other(u);
    if test_loneliness(s, &set, u, v) {
        Some(v)
    } else {
        None
    }
}

/// One Bernoulli draw whose mean is exactly the neighborhood factor
/// N_{u,v}(m̃): the probability that {u,v} is lonely in a density-1/m̃ set.
pub fn neighborhood_event(s: &mut OracleSession, m_tilde: f64, u: u32, v: u32) -> bool {
    let p = (1.0 / m_tilde).min(1.0);
    let set = s.draw_bernoulli_subset(&[], p);
    test_loneliness(s, &set, u, v)
}

/// Number of scoring rounds the degree test runs for error bound `r`.
pub fn high_degree_rounds(r: f64) -> u64 {
    (400.0 * (1.0 / r).ln()).ceil() as u64
}

/// Statistical low/high degree test. Accepts with probability ≥ 1 − r when
/// deg(u) ≥ 2k and rejects with probability ≥ 1 − r when deg(u) ≤ k;
/// degrees in between may land either way. Costs exactly 2N IS queries
/// for N = ceil(400·ln(1/r)).
pub fn test_high_degree(s: &mut OracleSession, m_tilde: f64, u: u32, r: f64) -> bool {
    assert!(r > 0.0 && r < 1.0);
    let k = m_tilde.sqrt();
    let p = (1.0 / (8.0 * k)).min(1.0);
    let rounds = high_degree_rounds(r);
    let mut score = 0u64;
    for _ in 0..rounds {
        let set = s.draw_bernoulli_subset(&[u], p);
        let with_u = !s.query_is(&set.with(u));
        let without_u = s.query_is(&set);
        if with_u && without_u {
            score += 1;
        }
    }
    score as f64 >= (13.0 / 80.0) * rounds as f64
}

/// Low-low sampler: each edge with probability
/// (e^{±eps}/(200·m̃·ln(C/eps)))·Pr[T_u = T_v = 0] ± r, where T are the
/// degree-test outcomes. Both tests always run.
pub fn sample_ll_edge_is(s: &mut OracleSession, eps: f64, m_tilde: f64, r: f64) -> SampleOutcome {
    let Some(e) = sample_lone_edge(s, m_tilde) else {
        return SampleOutcome::Reject;
    };
    let params = IndicatorInvParams::new(eps, 0.5);
    if !estimate_indicator_inverse(s, |s| loneliness_event(s, m_tilde, e.u, e.v), &params) {
        return SampleOutcome::Reject;
    }
    let t_u = test_high_degree(s, m_tilde, e.u, r);
    let t_v = test_high_degree(s, m_tilde, e.v, r);
    if t_u || t_v {
        return SampleOutcome::Reject;
    }
    SampleOutcome::Edge(e)
}

/// High-incident sampler: star vertex u, simulated neighbor v, the degree
/// test must accept u; an accepting test on v halves the weight (undoing
/// the double count of high-high edges). The inverse filter cancels
/// starness (ñ* = n, rho = 1/375) or starness·neighborhood (otherwise,
/// rho = 1/750).
pub fn sample_h_edge_is(s: &mut OracleSession, eps: f64, m_tilde: f64, r: f64) -> SampleOutcome {
    let Some(u) = sample_star_vertex(s, m_tilde) else {
        return SampleOutcome::Reject;
    };
    let Some(v) = sample_neighbor_is(s, m_tilde, u) else {
        return SampleOutcome::Reject;
    };
    if !test_high_degree(s, m_tilde, u, r) {
        return SampleOutcome::Reject;
    }
    if test_high_degree(s, m_tilde, v, r) && s.coin(0.5) {
        return SampleOutcome::Reject;
    }
    let pass = if IsThresholds::nstar_is_n(s.n(), m_tilde) {
        let params = IndicatorInvParams::new(eps, 1.0 / 375.0);
        estimate_indicator_inverse(s, |s| starness_event(s, m_tilde, u), &params)
    } else {
        let params = IndicatorInvParams::new(eps, 1.0 / 750.0);
        let joint = |s: &mut OracleSession| {
            let b1 = starness_event(s, m_tilde, u);
            let b2 = neighborhood_event(s, m_tilde, u, v);
            b1 && b2
        };
        estimate_indicator_inverse(s, joint, &params)
    };
    if pass {
        SampleOutcome::Edge(Edge::new(u, v))
    } else {
        SampleOutcome::Reject
    }
}

/// Mixture coin masses of the IS core sampler: (LL, H).
pub fn core_coin_masses_is(n: usize, m_tilde: f64) -> (f64, f64) {
    let th = IsThresholds::new(n, m_tilde);
    (th.k / (75.0 * th.nstar_tilde), 0.25)
}

/// Internal degree-test error of one core round.
pub fn core_test_error(n: usize, eps: f64) -> f64 {
    (eps * eps / (DEFAULT_C / eps).ln()) / (15000.0 * (n * n) as f64)
}

/// One round of the mixture: every edge is returned with probability
/// e^{±2eps}/(15000·ñ*·√m̃·ln(C/eps)).
pub fn sample_edge_core_is(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let n = s.n();
    let r = core_test_error(n, eps);
    let (p_ll, p_h) = core_coin_masses_is(n, m_tilde);
    let x: f64 = s.rng_mut().gen();
    if x < p_ll {
        sample_ll_edge_is(s, eps, m_tilde, r)
    } else if x < p_ll + p_h {
        sample_h_edge_is(s, eps, m_tilde, r)
    } else {
        SampleOutcome::Reject
    }
}

/// Number of core rounds the amplifier runs: ceil(10^6·R̃·ln(C/eps)).
pub fn amplified_rounds_is(n: usize, m_tilde: f64, eps: f64) -> u64 {
    let rt = IsThresholds::new(n, m_tilde).r_tilde;
    (1e6 * rt * (DEFAULT_C / eps).ln()).ceil() as u64
}

/// Repeats the core sampler (at accuracy eps/5) until the first success.
/// Success probability ≥ 3/4 when m̃ ∈ e^{±1/10}·m.
pub fn sample_edge_amplified_is(s: &mut OracleSession, eps: f64, m_tilde: f64) -> SampleOutcome {
    let rounds = amplified_rounds_is(s.n(), m_tilde, eps);
    for _ in 0..rounds {
        let out = sample_edge_core_is(s, eps / 5.0, m_tilde);
        if !out.is_reject() {
            return out;
        }
    }
    SampleOutcome::Reject
}

/// Failure budget for the advice step: min{eps²/6, 1/(n²·ln n)} with the
/// log floored at 1.
pub fn advice_failure_budget_is(n: usize, eps: f64) -> f64 {
    let nf = n as f64;
    (eps * eps / 6.0).min(1.0 / (nf * nf * nf.ln().max(1.0)))
}

/// Entry point: clamps eps to 1/3, obtains advice, brute-forces small
/// graphs (m̃ < 36), and otherwise runs the amplified sampler at accuracy
/// eps/5. Conditioned on success the output is eps-uniform; success
/// probability ≥ 2/3.
pub fn sample_edge_is(s: &mut OracleSession, eps: f64, advice: &AdviceProvider) -> SampleOutcome {
    assert!(eps > 0.0);
    let eps = eps.min(1.0 / 3.0);
    let r = advice_failure_budget_is(s.n(), eps);
    let m_tilde = advice.advise(s, r);
    if m_tilde < 36.0 {
        return sample_edge_bruteforce(s).into();
    }
    sample_edge_amplified_is(s, eps / 5.0, m_tilde)
}
