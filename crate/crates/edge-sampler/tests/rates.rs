//! Monte Carlo checks of the closed-form per-edge/per-vertex success
//! probabilities of the category samplers, on instances where the target
//! probability has an exact expression.

use edge_sampler::elementary::DEFAULT_C;
use edge_sampler::graph::{generate, GraphFamily, GraphInstance};
use edge_sampler::hybrid::{sample_ll_edge_hyb, sample_mh_vertex_hyb, sample_mhmh_edge_hyb};
use edge_sampler::is_model::sample_ll_edge_is;
use edge_sampler::oracle::OracleSession;

/// Asserts `hits/trials` lies in `e^{±eps}·p0` widened by a ±4σ Monte
/// Carlo band (σ at the band edge of the expected rate).
fn assert_rate_in_band(hits: u64, trials: u64, p0: f64, eps: f64, what: &str) {
    let rate = hits as f64 / trials as f64;
    let mc = 4.0 * (p0 / trials as f64).sqrt();
    let lo = p0 * (-eps).exp() - mc;
    let hi = p0 * eps.exp() + mc;
    assert!(
        rate >= lo && rate <= hi,
        "{what}: rate {rate:.3e} outside [{lo:.3e}, {hi:.3e}] ({hits}/{trials})"
    );
}

#[test]
fn ll_hybrid_rate_on_single_low_edge() {
    // One edge between degree-1 vertices (low-low for any m̃ ≥ 1); the
    // loneliness factor cancels, leaving exactly e^{±eps}/(200·m̃·ln(C/eps)).
    let g = GraphInstance::from_edges(6, &[(0, 1)]).unwrap();
    let (eps, m_tilde) = (0.1, 4.0);
    let p0 = 1.0 / (200.0 * m_tilde * (DEFAULT_C / eps).ln());
    let mut s = OracleSession::new(&g, 41);
    let trials = 3_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        if let Some(e) = sample_ll_edge_hyb(&mut s, eps, m_tilde).edge() {
            assert_eq!((e.u, e.v), (0, 1));
            hits += 1;
        }
    }
    assert_rate_in_band(hits, trials, p0, eps, "ll-hyb single edge");
}

#[test]
fn mh_vertex_rate_on_star_center() {
    // K_{1,9} at m̃ = 9: center degree 9 > k2 = 3, leaves never qualify.
    // The starness factor cancels, leaving e^{±eps}/(300·√m̃·ln(C/eps)).
    let g = generate(GraphFamily::Star, &[1, 9], 0).unwrap();
    let (eps, m_tilde): (f64, f64) = (0.1, 9.0);
    let p0 = 1.0 / (300.0 * m_tilde.sqrt() * (DEFAULT_C / eps).ln());
    let mut s = OracleSession::new(&g, 42);
    let trials = 3_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        if let Some(u) = sample_mh_vertex_hyb(&mut s, eps, m_tilde) {
            assert_eq!(u, 0, "only the center exceeds k2");
            hits += 1;
        }
    }
    assert_rate_in_band(hits, trials, p0, eps, "mh-vertex star center");
}

#[test]
fn mhmh_total_rate_on_clique() {
    // K5 at m̃ = 4: every degree is 4 > k2 = 2, so all 10 edges are
    // medium-high pairs at e^{±eps}/(45000·m̃·ln(C/eps)) each.
    let g = generate(GraphFamily::Clique, &[5], 0).unwrap();
    let (eps, m_tilde) = (0.3, 4.0);
    let p0 = 10.0 / (45000.0 * m_tilde * (DEFAULT_C / eps).ln());
    let mut s = OracleSession::new(&g, 43);
    let trials = 8_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        if let Some(e) = sample_mhmh_edge_hyb(&mut s, eps, m_tilde).edge() {
            assert!(g.has_edge(e.u, e.v));
            hits += 1;
        }
    }
    assert_rate_in_band(hits, trials, p0, eps, "mhmh clique total");
}

#[test]
fn ll_is_rate_on_single_low_edge() {
    // Degree-1 endpoints are far below k = 2, so both degree tests reject
    // with probability ≥ 1 − r each and the rate is
    // e^{±eps}/(200·m̃·ln(C/eps))·Pr[T_u = T_v = 0] with the Pr term in
    // [(1−r)², 1]; r = 0.01 is folded into the band below.
    let g = GraphInstance::from_edges(6, &[(0, 1)]).unwrap();
    let (eps, m_tilde, r) = (0.1, 4.0, 0.01);
    let p0 = 1.0 / (200.0 * m_tilde * (DEFAULT_C / eps).ln());
    let mut s = OracleSession::new(&g, 44);
    let trials = 2_000_000u64;
    let mut hits = 0u64;
    for _ in 0..trials {
        if let Some(e) = sample_ll_edge_is(&mut s, eps, m_tilde, r).edge() {
            assert_eq!((e.u, e.v), (0, 1));
            hits += 1;
        }
    }
    // widen the lower edge by the degree-test slack (1−r)² ≈ 1 − 2r
    assert_rate_in_band(hits, trials, p0, eps + 2.5 * r, "ll-is single edge");
    assert_eq!(s.counters().degree + s.counters().neighbor, 0, "model purity");
}
