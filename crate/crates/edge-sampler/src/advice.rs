//! Edge-count advice for the samplers.
//!
//! The entry-point samplers need an estimate m̃ of the edge count that lies
//! in e^{±1/10}·m with probability at least 1 − r. Real sublinear
//! estimators are out of scope here; the provider either reads the ground
//! truth (optionally perturbed within the contract) or misbehaves on
//! purpose so that degradation paths can be exercised.

use rand::Rng;

use crate::oracle::OracleSession;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdviceMode {
    /// m̃ = m, zero query cost.
    Exact,
    /// m̃ uniform in [e^{−1/10}·m, e^{1/10}·m]: the tightest value the
    /// advice contract permits.
    NoisyExact,
    /// A fixed value regardless of the graph, e.g. always 4.
    AdversarialFixed(f64),
    /// An externally supplied estimate (CLI flag, upstream estimator).
    External(f64),
}

#[derive(Clone, Copy, Debug)]
pub struct AdviceProvider {
    pub mode: AdviceMode,
    /// Probability of emitting an out-of-range value (simulated estimator
    /// failure). Callers keep this ≤ their failure budget r.
    pub fail_prob: f64,
}

impl AdviceProvider {
    pub fn exact() -> Self {
        AdviceProvider { mode: AdviceMode::Exact, fail_prob: 0.0 }
    }

    pub fn noisy() -> Self {
        AdviceProvider { mode: AdviceMode::NoisyExact, fail_prob: 0.0 }
    }

    pub fn fixed(m_tilde: f64) -> Self {
        AdviceProvider { mode: AdviceMode::AdversarialFixed(m_tilde), fail_prob: 0.0 }
    }

    pub fn external(m_tilde: f64) -> Self {
        AdviceProvider { mode: AdviceMode::External(m_tilde), fail_prob: 0.0 }
    }

    /// Produces the advice value. `_r` is the failure budget granted by the
    /// caller; the simulated provider spends `fail_prob` of it (and a real
    /// estimator would spend queries instead). Costs no oracle queries.
    pub fn advise(&self, s: &mut OracleSession, _r: f64) -> f64 {
        let m = s.graph().m() as f64;
        if self.fail_prob > 0.0 && s.rng_mut().gen::<f64>() < self.fail_prob {
            // Out of range on the high side by a full extra e^{1/10} factor.
            return (m.max(1.0)) * (0.3f64).exp();
        }
        match self.mode {
            AdviceMode::Exact => m,
            AdviceMode::NoisyExact => {
                let t: f64 = s.rng_mut().gen_range(-0.1..=0.1);
                m * t.exp()
            }
            AdviceMode::AdversarialFixed(v) | AdviceMode::External(v) => v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily};

    #[test]
    fn modes_respect_contracts() {
        let g = generate(GraphFamily::Gnm, &[20, 30], 1).unwrap();
        let mut s = OracleSession::new(&g, 9);
        assert_eq!(AdviceProvider::exact().advise(&mut s, 0.01), 30.0);
        for _ in 0..1000 {
            let v = AdviceProvider::noisy().advise(&mut s, 0.01);
            assert!(v >= 30.0 * (-0.1f64).exp() && v <= 30.0 * (0.1f64).exp());
        }
        assert_eq!(AdviceProvider::fixed(4.0).advise(&mut s, 0.01), 4.0);
        assert_eq!(s.counters().total(), 0, "advice must be query-free");
    }
}
