//! Experiment reports and the statistics used for their verdicts.
//!
//! Reports accumulate only integer counters across trials (sums and
//! maxima, both order-independent), so a run with a fixed seed serializes
//! to byte-identical JSON regardless of trial scheduling. Floats are
//! derived from the integers once, at report-building time.

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::Model;

/// Default per-comparison significance for all frequency verdicts.
pub const SIGNIFICANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientData,
}

/// Total-variation distance ½·Σ|d1 − d2| between two distributions over
/// the same support.
pub fn tv_distance(d1: &[f64], d2: &[f64]) -> f64 {
    assert_eq!(d1.len(), d2.len(), "distributions need a common support");
    0.5 * d1.iter().zip(d2).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Two-sided normal quantile at significance `alpha`, Bonferroni-corrected
/// over `comparisons` simultaneous tests.
pub fn bonferroni_z(alpha: f64, comparisons: usize) -> f64 {
    let a = (alpha / comparisons.max(1) as f64 / 2.0).max(1e-300);
    Normal::new(0.0, 1.0).unwrap().inverse_cdf(1.0 - a)
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeCount {
    pub u: u32,
    pub v: u32,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QueryStats {
    pub is_total: u64,
    pub degree_total: u64,
    pub neighbor_total: u64,
    pub max_per_trial: u64,
    pub mean_per_trial: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub model: Model,
    pub eps: f64,
    pub seed: u64,
    pub trials: u64,
    pub accepted: u64,
    pub rejected: u64,
    /// Empirical success probability λ.
    pub lambda: f64,
    pub edge_counts: Vec<EdgeCount>,
    pub min_freq: f64,
    pub max_freq: f64,
    /// max_freq / min_freq over accepted draws (infinite if an edge was
    /// never seen).
    pub freq_ratio: f64,
    /// Statistical slack allowed on top of the e^{2eps} ratio bound.
    pub slack: f64,
    pub ratio_limit: f64,
    pub tv_to_uniform: f64,
    pub queries: QueryStats,
    pub verdict: Verdict,
}

/// Builds the report and verdict from raw integer tallies.
///
/// Verdicts: accept rate must be ≥ 2/3 − 4σ and the per-edge frequency
/// ratio at most e^{2eps}·(1 + slack), where the slack adds the
/// Bonferroni-corrected relative confidence widths of the extreme
/// frequencies.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    graph: String,
    n: usize,
    model: Model,
    eps: f64,
    seed: u64,
    trials: u64,
    edge_counts: Vec<EdgeCount>,
    queries: QueryStats,
) -> ExperimentReport {
    let m = edge_counts.len();
    let accepted: u64 = edge_counts.iter().map(|e| e.count).sum();
    let rejected = trials - accepted;
    let lambda = if trials > 0 { accepted as f64 / trials as f64 } else { 0.0 };

    let (mut min_c, mut max_c) = (u64::MAX, 0u64);
    for e in &edge_counts {
        min_c = min_c.min(e.count);
        max_c = max_c.max(e.count);
    }
    if m == 0 {
        min_c = 0;
    }

    let (min_freq, max_freq, freq_ratio, tv) = if accepted > 0 && m > 0 {
        let fmin = min_c as f64 / accepted as f64;
        let fmax = max_c as f64 / accepted as f64;
        let ratio = if min_c == 0 { f64::INFINITY } else { fmax / fmin };
        let uni = 1.0 / m as f64;
        let tv = 0.5
            * edge_counts
                .iter()
                .map(|e| (e.count as f64 / accepted as f64 - uni).abs())
                .sum::<f64>();
        (fmin, fmax, ratio, tv)
    } else {
        (0.0, 0.0, f64::INFINITY, 1.0)
    };

    let z = bonferroni_z(SIGNIFICANCE, m);
    let slack = if accepted > 0 && min_freq > 0.0 {
        let rel = |f: f64| z * (f * (1.0 - f) / accepted as f64).sqrt() / f;
        rel(max_freq) + rel(min_freq)
    } else {
        f64::INFINITY
    };
    let ratio_limit = (2.0 * eps).exp() * (1.0 + slack);

    let verdict = if trials < 2 || accepted < 10 * m.max(1) as u64 {
        Verdict::InsufficientData
    } else {
        let sigma = (2.0 / 9.0 / trials as f64).sqrt();
        let accept_ok = lambda >= 2.0 / 3.0 - 4.0 * sigma;
        let ratio_ok = freq_ratio <= ratio_limit;
        if accept_ok && ratio_ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };

    ExperimentReport {
        graph,
        n,
        m,
        model,
        eps,
        seed,
        trials,
        accepted,
        rejected,
        lambda,
        edge_counts,
        min_freq,
        max_freq,
        freq_ratio,
        slack,
        ratio_limit,
        tv_to_uniform: tv,
        queries,
        verdict,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub trials: u64,
    pub total_queries: u64,
    pub max_queries: u64,
    pub mean_queries: f64,
    /// Scaling reference min{√m, √(n/√m)} (hybrid) or min{√m, n/√m} (IS).
    pub r_ref: f64,
    /// mean_queries / (r_ref·ln n) for hybrid, / (r_ref·ln² n) for IS.
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub model: Model,
    pub regime: String,
    pub eps: f64,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
    pub ratio_spread: f64,
    pub verdict: Verdict,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tv_examples() {
        assert_eq!(tv_distance(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
        assert_eq!(tv_distance(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(tv_distance(&[0.5, 0.5], &[1.0, 0.0]), 0.5);
    }

    #[test]
    fn z_value_monotone_in_comparisons() {
        let z1 = bonferroni_z(1e-6, 1);
        let z2 = bonferroni_z(1e-6, 100);
        assert!(z1 > 4.0 && z2 > z1 && z2 < 7.0);
    }

    #[test]
    fn degenerate_report_is_insufficient() {
        let q = QueryStats {
            is_total: 3,
            degree_total: 0,
            neighbor_total: 0,
            max_per_trial: 3,
            mean_per_trial: 3.0,
        };
        let rep = build_report(
            "two-edge".into(),
            4,
            Model::Is,
            0.2,
            1,
            1,
            vec![
                EdgeCount { u: 0, v: 1, count: 1 },
                EdgeCount { u: 2, v: 3, count: 0 },
            ],
            q,
        );
        assert_eq!(rep.verdict, Verdict::InsufficientData);
    }
}
