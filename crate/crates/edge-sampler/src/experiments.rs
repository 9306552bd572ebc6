//! Experiment harness: uniformity measurement over repeated sampler runs
//! and query-complexity sweeps across graph sizes.
//!
//! Trials run in parallel but accumulate only integers (per-edge hit
//! counts, query sums, maxima) combined with commutative operations, so a
//! fixed seed always yields the same report bytes.

use rayon::prelude::*;

use crate::advice::AdviceProvider;
use crate::graph::{generate, Edge, GraphFamily, GraphInstance};
use crate::hybrid::sample_edge_hyb;
use crate::is_model::sample_edge_is;
use crate::oracle::OracleSession;
use crate::report::{
    build_report, EdgeCount, ExperimentReport, QueryStats, SweepReport, SweepRow, Verdict,
};
use crate::rng::child_seed;
use crate::Model;

fn run_one(
    g: &GraphInstance,
    model: Model,
    eps: f64,
    advice: &AdviceProvider,
    seed: u64,
) -> (Option<Edge>, crate::oracle::Counters) {
    let mut s = OracleSession::new(g, seed);
    let out = match model {
        Model::Hybrid => sample_edge_hyb(&mut s, eps, advice),
        Model::Is => sample_edge_is(&mut s, eps, advice),
    };
    (out.edge(), s.counters())
}

#[derive(Clone)]
struct Tally {
    counts: Vec<u64>,
    rejected: u64,
    is_total: u64,
    degree_total: u64,
    neighbor_total: u64,
    max_per_trial: u64,
}

impl Tally {
    fn new(m: usize) -> Self {
        Tally {
            counts: vec![0; m],
            rejected: 0,
            is_total: 0,
            degree_total: 0,
            neighbor_total: 0,
            max_per_trial: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.rejected += other.rejected;
        self.is_total += other.is_total;
        self.degree_total += other.degree_total;
        self.neighbor_total += other.neighbor_total;
        self.max_per_trial = self.max_per_trial.max(other.max_per_trial);
        self
    }
}

/// Runs the sampler `trials` times on independent seeds derived from
/// `seed` and reports per-edge frequencies, query statistics, and the
/// uniformity verdict.
pub fn run_uniformity(
    g: &GraphInstance,
    graph_name: &str,
    model: Model,
    eps: f64,
    trials: u64,
    seed: u64,
    advice: &AdviceProvider,
) -> ExperimentReport {
    let tally = (0..trials)
        .into_par_iter()
        .fold(
            || Tally::new(g.m()),
            |mut t, trial| {
                let (edge, c) = run_one(g, model, eps, advice, child_seed(seed, trial));
                match edge {
                    Some(e) => {
                        let idx = g
                            .edges()
                            .binary_search(&e)
                            .expect("sampler returned a non-edge");
                        t.counts[idx] += 1;
                    }
                    None => t.rejected += 1,
                }
                t.is_total += c.is;
                t.degree_total += c.degree;
                t.neighbor_total += c.neighbor;
                t.max_per_trial = t.max_per_trial.max(c.total());
                t
            },
        )
        .reduce(|| Tally::new(g.m()), Tally::merge);

    let total_q = tally.is_total + tally.degree_total + tally.neighbor_total;
    let queries = QueryStats {
        is_total: tally.is_total,
        degree_total: tally.degree_total,
        neighbor_total: tally.neighbor_total,
        max_per_trial: tally.max_per_trial,
        mean_per_trial: if trials > 0 { total_q as f64 / trials as f64 } else { 0.0 },
    };
    let edge_counts = g
        .edges()
        .iter()
        .zip(&tally.counts)
        .map(|(e, &count)| EdgeCount { u: e.u, v: e.v, count })
        .collect();
    build_report(
        graph_name.to_string(),
        g.n(),
        model,
        eps,
        seed,
        trials,
        edge_counts,
        queries,
    )
}

/// Edge count for one sweep point: m ≈ n in the sparse regime,
/// m ≈ n^{3/2} in the dense one (capped by the simple-graph maximum).
pub fn regime_edges(regime: &str, n: usize) -> Option<usize> {
    let m = match regime {
        "sparse" => n,
        "dense" => (n as f64).powf(1.5).round() as usize,
        _ => return None,
    };
    Some(m.min(n * (n - 1) / 2))
}

/// Scaling reference for the expected per-run query count at (n, m),
/// excluding logarithmic factors.
pub fn scaling_reference(model: Model, n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    match model {
        Model::Hybrid => mf.sqrt().min((nf / mf.sqrt()).sqrt()),
        Model::Is => mf.sqrt().min(nf / mf.sqrt()),
    }
}

/// Measures mean query counts on random m-edge graphs across `sizes` and
/// normalizes by the model's scaling reference times the log factor
/// (ln n for hybrid, ln² n for IS). Verdict passes when the normalized
/// ratio varies by at most 8× across the sweep.
pub fn run_complexity_sweep(
    model: Model,
    regime: &str,
    sizes: &[usize],
    eps: f64,
    trials: u64,
    seed: u64,
) -> SweepReport {
    let advice = AdviceProvider::exact();
    let rows: Vec<SweepRow> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let m = regime_edges(regime, n).expect("regime must be sparse or dense");
            let point_seed = child_seed(seed, i as u64);
            let g = generate(GraphFamily::Gnm, &[n, m], point_seed).unwrap();
            let (total, max) = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let (_, c) = run_one(&g, model, eps, &advice, child_seed(point_seed, 1 + t));
                    c.total()
                })
                .fold(|| (0u64, 0u64), |(s, mx), q| (s + q, mx.max(q)))
                .reduce(|| (0, 0), |(s1, m1), (s2, m2)| (s1 + s2, m1.max(m2)));
            let mean = if trials > 0 { total as f64 / trials as f64 } else { 0.0 };
            let r_ref = scaling_reference(model, n, g.m());
            let log = match model {
                Model::Hybrid => (n as f64).ln(),
                Model::Is => (n as f64).ln().powi(2),
            };
            SweepRow {
                n,
                m: g.m(),
                trials,
                total_queries: total,
                max_queries: max,
                mean_queries: mean,
                r_ref,
                ratio: mean / (r_ref * log),
            }
        })
        .collect();

    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for r in &rows {
        lo = lo.min(r.ratio);
        hi = hi.max(r.ratio);
    }
    let ratio_spread = if rows.is_empty() { f64::NAN } else { hi / lo };
    let verdict = if rows.len() < 2 || trials == 0 {
        Verdict::InsufficientData
    } else if ratio_spread <= 8.0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    SweepReport {
        model,
        regime: regime.to_string(),
        eps,
        seed,
        rows,
        ratio_spread,
        verdict,
    }
}
