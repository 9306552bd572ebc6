//! Ground-truth factor values, computed independently of the sampling
//! code paths: exact weighted subset enumeration for small graphs and
//! Monte Carlo over the same deterministic predicates otherwise. These are
//! the reference oracles the event procedures are validated against.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::GraphInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Loneliness,
    Starness,
    Neighborhood,
}

impl FactorKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "loneliness" => Some(FactorKind::Loneliness),
            "starness" => Some(FactorKind::Starness),
            "neighborhood" => Some(FactorKind::Neighborhood),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum FactorError {
    #[error("factor {0:?} needs a second vertex v")]
    MissingV(FactorKind),
    #[error("neighborhood factor requires v adjacent to u, got u={u} v={v}")]
    NotANeighbor { u: u32, v: u32 },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(u32),
}

#[derive(Clone, Copy, Debug)]
pub struct FactorValue {
    pub value: f64,
    /// True when obtained by full enumeration rather than Monte Carlo.
    pub exact: bool,
    /// Standard error of the estimate (0 for exact values).
    pub std_err: f64,
}

pub const EXACT_ENUMERATION_LIMIT: usize = 15;

/// Membership density used by each factor.
fn density(kind: FactorKind, m_tilde: f64) -> f64 {
    match kind {
        FactorKind::Loneliness | FactorKind::Starness => (1.0 / (10.0 * m_tilde.sqrt())).min(1.0),
        FactorKind::Neighborhood => (1.0 / m_tilde).min(1.0),
    }
}

/// Deterministic weight of one subset under the factor's acceptance rule.
/// The subset is given as a bitmask over the vertices.
fn subset_weight(g: &GraphInstance, kind: FactorKind, mask: u64, u: u32, v: u32) -> f64 {
    let edge_free = |mask: u64| -> bool {
        let mut rest = mask;
        while rest != 0 {
            let a = rest.trailing_zeros();
            rest &= rest - 1;
            let mut others = rest;
            while others != 0 {
                let b = others.trailing_zeros();
                others &= others - 1;
                if g.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    };
    match kind {
        FactorKind::Loneliness | FactorKind::Neighborhood => {
            // {u,v} is lonely: no edge in S ∪ {v} ∖ {u} nor in S ∪ {u} ∖ {v}.
            let a = (mask | 1 << v) & !(1 << u);
            let b = (mask | 1 << u) & !(1 << v);
            if edge_free(a) && edge_free(b) {
                1.0
            } else {
                0.0
            }
        }
        FactorKind::Starness => {
            // Zero unless S is independent and S ∪ {u} has edges — which
            // then all touch u. A unique u-edge survives the loneliness
            // check inside the star test and accepts with probability 1/2;
            // two or more u-edges accept outright.
            if !edge_free(mask) {
                return 0.0;
            }
            let mut c = 0u32;
            for &w in g.neighbors(u) {
                if mask >> w & 1 == 1 {
                    c += 1;
                }
            }
            match c {
                0 => 0.0,
                1 => 0.5,
                _ => 1.0,
            }
        }
    }
}

fn validate(
    g: &GraphInstance,
    kind: FactorKind,
    u: u32,
    v: Option<u32>,
) -> Result<u32, FactorError> {
    if u as usize >= g.n() {
        return Err(FactorError::VertexOutOfRange(u));
    }
    match kind {
        FactorKind::Starness => Ok(u),
        FactorKind::Loneliness | FactorKind::Neighborhood => {
            let v = v.ok_or(FactorError::MissingV(kind))?;
            if v as usize >= g.n() {
                return Err(FactorError::VertexOutOfRange(v));
            }
            if kind == FactorKind::Neighborhood && !g.has_edge(u, v) {
                return Err(FactorError::NotANeighbor { u, v });
            }
            Ok(v)
        }
    }
}

/// Exact factor value by summing p^{|S|}(1−p)^{n−|S|} over all 2^n
/// subsets. Requires n ≤ 15.
pub fn exact_factor(
    g: &GraphInstance,
    kind: FactorKind,
    m_tilde: f64,
    u: u32,
    v: Option<u32>,
) -> Result<f64, FactorError> {
    assert!(
        g.n() <= EXACT_ENUMERATION_LIMIT,
        "exact enumeration limited to n <= {EXACT_ENUMERATION_LIMIT}"
    );
    let v = validate(g, kind, u, v)?;
    let n = g.n();
    let p = density(kind, m_tilde);
    // weights[c] = p^c (1−p)^{n−c}
    let mut weights = vec![0.0f64; n + 1];
    for (c, w) in weights.iter_mut().enumerate() {
        *w = p.powi(c as i32) * (1.0 - p).powi((n - c) as i32);
    }
    let mut total = 0.0;
    for mask in 0u64..1 << n {
        let w = subset_weight(g, kind, mask, u, v);
        if w > 0.0 {
            total += w * weights[mask.count_ones() as usize];
        }
    }
    Ok(total)
}

/// Monte Carlo factor estimate over the same deterministic subset rule
/// (works for any n ≤ 64).
pub fn monte_carlo_factor(
    g: &GraphInstance,
    kind: FactorKind,
    m_tilde: f64,
    u: u32,
    v: Option<u32>,
    trials: u64,
    seed: u64,
) -> Result<FactorValue, FactorError> {
    assert!(g.n() <= 64, "bitmask sampling limited to n <= 64");
    assert!(trials > 0);
    let v = validate(g, kind, u, v)?;
    let p = density(kind, m_tilde);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trials {
        let mut mask = 0u64;
        for i in 0..g.n() {
            if rng.gen::<f64>() < p {
                mask |= 1 << i;
            }
        }
        let w = subset_weight(g, kind, mask, u, v);
        sum += w;
        sum_sq += w * w;
    }
    let mean = sum / trials as f64;
    let var = (sum_sq / trials as f64 - mean * mean).max(0.0);
    Ok(FactorValue {
        value: mean,
        exact: false,
        std_err: (var / trials as f64).sqrt(),
    })
}

/// Exact enumeration when feasible, Monte Carlo otherwise.
pub fn brute_force_factor(
    g: &GraphInstance,
    kind: FactorKind,
    m_tilde: f64,
    u: u32,
    v: Option<u32>,
    seed: u64,
) -> Result<FactorValue, FactorError> {
    if g.n() <= EXACT_ENUMERATION_LIMIT {
        Ok(FactorValue {
            value: exact_factor(g, kind, m_tilde, u, v)?,
            exact: true,
            std_err: 0.0,
        })
    } else {
        monte_carlo_factor(g, kind, m_tilde, u, v, 2_000_000, seed)
    }
}

/// Tininess factor of u: fraction of its neighbors of degree ≤ k1(m̃).
/// Exactly computable from the degree sequence; no enumeration needed.
pub fn tininess_exact(g: &GraphInstance, m_tilde: f64, u: u32) -> f64 {
    let d = g.degree(u);
    assert!(d >= 1, "tininess undefined for isolated vertex {u}");
    let k1 = 3.0 * (m_tilde * m_tilde.sqrt() / g.n() as f64).sqrt();
    let tiny = g.neighbors(u).iter().filter(|&&w| g.degree(w) as f64 <= k1).count();
    tiny as f64 / d as f64
}
