//! The only access path from algorithms to graphs: degree, neighbor and
//! independent-set oracles with per-oracle query accounting and seeded
//! randomness.

use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::graph::GraphInstance;

/// A set of vertices, kept sorted ascending. The inline capacity covers the
/// sparse sets the samplers draw, so the hot paths never allocate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    ids: SmallVec<[u32; 16]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_ids(ids: impl IntoIterator<Item = u32>) -> Self {
        let mut ids: SmallVec<[u32; 16]> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    /// Wraps a slice that is already sorted ascending and duplicate-free.
    pub(crate) fn from_sorted(ids: SmallVec<[u32; 16]>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.ids
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.ids.iter().copied()
    }

    pub fn insert(&mut self, v: u32) {
        if let Err(pos) = self.ids.binary_search(&v) {
            self.ids.insert(pos, v);
        }
    }

    pub fn remove(&mut self, v: u32) {
        if let Ok(pos) = self.ids.binary_search(&v) {
            self.ids.remove(pos);
        }
    }

    /// `self ∪ {v}` as a new set.
    pub fn with(&self, v: u32) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// `self \ {v}` as a new set.
    pub fn without(&self, v: u32) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    /// `(self ∪ {add}) \ {del}` in one pass; the workhorse of the loneliness
    /// test.
    pub fn with_without(&self, add: u32, del: u32) -> Self {
        let mut s = self.clone();
        s.remove(del);
        s.insert(add);
        s
    }

    /// Splits into (first ceil(len/2), rest) in sorted order — the fixed
    /// halving used by edge extraction.
    pub fn split_half(&self) -> (Self, Self) {
        let cut = self.ids.len().div_ceil(2);
        (
            VertexSet::from_sorted(self.ids[..cut].into()),
            VertexSet::from_sorted(self.ids[cut..].into()),
        )
    }

    /// Union of two sets (used on the rare narrowing paths of extraction).
    pub fn union(&self, other: &Self) -> Self {
        let mut ids: SmallVec<[u32; 16]> = SmallVec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.ids, &other.ids);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    ids.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ids.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    ids.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ids.extend_from_slice(&a[i..]);
        ids.extend_from_slice(&b[j..]);
        VertexSet { ids }
    }
}

/// Per-oracle query counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub is: u64,
    pub degree: u64,
    pub neighbor: u64,
}

impl Counters {
    pub fn total(&self) -> u64 {
        self.is + self.degree + self.neighbor
    }

    pub fn add(&mut self, other: &Counters) {
        self.is += other.is;
        self.degree += other.degree;
        self.neighbor += other.neighbor;
    }

    /// The JSON shape `{is, degree, neighbor, total}`.
    pub fn report(&self) -> CounterReport {
        CounterReport {
            is: self.is,
            degree: self.degree,
            neighbor: self.neighbor,
            total: self.total(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterReport {
    pub is: u64,
    pub degree: u64,
    pub neighbor: u64,
    pub total: u64,
}

/// Distinguished panic payload raised when the optional query budget is
/// exhausted; worst-case-bound tests catch it with `catch_unwind`.
#[derive(Debug)]
pub struct BudgetExceeded {
    pub budget: u64,
}

/// Binds a graph to query counters and a seeded randomness stream.
/// Single-threaded; run many sessions over one shared graph for parallelism.
pub struct OracleSession<'g> {
    graph: &'g GraphInstance,
    rng: ChaCha8Rng,
    counters: Counters,
    budget: Option<u64>,
    /// All-zero between queries; used for induced-edge checks on larger sets.
    scratch: Vec<u64>,
    binom_cache: [Option<BinomEntry>; 4],
}

#[derive(Clone, Copy)]
struct BinomEntry {
    n: u64,
    p: f64,
    /// (1-p)^n, the inversion starting point; 0.0 marks "fall back to BTPE".
    pmf0: f64,
}

/// Sets with at most this many members use pairwise adjacency probes; larger
/// ones go through the scratch bitset.
const PAIRWISE_LIMIT: usize = 8;

impl<'g> OracleSession<'g> {
    pub fn new(graph: &'g GraphInstance, seed: u64) -> Self {
        OracleSession {
            graph,
            rng: ChaCha8Rng::seed_from_u64(seed),
            counters: Counters::default(),
            budget: None,
            scratch: Vec::new(),
            binom_cache: [None; 4],
        }
    }

    pub fn with_budget(graph: &'g GraphInstance, seed: u64, budget: u64) -> Self {
        let mut s = Self::new(graph, seed);
        s.budget = Some(budget);
        s
    }

    pub fn graph(&self) -> &'g GraphInstance {
        self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    #[inline]
    fn charge(&mut self, kind: fn(&mut Counters) -> &mut u64) {
        *kind(&mut self.counters) += 1;
        if let Some(b) = self.budget {
            if self.counters.total() > b {
                std::panic::panic_any(BudgetExceeded { budget: b });
            }
        }
    }

    /// Degree oracle.
    pub fn query_degree(&mut self, v: u32) -> usize {
        assert!((v as usize) < self.graph.n(), "vertex {v} out of range");
        self.charge(|c| &mut c.degree);
        self.graph.degree(v)
    }

    /// Neighbor oracle; `i` is 1-based per the fixed sorted adjacency order.
    /// An out-of-range index is a caller bug, not a Reject.
    pub fn query_neighbor(&mut self, v: u32, i: usize) -> u32 {
        assert!((v as usize) < self.graph.n(), "vertex {v} out of range");
        let neigh = self.graph.neighbors(v);
        assert!(
            i >= 1 && i <= neigh.len(),
            "neighbor index {i} out of range for vertex {v} (degree {})",
            neigh.len()
        );
        self.charge(|c| &mut c.neighbor);
        neigh[i - 1]
    }

    /// Independent-set oracle: true (accept) iff no graph edge has both
    /// endpoints in `s`.
    pub fn query_is(&mut self, s: &VertexSet) -> bool {
        self.charge(|c| &mut c.is);
        self.is_edge_free(s)
    }

    fn is_edge_free(&mut self, s: &VertexSet) -> bool {
        let ids = s.as_slice();
        if ids.len() < 2 {
            return true;
        }
        if ids.len() <= PAIRWISE_LIMIT {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if self.graph.has_edge(a, b) {
                        return false;
                    }
                }
            }
            return true;
        }
        let words = self.graph.words_per_row();
        if self.scratch.len() < words {
            self.scratch.resize(words, 0);
        }
        for &v in ids {
            self.scratch[v as usize / 64] |= 1u64 << (v % 64);
        }
        let mut free = true;
        for &v in ids {
            let row = self.graph.row(v);
            for (w, &r) in row.iter().enumerate() {
                if r & self.scratch[w] != 0 {
                    free = false;
                    break;
                }
            }
            if !free {
                break;
            }
        }
        for &v in ids {
            self.scratch[v as usize / 64] = 0;
        }
        free
    }

    /// Uniform neighbor idiom: costs one degree query plus one neighbor
    /// query. Panics on an isolated vertex (caller must check).
    pub fn uniform_neighbor(&mut self, v: u32) -> u32 {
        let d = self.query_degree(v);
        assert!(d >= 1, "uniform_neighbor on isolated vertex {v}");
        let i = self.rng.gen_range(1..=d);
        self.query_neighbor(v, i)
    }

    /// A uniform vertex id; free randomness, no oracle cost.
    pub fn uniform_vertex(&mut self) -> u32 {
        self.rng.gen_range(0..self.graph.n() as u32)
    }

    /// A Bernoulli(p) coin from the session stream; no oracle cost.
    pub fn coin(&mut self, p: f64) -> bool {
        if p >= 1.0 {
            return true;
        }
        if p <= 0.0 {
            return false;
        }
        self.rng.gen::<f64>() < p
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Draws a set containing each vertex outside `exclude` independently
    /// with probability `p`; zero oracle cost (random bits are free).
    ///
    /// Implemented as a Binomial(n_eligible, p) size draw followed by a
    /// uniform subset of that size — the same distribution as per-vertex
    /// coins, at O(|result|) instead of O(n).
    pub fn draw_bernoulli_subset(&mut self, exclude: &[u32], p: f64) -> VertexSet {
        let n = self.graph.n();
        debug_assert!(exclude.iter().all(|&v| (v as usize) < n));
        let mut excl: SmallVec<[u32; 4]> = exclude.into();
        excl.sort_unstable();
        excl.dedup();
        let n_el = n - excl.len();
        if n_el == 0 || p <= 0.0 {
            return VertexSet::new();
        }

        let k = if p >= 1.0 { n_el as u64 } else { self.draw_binomial(n_el as u64, p) };
        let k = k as usize;
        if k == 0 {
            return VertexSet::new();
        }

        let mut picks: SmallVec<[u32; 16]> = SmallVec::with_capacity(k);
        if k == n_el {
            picks.extend(0..n_el as u32);
        } else if k <= 16 {
            // Rejection over eligible ranks; k is tiny relative to the
            // retry budget even when n_el is small.
            while picks.len() < k {
                let x = self.rng.gen_range(0..n_el as u32);
                if !picks.contains(&x) {
                    picks.push(x);
                }
            }
        } else {
            for idx in rand::seq::index::sample(&mut self.rng, n_el, k) {
                picks.push(idx as u32);
            }
        }
        // Map eligible rank -> vertex id, skipping excluded ids.
        for x in picks.iter_mut() {
            for &e in &excl {
                if *x >= e {
                    *x += 1;
                }
            }
        }
        picks.sort_unstable();
        VertexSet::from_sorted(picks)
    }

    fn draw_binomial(&mut self, n: u64, p: f64) -> u64 {
        let pmf0 = self.cached_pmf0(n, p);
        if pmf0 == 0.0 {
            // Large n·p regime: delegate to the library sampler.
            let d = rand_distr::Binomial::new(n, p).expect("valid binomial params");
            return d.sample(&mut self.rng);
        }
        // CDF inversion; expected O(1 + n·p) steps.
        let mut u: f64 = self.rng.gen();
        let mut k = 0u64;
        let mut pmf = pmf0;
        let ratio = p / (1.0 - p);
        loop {
            if u < pmf || k >= n {
                return k;
            }
            u -= pmf;
            pmf *= ratio * ((n - k) as f64) / ((k + 1) as f64);
            k += 1;
        }
    }

    fn cached_pmf0(&mut self, n: u64, p: f64) -> f64 {
        for e in self.binom_cache.iter().flatten() {
            if e.n == n && e.p == p {
                return e.pmf0;
            }
        }
        let np = n as f64 * p;
        let pmf0 = if np > 32.0 { 0.0 } else { (1.0 - p).powi(n as i32) };
        self.binom_cache.rotate_right(1);
        self.binom_cache[0] = Some(BinomEntry { n, p, pmf0 });
        pmf0
    }
}
