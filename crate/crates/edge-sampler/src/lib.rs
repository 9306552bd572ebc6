//! Near-uniform edge sampling under independent-set (IS) and local graph
//! oracles, with exact query accounting.
//!
//! The crate simulates the two query models — IS-only, and hybrid
//! (IS + degree/neighbor) — over an in-memory ground-truth graph that
//! algorithm code may only touch through an [`oracle::OracleSession`].
//! On top of the oracle layer sit the elementary sampling primitives, the
//! two full edge samplers, hard-instance constructions for lower-bound
//! experiments, and an experiment harness.

pub mod advice;
pub mod elementary;
pub mod experiments;
pub mod factors;
pub mod graph;
pub mod hybrid;
pub mod is_model;
pub mod lowerbound;

/// Which query model's entry-point sampler to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Hybrid,
    Is,
}

impl Model {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "hybrid" => Some(Model::Hybrid),
            "is" => Some(Model::Is),
            _ => None,
        }
    }
}
pub mod oracle;
pub mod report;
pub mod rng;
