//! Machine-readable report structures. Field order is fixed by struct order and
//! no hash maps are involved, so identical configs serialize byte-identically;
//! the timestamp sits in its own top-level field so consumers can exclude it.

use mixcert_core::density::{DensityCertificate, SearchInfo, Verdict};
use mixcert_core::graph::RegularGraph;
use mixcert_core::spectral::{alon_boppana_ref, is_ramanujan, SpectralMethod, SpectralSummary};
use mixcert_core::walk::{Exactness, MixingEstimate, MixingOutcome, WalkTrace};
use mixcert_core::SetPair;
use serde::Serialize;
use serde_json::Value;

/// Certification grade attached to every numeric claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grade {
    Exact,
    Spectral,
    Sampled,
    Heuristic,
}

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub command: String,
    pub timestamp: String,
    pub config: Value,
    #[serde(flatten)]
    pub body: T,
}

pub fn render<T: Serialize>(command: &str, config: Value, body: T) -> String {
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs().to_string())
        .unwrap_or_default();
    let envelope = Envelope {
        command: command.to_string(),
        timestamp,
        config,
        body,
    };
    let mut text = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub d: usize,
    pub edges: usize,
    pub connected: bool,
    pub has_bipartite_component: bool,
}

impl GraphInfo {
    pub fn new(g: &RegularGraph) -> Self {
        Self {
            n: g.n(),
            d: g.d(),
            edges: g.edge_count(),
            connected: g.is_connected(),
            has_bipartite_component: g.has_bipartite_component(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpectralJson {
    pub lambda2: f64,
    pub lambda_n: f64,
    pub lambda: f64,
    pub method: SpectralMethod,
    pub residual: f64,
    pub alon_boppana: f64,
    pub is_ramanujan: bool,
    pub grade: Grade,
}

impl SpectralJson {
    pub fn new(summary: &SpectralSummary, d: usize) -> Self {
        Self {
            lambda2: summary.lambda2,
            lambda_n: summary.lambda_n,
            lambda: summary.lambda,
            method: summary.method,
            residual: summary.residual,
            alon_boppana: alon_boppana_ref(d),
            is_ramanujan: is_ramanujan(summary.lambda, d),
            grade: match summary.method {
                SpectralMethod::ExactDense => Grade::Exact,
                SpectralMethod::Iterative => Grade::Spectral,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub est: u64,
    pub surplus: f64,
}

impl WitnessJson {
    pub fn new(pair: &SetPair) -> Self {
        Self {
            s: pair.s.to_vec(),
            t: pair.t.to_vec(),
            est: pair.est,
            surplus: pair.surplus,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub alpha: f64,
    pub delta: f64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    pub max_surplus_found: f64,
    pub search: SearchInfo,
    pub degenerate: bool,
    pub grade: Grade,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl CertificateJson {
    pub fn new(cert: &DensityCertificate, warning: Option<String>) -> Self {
        Self {
            alpha: cert.alpha,
            delta: cert.delta,
            verdict: cert.verdict,
            witness: cert.witness.as_ref().map(WitnessJson::new),
            max_surplus_found: cert.max_surplus_found,
            search: cert.search.clone(),
            degenerate: cert.degenerate,
            grade: match cert.search {
                SearchInfo::Exact => Grade::Exact,
                SearchInfo::Heuristic { .. } => Grade::Heuristic,
            },
            warning,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MixingJson {
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_reached: Option<NotReachedJson>,
    pub exactness: Exactness,
    pub grade: Grade,
}

#[derive(Debug, Serialize)]
pub struct NotReachedJson {
    pub t_max: usize,
    pub last_d_tv: f64,
}

impl MixingJson {
    pub fn new(est: &MixingEstimate) -> Self {
        let (tau, not_reached) = match est.outcome {
            MixingOutcome::Reached { tau } => (Some(tau), None),
            MixingOutcome::NotReached { t_max, last_d_tv } => {
                (None, Some(NotReachedJson { t_max, last_d_tv }))
            }
        };
        Self {
            epsilon: est.epsilon,
            tau,
            not_reached,
            exactness: est.exactness,
            grade: match est.exactness {
                Exactness::Exact => Grade::Exact,
                Exactness::LowerBound => Grade::Sampled,
            },
        }
    }
}

pub fn trace_csv(trace: &WalkTrace) -> String {
    let mut out = String::from("t,d_tv,l2sq\n");
    for p in &trace.steps {
        out.push_str(&format!("{},{},{}\n", p.t, p.d_tv, p.l2sq));
    }
    out
}
