//! Seeded graph generators: random regular graphs, bipartite-regular gadgets,
//! and the two planted-dense-pair counterexample families, with built-in
//! verification of their structural claims.
//!
//! Generation is single-threaded per instance over one seeded RNG stream, so
//! identical (params, seed) reproduce identical edge lists everywhere.

use crate::density::{min_conductance_exact, MIN_CONDUCTANCE_EXACT_CAP};
use crate::graph::{
    conductance_of_cut, ordered_edge_count, vertex_boundary, GraphError, RegularGraph, SetPair,
    VertexSet,
};
use crate::spectral::{spectrum, tanner_bound, SpectralMethod, SpectralOptions};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("nd must be even, got n = {n}, d = {d}")]
    Parity { n: usize, d: usize },
    #[error("degree {d} out of range for n = {n}")]
    DegreeRange { n: usize, d: usize },
    #[error("n = {n} must be divisible by {modulus}")]
    Divisibility { n: usize, modulus: usize },
    #[error("planted construction needs even degree, got d = {0}")]
    OddDegree(usize),
    #[error("degree {d} below the minimum {min} for this construction")]
    DegreeBelowMinimum { d: usize, min: usize },
    #[error("side sizes must match, got {size_s} and {size_t}")]
    SizeMismatch { size_s: usize, size_t: usize },
    #[error("degree {degree} exceeds side size {size}")]
    DegreeExceedsSide { degree: usize, size: usize },
    #[error("planted sets need n/(d+2) >= d/2, got n = {n}, d = {d}")]
    PlantedTooSmall { n: usize, d: usize },
    #[error("generation failed after {retries} retries")]
    GenerationFailure { retries: usize },
    #[error("construction invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Uniform-ish simple d-regular graph by the pairing model with per-pair
/// rejection of loops and multi-edges (whole-graph restart only when the last
/// stubs dead-end). Deterministic per seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<RegularGraph, ConstructError> {
    if d == 0 || d >= n {
        return Err(ConstructError::DegreeRange { n, d });
    }
    if n * d % 2 != 0 {
        return Err(ConstructError::Parity { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'restart: for _ in 0..MAX_RETRIES {
        let mut stubs: Vec<u32> = (0..n).flat_map(|v| std::iter::repeat_n(v as u32, d)).collect();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
        let mut present: HashSet<(u32, u32)> = HashSet::with_capacity(n * d / 2);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..200 {
                let i = rng.random_range(0..stubs.len());
                let j = rng.random_range(0..stubs.len());
                if i == j || stubs[i] == stubs[j] {
                    continue;
                }
                let key = (stubs[i].min(stubs[j]), stubs[i].max(stubs[j]));
                if present.contains(&key) {
                    continue;
                }
                present.insert(key);
                edges.push((key.0 as usize, key.1 as usize));
                let (hi, lo) = (i.max(j), i.min(j));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        return Ok(RegularGraph::build(n, &edges)?);
    }
    Err(ConstructError::GenerationFailure {
        retries: MAX_RETRIES,
    })
}

/// Simple bipartite graph where every vertex has the given degree, as a union
/// of seeded random perfect matchings (each retried until it avoids existing
/// edges). Left side is 0..size, right side size..2*size in the returned pairs.
pub fn bipartite_regular(
    size_s: usize,
    size_t: usize,
    degree: usize,
    seed: u64,
) -> Result<Vec<(usize, usize)>, ConstructError> {
    if size_s != size_t {
        return Err(ConstructError::SizeMismatch { size_s, size_t });
    }
    if degree > size_s {
        return Err(ConstructError::DegreeExceedsSide {
            degree,
            size: size_s,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::with_capacity(size_s * degree);
    let mut perm: Vec<usize> = (0..size_s).collect();
    for _ in 0..degree {
        let mut placed = false;
        for _ in 0..MAX_RETRIES {
            perm.shuffle(&mut rng);
            if perm.iter().enumerate().all(|(i, &j)| !used.contains(&(i, j))) {
                for (i, &j) in perm.iter().enumerate() {
                    used.insert((i, j));
                    edges.push((i, size_s + j));
                }
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(ConstructError::GenerationFailure {
                retries: MAX_RETRIES,
            });
        }
    }
    edges.sort_unstable();
    Ok(edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlantedFamily {
    Expander,
    Ssve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedParams {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub family: PlantedFamily,
}

/// Spectral certification attempt for the small-set expansion of the inner
/// (d-1)-regular part. The Tanner bound rarely reaches the d/2 requirement,
/// in which case `certified` stays false and the measured radius is recorded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RExpansionCertificate {
    pub lambda: f64,
    pub set_size: usize,
    pub tanner_bound: f64,
    pub required: f64,
    pub certified: bool,
}

/// A d-regular graph hiding a dense bipartite pair (S, T):
/// |S| = |T| = n/(d+2), d/2 cross edges per planted vertex, one matching edge
/// from each planted vertex slot into R = V minus S,T, and a (d-1)-regular
/// random graph inside R.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    pub graph: RegularGraph,
    pub s_set: VertexSet,
    pub t_set: VertexSet,
    pub params: PlantedParams,
    pub r_expansion: Option<RExpansionCertificate>,
}

impl PlantedInstance {
    pub fn planted_pair(&self) -> SetPair {
        SetPair::new(&self.graph, self.s_set.clone(), self.t_set.clone())
            .expect("planted sides are nonempty")
    }
}

/// Counterexample against edge conductance: globally a decent expander, yet
/// the planted pair forces slow mixing. Vertices 0..s are S, s..2s are T.
pub fn planted_expander(n: usize, d: usize, seed: u64) -> Result<PlantedInstance, ConstructError> {
    planted_skeleton(n, d, seed, PlantedFamily::Expander)
}

/// Counterexample against small-set vertex expansion; the claim arithmetic
/// needs d >= 8. The inner part's small-set expansion is probed spectrally and
/// the certification grade is recorded on the instance.
pub fn planted_ssve(n: usize, d: usize, seed: u64) -> Result<PlantedInstance, ConstructError> {
    if d < 8 {
        return Err(ConstructError::DegreeBelowMinimum { d, min: 8 });
    }
    planted_skeleton(n, d, seed, PlantedFamily::Ssve)
}

fn planted_skeleton(
    n: usize,
    d: usize,
    seed: u64,
    family: PlantedFamily,
) -> Result<PlantedInstance, ConstructError> {
    if d % 2 != 0 {
        return Err(ConstructError::OddDegree(d));
    }
    if d < 4 {
        return Err(ConstructError::DegreeBelowMinimum { d, min: 4 });
    }
    if n % (d + 2) != 0 {
        return Err(ConstructError::Divisibility { n, modulus: d + 2 });
    }
    let s = n / (d + 2);
    if s < d / 2 {
        return Err(ConstructError::PlantedTooSmall { n, d });
    }
    let r_size = n - 2 * s; // equals s * d
    debug_assert_eq!(r_size, s * d);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gadget_seed = rng.next_u64();
    let inner_seed = rng.next_u64();
    let matching_seed = rng.next_u64();

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * d / 2);
    // dense bipartite gadget between S = 0..s and T = s..2s
    edges.extend(bipartite_regular(s, s, d / 2, gadget_seed)?);
    // (d-1)-regular interior on R = 2s..n
    let inner = random_regular(r_size, d - 1, inner_seed)?;
    edges.extend(inner.edges().map(|(u, v)| (2 * s + u, 2 * s + v)));
    // every planted vertex sends d/2 edges to unique R-vertices; the counts
    // force a perfect bijection onto R
    let mut slots: Vec<usize> = (0..r_size).collect();
    slots.shuffle(&mut ChaCha8Rng::seed_from_u64(matching_seed));
    let mut next = slots.into_iter();
    for v in 0..2 * s {
        for _ in 0..d / 2 {
            let r = next.next().expect("slot count matches matching demand");
            edges.push((v, 2 * s + r));
        }
    }

    let graph = RegularGraph::build(n, &edges)?;
    let s_set = VertexSet::from_members(n, 0..s);
    let t_set = VertexSet::from_members(n, s..2 * s);
    validate_planted(&graph, &s_set, &t_set, d)?;

    let r_expansion = match family {
        PlantedFamily::Expander => None,
        PlantedFamily::Ssve => Some(certify_r_expansion(&inner, n, d)),
    };
    Ok(PlantedInstance {
        graph,
        s_set,
        t_set,
        params: PlantedParams { n, d, seed, family },
        r_expansion,
    })
}

fn validate_planted(
    g: &RegularGraph,
    s_set: &VertexSet,
    t_set: &VertexSet,
    d: usize,
) -> Result<(), ConstructError> {
    let fail = |msg: String| Err(ConstructError::Invariant(msg));
    let planted = VertexSet::from_members(g.n(), s_set.iter().chain(t_set.iter()));
    let r_set = planted.complement();
    for v in s_set.iter() {
        if g.degree_in(v, t_set) != d / 2 {
            return fail(format!("vertex {v} in S lacks d/2 edges into T"));
        }
    }
    for v in t_set.iter() {
        if g.degree_in(v, s_set) != d / 2 {
            return fail(format!("vertex {v} in T lacks d/2 edges into S"));
        }
    }
    for v in planted.iter() {
        if g.degree_in(v, &r_set) != d / 2 {
            return fail(format!("planted vertex {v} lacks d/2 edges into R"));
        }
    }
    for v in r_set.iter() {
        if g.degree_in(v, &planted) != 1 {
            return fail(format!("R vertex {v} does not receive exactly one matching edge"));
        }
        if g.degree_in(v, &r_set) != d - 1 {
            return fail(format!("R vertex {v} breaks the (d-1)-regular interior"));
        }
    }
    Ok(())
}

fn certify_r_expansion(inner: &RegularGraph, n: usize, d: usize) -> RExpansionCertificate {
    let required = d as f64 / 2.0;
    let set_size = (d * n / ((d + 2) * (d - 1))).max(1);
    let lambda = spectrum(inner, SpectralMethod::Iterative, &SpectralOptions::default())
        .map(|s| s.lambda)
        .unwrap_or(1.0);
    let bound = tanner_bound(lambda, set_size.min(inner.n()), inner.n());
    RExpansionCertificate {
        lambda,
        set_size,
        tanner_bound: bound,
        required,
        certified: bound + 1e-9 >= required,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grade {
    Exact,
    Spectral,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub holds: bool,
    pub grade: Grade,
    /// Value backing the verdict: exact minimum, spectral bound, or sampled minimum.
    pub observed: f64,
    pub threshold: f64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimsReport {
    /// Edge conductance of the whole instance is at least 1/8.
    pub conductance: ClaimCheck,
    /// The planted pair carries surplus at least d/4 (checked exactly).
    pub density: ClaimCheck,
    /// Small sets expand by at least d/8 vertices each (ssve family only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_expansion: Option<ClaimCheck>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyEffort {
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyEffort {
    fn default() -> Self {
        Self {
            samples: 10_000,
            seed: 0,
        }
    }
}

/// Checks the instance's claims, preferring proof-grade evidence (exact
/// enumeration for tiny n, spectral bounds) and falling back to sampling.
pub fn verify_claims(inst: &PlantedInstance, effort: &VerifyEffort) -> ClaimsReport {
    let g = &inst.graph;
    let d = g.d();
    let conductance = check_conductance(inst, effort);
    let density = check_density(inst);
    let vertex_expansion = (inst.params.family == PlantedFamily::Ssve && d >= 8)
        .then(|| check_vertex_expansion(inst, effort));
    ClaimsReport {
        conductance,
        density,
        vertex_expansion,
    }
}

fn check_conductance(inst: &PlantedInstance, effort: &VerifyEffort) -> ClaimCheck {
    let g = &inst.graph;
    let threshold = 1.0 / 8.0;
    if g.n() <= MIN_CONDUCTANCE_EXACT_CAP {
        let (phi, _) = min_conductance_exact(g).expect("n within exact cap");
        return ClaimCheck {
            holds: phi + 1e-12 >= threshold,
            grade: Grade::Exact,
            observed: phi,
            threshold,
            samples: 0,
            spectral_lower: None,
            sampled_min: None,
        };
    }
    let spectral_lower = spectrum(g, SpectralMethod::Iterative, &SpectralOptions::default())
        .ok()
        .map(|s| (1.0 - s.lambda2) / 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(effort.seed);
    let mut sampled_min = f64::INFINITY;
    let mut verts: Vec<usize> = (0..g.n()).collect();
    for _ in 0..effort.samples {
        let k = rng.random_range(1..=g.n() / 2);
        verts.shuffle(&mut rng);
        let cut = VertexSet::from_members(g.n(), verts[..k].iter().copied());
        let phi = conductance_of_cut(g, &cut).expect("size within range");
        sampled_min = sampled_min.min(phi);
    }
    let spectral_pass = spectral_lower.is_some_and(|b| b + 1e-9 >= threshold);
    let sampled_pass = sampled_min + 1e-12 >= threshold;
    ClaimCheck {
        holds: spectral_pass || sampled_pass,
        grade: if spectral_pass { Grade::Spectral } else { Grade::Sampled },
        observed: if spectral_pass {
            spectral_lower.unwrap()
        } else {
            sampled_min
        },
        threshold,
        samples: effort.samples,
        spectral_lower,
        sampled_min: Some(sampled_min),
    }
}

fn check_density(inst: &PlantedInstance) -> ClaimCheck {
    let g = &inst.graph;
    let d = g.d() as f64;
    let n = g.n() as f64;
    let s = inst.s_set.size() as f64;
    let t = inst.t_set.size() as f64;
    let est = ordered_edge_count(g, &inst.s_set, &inst.t_set);
    let threshold = d * s * t / n + d / 4.0 * (s * t).sqrt();
    ClaimCheck {
        // zero tolerance: the edge count side is an exact integer
        holds: est as f64 >= threshold,
        grade: Grade::Exact,
        observed: est as f64,
        threshold,
        samples: 0,
        spectral_lower: None,
        sampled_min: None,
    }
}

fn check_vertex_expansion(inst: &PlantedInstance, effort: &VerifyEffort) -> ClaimCheck {
    let g = &inst.graph;
    let n = g.n();
    let d = g.d();
    let cap = (n / d).max(1);
    let threshold = d as f64 / 8.0;

    let mut combos: u128 = 0;
    for k in 1..=cap {
        combos = combos.saturating_add(binomial(n, k));
    }
    if combos <= 6_000_000 {
        let mut worst = f64::INFINITY;
        let mut members = Vec::new();
        for k in 1..=cap {
            for_each_combination(n, k, &mut members, &mut |set| {
                let vs = VertexSet::from_members(n, set.iter().copied());
                // integer comparison keeps the minimum exact
                let psi = vertex_boundary(g, &vs) as f64 / k as f64;
                if psi < worst {
                    worst = psi;
                }
            });
        }
        return ClaimCheck {
            holds: worst + 1e-12 >= threshold,
            grade: Grade::Exact,
            observed: worst,
            threshold,
            samples: 0,
            spectral_lower: None,
            sampled_min: None,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(effort.seed.wrapping_add(1));
    let mut verts: Vec<usize> = (0..n).collect();
    let mut worst = f64::INFINITY;
    for _ in 0..effort.samples {
        let k = rng.random_range(1..=cap);
        verts.shuffle(&mut rng);
        let w = VertexSet::from_members(n, verts[..k].iter().copied());
        let psi = vertex_boundary(g, &w) as f64 / k as f64;
        worst = worst.min(psi);
    }
    ClaimCheck {
        holds: worst + 1e-12 >= threshold,
        grade: Grade::Sampled,
        observed: worst,
        threshold,
        samples: effort.samples,
        spectral_lower: None,
        sampled_min: Some(worst),
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn for_each_combination(n: usize, k: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        for v in start..=(n - (k - buf.len())) {
            buf.push(v);
            rec(n, k, v + 1, buf, f);
            buf.pop();
        }
    }
    buf.clear();
    rec(n, k, 0, buf, f);
}

/// Sidecar JSON accompanying a planted instance's edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedSidecar {
    #[serde(rename = "S")]
    pub s: Vec<usize>,
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub params: PlantedParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<ClaimsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_expansion: Option<RExpansionCertificate>,
}

impl PlantedSidecar {
    pub fn new(inst: &PlantedInstance, claims: Option<ClaimsReport>) -> Self {
        Self {
            s: inst.s_set.to_vec(),
            t: inst.t_set.to_vec(),
            params: inst.params,
            claims,
            r_expansion: inst.r_expansion.clone(),
        }
    }
}
