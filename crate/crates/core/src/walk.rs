//! Exact random-walk distribution evolution for the non-lazy walk P = A/d,
//! total-variation and squared-2-norm diagnostics, mixing-time estimation,
//! and the audit procedures for the density-based mixing bounds.
//!
//! All evolution is exact matvec; nothing here samples trajectories. Bipartite
//! graphs honestly never mix under the non-lazy walk and are reported as
//! not-reached.

use crate::graph::{meets_alpha, RegularGraph, SetPair, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WalkError {
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("step budget must be positive")]
    BudgetZero,
    #[error("trace has {len} steps, audit needs index {index}")]
    IndexOutOfTrace { index: usize, len: usize },
    #[error("audit requires an exact (all point-mass starts) trace")]
    InexactTrace,
    #[error("pair surplus {surplus} is below alpha = {alpha}")]
    NotAWitness { surplus: f64, alpha: f64 },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
}

/// Probability distribution over vertices. Entries are nonnegative and sum to
/// one within 1e-12; every walk step renormalizes to absorb float drift.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, v: usize) -> Self {
        assert!(v < n);
        let mut probs = vec![0.0; n];
        probs[v] = 1.0;
        Self { probs }
    }

    /// U_S, uniform on a nonempty set.
    pub fn uniform_on(n: usize, set: &VertexSet) -> Result<Self, WalkError> {
        if set.is_empty() {
            return Err(WalkError::InvalidDistribution("empty support".into()));
        }
        let w = 1.0 / set.size() as f64;
        let mut probs = vec![0.0; n];
        for v in set.iter() {
            probs[v] = w;
        }
        Ok(Self { probs })
    }

    pub fn from_vec(probs: Vec<f64>) -> Result<Self, WalkError> {
        if probs.iter().any(|&p| p < 0.0 || !p.is_finite()) {
            return Err(WalkError::InvalidDistribution(
                "entries must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(WalkError::InvalidDistribution(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn l2_squared(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }
}

/// One step of the non-lazy walk: (Pp)(v) = sum over u ~ v of p(u)/d,
/// renormalized.
pub fn step(g: &RegularGraph, p: &Distribution) -> Distribution {
    let inv_d = 1.0 / g.d() as f64;
    let mut next = vec![0.0; g.n()];
    for (v, out) in next.iter_mut().enumerate() {
        let mut acc = 0.0;
        for &u in g.neighbors(v) {
            acc += p.probs[u as usize];
        }
        *out = acc * inv_d;
    }
    let sum: f64 = next.iter().sum();
    for x in next.iter_mut() {
        *x /= sum;
    }
    Distribution { probs: next }
}

/// d_TV(p, q) = (1/2) sum |p(v) - q(v)|, in [0, 1].
pub fn variation_distance(p: &Distribution, q: &Distribution) -> f64 {
    0.5 * p
        .probs
        .iter()
        .zip(&q.probs)
        .map(|(a, b)| (a - b).abs())
        .sum::<f64>()
}

/// Which initial distributions a trace follows.
#[derive(Debug, Clone, PartialEq)]
pub enum Starts {
    /// Every point mass; the per-step max equals the true d_TV(t) by convexity.
    AllPointMasses,
    /// A seeded sample of point masses; maxima are lower bounds.
    SampledPointMasses { count: usize, seed: u64 },
    Explicit(Vec<Distribution>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub t: usize,
    /// Max over tracked starts of d_TV(P^t p, pi).
    pub d_tv: f64,
    /// Max over tracked starts of ||P^t p||_2^2.
    pub l2sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkTrace {
    /// One point per step, t = 0..=t_max.
    pub steps: Vec<TracePoint>,
    pub exactness: Exactness,
}

impl WalkTrace {
    pub fn d_tv_at(&self, t: usize) -> Option<f64> {
        self.steps.get(t).map(|p| p.d_tv)
    }
}

/// Evolves a block of distributions in lockstep.
///
/// Rows are vertices, columns are starts; one buffer swap per step. Columns
/// renormalize every step, mirroring `step`.
struct Block {
    cur: Vec<f64>,
    next: Vec<f64>,
    n: usize,
    cols: usize,
}

impl Block {
    fn from_columns(n: usize, columns: &[&[f64]]) -> Self {
        let cols = columns.len();
        let mut cur = vec![0.0; n * cols];
        for (c, col) in columns.iter().enumerate() {
            for v in 0..n {
                cur[v * cols + c] = col[v];
            }
        }
        Self {
            cur,
            next: vec![0.0; n * cols],
            n,
            cols,
        }
    }

    fn step(&mut self, g: &RegularGraph) {
        let cols = self.cols;
        let inv_d = 1.0 / g.d() as f64;
        self.next.fill(0.0);
        for v in 0..self.n {
            let (head, row_v) = {
                // split_at_mut keeps the accumulation target disjoint from reads
                let row = &mut self.next[v * cols..(v + 1) * cols];
                (&self.cur, row)
            };
            for &u in g.neighbors(v) {
                let row_u = &head[u as usize * cols..(u as usize + 1) * cols];
                for c in 0..cols {
                    row_v[c] += row_u[c];
                }
            }
            for x in row_v.iter_mut() {
                *x *= inv_d;
            }
        }
        // per-column renormalization
        let mut sums = vec![0.0; cols];
        for v in 0..self.n {
            for c in 0..cols {
                sums[c] += self.next[v * cols + c];
            }
        }
        for v in 0..self.n {
            for c in 0..cols {
                self.next[v * cols + c] /= sums[c];
            }
        }
        std::mem::swap(&mut self.cur, &mut self.next);
    }

    /// (max d_tv to uniform, max l2sq) over columns.
    fn metrics(&self) -> (f64, f64) {
        let pi = 1.0 / self.n as f64;
        let cols = self.cols;
        let mut tv = vec![0.0; cols];
        let mut l2 = vec![0.0; cols];
        for v in 0..self.n {
            for c in 0..cols {
                let x = self.cur[v * cols + c];
                tv[c] += (x - pi).abs();
                l2[c] += x * x;
            }
        }
        let max_tv = tv.iter().fold(0.0f64, |a, &b| a.max(b)) * 0.5;
        let max_l2 = l2.iter().fold(0.0f64, |a, &b| a.max(b));
        (max_tv, max_l2)
    }
}

/// Caps block width so the two evolution buffers stay within ~16 MB each.
const BLOCK_COLS: usize = 512;

fn start_columns(g: &RegularGraph, starts: &Starts) -> (Vec<Vec<f64>>, Exactness) {
    let n = g.n();
    match starts {
        Starts::AllPointMasses => (
            (0..n).map(|v| Distribution::point_mass(n, v).probs).collect(),
            Exactness::Exact,
        ),
        Starts::SampledPointMasses { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut verts: Vec<usize> = (0..n).collect();
            verts.shuffle(&mut rng);
            verts.truncate((*count).clamp(1, n));
            (
                verts
                    .into_iter()
                    .map(|v| Distribution::point_mass(n, v).probs)
                    .collect(),
                Exactness::LowerBound,
            )
        }
        Starts::Explicit(list) => (
            list.iter().map(|d| d.probs.clone()).collect(),
            Exactness::LowerBound,
        ),
    }
}

/// Evolves every start for `t_max` steps, recording per-step d_tv and l2sq
/// maxima (t = 0 included). With all point masses the d_tv column is the true
/// d_TV(t): the max over initial distributions is attained at a vertex.
pub fn trace_walk(g: &RegularGraph, starts: &Starts, t_max: usize) -> Result<WalkTrace, WalkError> {
    if t_max == 0 {
        return Err(WalkError::BudgetZero);
    }
    let (columns, exactness) = start_columns(g, starts);
    if columns.is_empty() {
        return Err(WalkError::InvalidDistribution("no starts".into()));
    }
    let mut steps: Vec<TracePoint> = (0..=t_max)
        .map(|t| TracePoint {
            t,
            d_tv: 0.0,
            l2sq: 0.0,
        })
        .collect();
    for chunk in columns.chunks(BLOCK_COLS) {
        let refs: Vec<&[f64]> = chunk.iter().map(|c| c.as_slice()).collect();
        let mut block = Block::from_columns(g.n(), &refs);
        let (tv, l2) = block.metrics();
        steps[0].d_tv = steps[0].d_tv.max(tv);
        steps[0].l2sq = steps[0].l2sq.max(l2);
        for point in steps.iter_mut().skip(1) {
            block.step(g);
            let (tv, l2) = block.metrics();
            point.d_tv = point.d_tv.max(tv);
            point.l2sq = point.l2sq.max(l2);
        }
    }
    Ok(WalkTrace { steps, exactness })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum MixingOutcome {
    Reached { tau: usize },
    NotReached { t_max: usize, last_d_tv: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingEstimate {
    pub epsilon: f64,
    pub outcome: MixingOutcome,
    pub exactness: Exactness,
}

/// First step t at which the tracked max d_TV drops to epsilon; exact iff all
/// point masses are tracked. Per-start d_TV to stationarity is non-increasing,
/// so each block can stop early once it falls below the threshold.
pub fn mixing_time(
    g: &RegularGraph,
    epsilon: f64,
    starts: &Starts,
    t_max: usize,
) -> Result<MixingEstimate, WalkError> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(WalkError::InvalidEpsilon(epsilon));
    }
    if t_max == 0 {
        return Err(WalkError::BudgetZero);
    }
    let (columns, exactness) = start_columns(g, starts);
    if columns.is_empty() {
        return Err(WalkError::InvalidDistribution("no starts".into()));
    }
    let mut tau = 0usize;
    let mut reached = true;
    let mut last = 0.0f64;
    for chunk in columns.chunks(BLOCK_COLS) {
        let refs: Vec<&[f64]> = chunk.iter().map(|c| c.as_slice()).collect();
        let mut block = Block::from_columns(g.n(), &refs);
        let mut block_reached = false;
        for t in 0..=t_max {
            if t > 0 {
                block.step(g);
            }
            let (tv, _) = block.metrics();
            last = last.max(tv);
            if tv <= epsilon {
                tau = tau.max(t);
                block_reached = true;
                break;
            }
        }
        if !block_reached {
            reached = false;
        }
    }
    let outcome = if reached {
        MixingOutcome::Reached { tau }
    } else {
        MixingOutcome::NotReached { t_max, last_d_tv: last }
    };
    Ok(MixingEstimate {
        epsilon,
        outcome,
        exactness,
    })
}

/// Onestep 2-norm decrease measurement against the C_delta/n floor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct L2DecreaseReport {
    pub p_l2sq: f64,
    pub after_l2sq: f64,
    /// C_delta / n with C_delta = delta + 5(1-delta)/4.
    pub floor: f64,
    /// (after - floor) / before; may be negative.
    pub excess_ratio: f64,
    /// sqrt(alpha * ln d / (xi * d)), the decrease-rate scale.
    pub scale: f64,
    /// alpha * ln d / (xi * d) <= 1.
    pub regime_rate_ok: bool,
    /// delta >= ((sqrt 5 - 2)/2) * alpha / d.
    pub regime_delta_ok: bool,
}

/// Measures the empirical one-step l2 decrease of `p` and reports it next to
/// the analytic scale. Regime violations warn through the flags; there is no
/// pass/fail on the hidden constant.
pub fn l2_decrease_audit(
    g: &RegularGraph,
    p: &Distribution,
    delta: f64,
    alpha: f64,
    xi: f64,
) -> L2DecreaseReport {
    let n = g.n() as f64;
    let d = g.d() as f64;
    let c_delta = delta + 5.0 * (1.0 - delta) / 4.0;
    let floor = c_delta / n;
    let before = p.l2_squared();
    let after = step(g, p).l2_squared();
    let rate = alpha * d.ln() / (xi * d);
    L2DecreaseReport {
        p_l2sq: before,
        after_l2sq: after,
        floor,
        excess_ratio: (after - floor) / before,
        scale: rate.sqrt(),
        regime_rate_ok: rate <= 1.0,
        regime_delta_ok: delta >= (5.0_f64.sqrt() - 2.0) / 2.0 * alpha / d - 1e-12,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmultReport {
    pub k: usize,
    pub t: usize,
    /// d_TV(k t)
    pub lhs: f64,
    /// (2 d_TV(t))^k
    pub rhs: f64,
    pub margin: f64,
    pub ok: bool,
}

/// Checks d_TV(kt) <= (2 d_TV(t))^k on an exact trace. The fact is a theorem;
/// a negative margin flags an implementation bug.
pub fn submultiplicativity_audit(
    trace: &WalkTrace,
    k: usize,
    t: usize,
) -> Result<SubmultReport, WalkError> {
    if trace.exactness != Exactness::Exact {
        return Err(WalkError::InexactTrace);
    }
    let kt = k * t;
    let lhs = trace
        .d_tv_at(kt)
        .ok_or(WalkError::IndexOutOfTrace { index: kt, len: trace.steps.len() })?;
    let base = trace
        .d_tv_at(t)
        .ok_or(WalkError::IndexOutOfTrace { index: t, len: trace.steps.len() })?;
    let rhs = (2.0 * base).powi(k as i32);
    let margin = rhs - lhs;
    Ok(SubmultReport {
        k,
        t,
        lhs,
        rhs,
        margin,
        ok: margin >= -crate::spectral::CHECK_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundPoint {
    pub t: usize,
    pub measured: f64,
    pub floor: f64,
}

/// Audit of the dense-pair mixing lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub alpha: f64,
    /// max(|S|,|T|)/n, the tightest size regime containing the pair.
    pub delta: f64,
    pub points: Vec<LowerBoundPoint>,
    /// Every measured value at least its floor (within 1e-9).
    pub ok: bool,
    /// log(1/delta) / log(d/alpha).
    pub theorem_floor: f64,
    /// First t with d_TV(P^t U_S, pi) <= 1/n, if reached: a lower bound on the
    /// true tau_{1/n} since only one start is tracked.
    pub measured_tau: Option<usize>,
    /// measured_tau / theorem_floor when both are available.
    pub tau_ratio: Option<f64>,
}

/// Evolves U_S = chi_S/|S| exactly and checks, at each t <= t_max,
/// d_TV(P^t U_S, pi) >= (1/2)(alpha/2d)^{2t} - min(|S|,|T|)/(2n) - 1e-9.
pub fn lower_bound_audit(
    g: &RegularGraph,
    pair: &SetPair,
    alpha: f64,
    t_max: usize,
) -> Result<LowerBoundReport, WalkError> {
    if !meets_alpha(pair.surplus, alpha) {
        return Err(WalkError::NotAWitness {
            surplus: pair.surplus,
            alpha,
        });
    }
    let n = g.n() as f64;
    let d = g.d() as f64;
    let smaller = pair.s.size().min(pair.t.size()) as f64;
    let base = (alpha / (2.0 * d)).powi(2);
    let pi = Distribution::uniform(g.n());
    let mut p = Distribution::uniform_on(g.n(), &pair.s)?;
    let mut points = Vec::with_capacity(t_max + 1);
    let mut ok = true;
    let mut measured_tau = None;
    for t in 0..=t_max {
        if t > 0 {
            p = step(g, &p);
        }
        let measured = variation_distance(&p, &pi);
        let floor = 0.5 * base.powi(t as i32) - smaller / (2.0 * n);
        if measured < floor - 1e-9 {
            ok = false;
        }
        if measured_tau.is_none() && measured <= 1.0 / n {
            measured_tau = Some(t);
        }
        points.push(LowerBoundPoint { t, measured, floor });
    }
    let delta = pair.s.size().max(pair.t.size()) as f64 / n;
    let theorem_floor = (1.0 / delta).ln() / (d / alpha).ln();
    let tau_ratio = measured_tau.map(|tau| tau as f64 / theorem_floor);
    Ok(LowerBoundReport {
        alpha,
        delta,
        points,
        ok,
        theorem_floor,
        measured_tau,
        tau_ratio,
    })
}
