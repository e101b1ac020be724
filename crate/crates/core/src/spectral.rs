//! Eigenvalues of the normalized adjacency P = A/d and the classical cross-checks:
//! spectral radius, expander mixing lemma, Cheeger bounds, Tanner vertex-expansion
//! bound, and the Alon-Boppana reference value.
//!
//! Two solver paths: a dense symmetric eigensolver (Householder tridiagonalization
//! followed by implicit-shift QL) for small graphs, and deflated power iteration
//! for the two extreme nontrivial eigenvalues at any size. P is never materialized
//! for the iterative path; matvecs divide by d on the fly.

use crate::graph::{RegularGraph, SetPair};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },
    #[error("n = {n} exceeds the dense-solver cap {cap}")]
    SizeCap { n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralMethod {
    ExactDense,
    Iterative,
}

/// Extreme eigenvalues of P with solver metadata.
///
/// lambda1 = 1 with the uniform eigenvector is forced by regularity and is
/// asserted rather than computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub lambda2: f64,
    pub lambda_n: f64,
    /// Spectral radius max{lambda2, |lambda_n|}.
    pub lambda: f64,
    pub method: SpectralMethod,
    /// max ||Pv - lambda v||_2 over the two reported eigenpairs.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SpectralOptions {
    /// Largest n admitted to the dense path.
    pub dense_cap: usize,
    /// Residual tolerance for the iterative path.
    pub tol: f64,
    pub max_iter: usize,
    /// Seed deriving the deterministic starting vector.
    pub seed: u64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            dense_cap: 4096,
            tol: 1e-8,
            max_iter: 100_000,
            seed: 0x6d69_7863,
        }
    }
}

/// y = P x.
fn matvec(g: &RegularGraph, x: &[f64], y: &mut [f64]) {
    let inv_d = 1.0 / g.d() as f64;
    for (v, out) in y.iter_mut().enumerate() {
        let mut acc = 0.0;
        for &u in g.neighbors(v) {
            acc += x[u as usize];
        }
        *out = acc * inv_d;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Computes lambda2 and lambda_n of P to the requested residual tolerance.
pub fn spectrum(
    g: &RegularGraph,
    method: SpectralMethod,
    opts: &SpectralOptions,
) -> Result<SpectralSummary, SpectralError> {
    match method {
        SpectralMethod::ExactDense => spectrum_dense(g, opts),
        SpectralMethod::Iterative => spectrum_iterative(g, opts),
    }
}

fn spectrum_dense(g: &RegularGraph, opts: &SpectralOptions) -> Result<SpectralSummary, SpectralError> {
    let n = g.n();
    if n > opts.dense_cap {
        return Err(SpectralError::SizeCap {
            n,
            cap: opts.dense_cap,
        });
    }
    let (values, vectors) = sym_eigen(dense_p(g), n)?;
    debug_assert!((values[n - 1] - 1.0).abs() < 1e-8, "lambda1 must be 1 on a regular graph");
    let lambda2 = values[n - 2];
    let lambda_n = values[0];
    let column = |j: usize| -> Vec<f64> { (0..n).map(|i| vectors[i * n + j]).collect() };
    let res2 = eigen_residual(g, lambda2, &column(n - 2));
    let resn = eigen_residual(g, lambda_n, &column(0));
    Ok(SpectralSummary {
        lambda2,
        lambda_n,
        lambda: lambda2.max(lambda_n.abs()),
        method: SpectralMethod::ExactDense,
        residual: res2.max(resn),
    })
}

fn eigen_residual(g: &RegularGraph, lambda: f64, v: &[f64]) -> f64 {
    let mut pv = vec![0.0; v.len()];
    matvec(g, v, &mut pv);
    let nrm = norm(v);
    pv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt()
        / nrm
}

fn spectrum_iterative(g: &RegularGraph, opts: &SpectralOptions) -> Result<SpectralSummary, SpectralError> {
    let top = power_extreme(g, Extreme::Largest, opts);
    let bottom = power_extreme(g, Extreme::Smallest, opts);
    if !top.converged {
        return Err(SpectralError::ConvergenceFailure {
            iterations: top.iterations,
            residual: top.residual,
        });
    }
    if !bottom.converged {
        return Err(SpectralError::ConvergenceFailure {
            iterations: bottom.iterations,
            residual: bottom.residual,
        });
    }
    let lambda2 = top.value;
    let lambda_n = bottom.value;
    Ok(SpectralSummary {
        lambda2,
        lambda_n,
        lambda: lambda2.max(lambda_n.abs()),
        method: SpectralMethod::Iterative,
        residual: top.residual.max(bottom.residual),
    })
}

#[derive(Clone, Copy)]
enum Extreme {
    /// lambda2: dominant eigenvalue of (P+I)/2 restricted to the complement
    /// of the uniform vector.
    Largest,
    /// lambda_n: dominant eigenvalue of (I-P)/2 on the same subspace.
    Smallest,
}

struct PowerResult {
    value: f64,
    vector: Vec<f64>,
    residual: f64,
    iterations: usize,
    converged: bool,
}

/// Deflated power iteration. Shifting by I keeps the iteration operator
/// positive semidefinite, so the dominant-in-magnitude eigenvalue is the
/// signed extreme one and both ends of the spectrum are reachable.
fn power_extreme(g: &RegularGraph, which: Extreme, opts: &SpectralOptions) -> PowerResult {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    deflate_uniform(&mut x);
    normalize(&mut x);

    let mut px = vec![0.0; n];
    let mut best = (f64::INFINITY, 0.0); // (residual, rayleigh)
    for it in 0..opts.max_iter {
        matvec(g, &x, &mut px);
        let rayleigh = dot(&x, &px);
        let residual = px
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - rayleigh * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < best.0 {
            best = (residual, rayleigh);
        }
        if residual < opts.tol {
            return PowerResult {
                value: rayleigh,
                vector: x,
                residual,
                iterations: it,
                converged: true,
            };
        }
        for v in 0..n {
            x[v] = match which {
                Extreme::Largest => 0.5 * (px[v] + x[v]),
                Extreme::Smallest => 0.5 * (x[v] - px[v]),
            };
        }
        deflate_uniform(&mut x);
        let nrm = norm(&x);
        if nrm < 1e-300 {
            // The shifted operator annihilated the iterate: the whole deflated
            // spectrum sits at the opposite end. Rayleigh from the last x stands.
            return PowerResult {
                value: best.1,
                vector: px,
                residual: best.0,
                iterations: it,
                converged: best.0 < opts.tol.max(1e-12),
            };
        }
        for v in x.iter_mut() {
            *v /= nrm;
        }
    }
    PowerResult {
        value: best.1,
        vector: x,
        residual: best.0,
        iterations: opts.max_iter,
        converged: false,
    }
}

fn deflate_uniform(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    for v in x.iter_mut() {
        *v -= mean;
    }
}

fn normalize(x: &mut [f64]) {
    let nrm = norm(x);
    if nrm > 0.0 {
        for v in x.iter_mut() {
            *v /= nrm;
        }
    }
}

/// Extreme eigenvectors of P on the complement of the uniform vector, which
/// coincide with the extreme eigenvectors of A - (d/n)J. Best effort: returns
/// the last iterates even when the residual target was not met, since callers
/// use these only to seed heuristic searches.
pub fn extreme_eigenvectors(g: &RegularGraph, opts: &SpectralOptions) -> (Vec<f64>, Vec<f64>) {
    let top = power_extreme(g, Extreme::Largest, opts);
    let bottom = power_extreme(g, Extreme::Smallest, opts);
    (top.vector, bottom.vector)
}

/// All eigenvalues of P, ascending. Dense path only.
pub fn dense_eigenvalues(g: &RegularGraph, cap: usize) -> Result<Vec<f64>, SpectralError> {
    if g.n() > cap {
        return Err(SpectralError::SizeCap { n: g.n(), cap });
    }
    Ok(sym_eigen(dense_p(g), g.n())?.0)
}

fn dense_p(g: &RegularGraph) -> Vec<f64> {
    let n = g.n();
    let inv_d = 1.0 / g.d() as f64;
    let mut a = vec![0.0; n * n];
    for v in 0..n {
        for &u in g.neighbors(v) {
            a[v * n + u as usize] = inv_d;
        }
    }
    a
}

/// Symmetric eigendecomposition of a row-major n x n matrix.
///
/// Householder reduction to tridiagonal form with accumulated transformations,
/// then QL with implicit shifts. Returns eigenvalues ascending and the matching
/// eigenvectors as columns of a row-major matrix.
fn sym_eigen(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>), SpectralError> {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut a, n, &mut d, &mut e);
    tql2(&mut d, &mut e, &mut a, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_j] = a[i * n + old_j];
        }
    }
    Ok((values, vectors))
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// On exit `a` holds the accumulated orthogonal transformation, `d` the
/// diagonal and `e[1..]` the subdiagonal.
fn tred2(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[i * n + k].abs()).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut fsum = 0.0;
                for j in 0..=l {
                    a[j * n + i] = a[i * n + j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    fsum += e[j] * a[i * n + j];
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        let l = i;
        if d[i] != 0.0 {
            for j in 0..l {
                let mut g = 0.0;
                for k in 0..l {
                    g += a[i * n + k] * a[k * n + j];
                }
                for k in 0..l {
                    a[k * n + j] -= g * a[k * n + i];
                }
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for j in 0..l {
            a[j * n + i] = 0.0;
            a[i * n + j] = 0.0;
        }
    }
}

/// QL with implicit shifts on a tridiagonal matrix, accumulating the rotations
/// into `z` so its columns become eigenvectors of the original matrix.
fn tql2(d: &mut [f64], e: &mut [f64], z: &mut [f64], n: usize) -> Result<(), SpectralError> {
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(SpectralError::ConvergenceFailure {
                    iterations: iter,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Per-pair margin report for the expander mixing lemma:
/// margin = lambda*d*sqrt(|S||T|) - | |E(S,T)| - d|S||T|/n |.
///
/// The lemma is a theorem, so a genuinely negative margin flags an internal
/// inconsistency (solver or counter bug) rather than a property of the graph.
#[derive(Debug, Clone, Serialize)]
pub struct EmlReport {
    pub pairs_checked: usize,
    pub min_margin: f64,
    /// Indices of pairs whose margin fell below -tolerance.
    pub violations: Vec<usize>,
    pub tolerance: f64,
}

pub const CHECK_TOLERANCE: f64 = 1e-6;

pub fn eml_check(g: &RegularGraph, summary: &SpectralSummary, pairs: &[SetPair]) -> EmlReport {
    let d = g.d() as f64;
    let n = g.n() as f64;
    let mut min_margin = f64::INFINITY;
    let mut violations = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        let s = pair.s.size() as f64;
        let t = pair.t.size() as f64;
        let lhs = (pair.est as f64 - d * s * t / n).abs();
        let rhs = summary.lambda * d * (s * t).sqrt();
        let margin = rhs - lhs;
        min_margin = min_margin.min(margin);
        if margin < -CHECK_TOLERANCE {
            violations.push(i);
        }
    }
    EmlReport {
        pairs_checked: pairs.len(),
        min_margin,
        violations,
        tolerance: CHECK_TOLERANCE,
    }
}

/// Which side of Cheeger's inequality a supplied conductance value can support.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiEstimate {
    /// Exact phi(G), both inequality sides checkable.
    Exact(f64),
    /// Upper bound from a specific cut; only the left inequality is checkable.
    UpperBound(f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct CheegerReport {
    pub lambda2: f64,
    pub phi: f64,
    pub phi_exact: bool,
    /// (1 - lambda2) / 2
    pub lower: f64,
    /// sqrt(2 (1 - lambda2))
    pub upper: f64,
    pub left_ok: bool,
    /// Present only when phi is exact.
    pub right_ok: Option<bool>,
}

pub fn cheeger_check(summary: &SpectralSummary, phi: PhiEstimate) -> CheegerReport {
    let lambda2 = summary.lambda2;
    let lower = (1.0 - lambda2) / 2.0;
    let upper = (2.0 * (1.0 - lambda2)).sqrt();
    let (value, exact) = match phi {
        PhiEstimate::Exact(v) => (v, true),
        PhiEstimate::UpperBound(v) => (v, false),
    };
    CheegerReport {
        lambda2,
        phi: value,
        phi_exact: exact,
        lower,
        upper,
        left_ok: lower <= value + CHECK_TOLERANCE,
        right_ok: exact.then(|| value <= upper + CHECK_TOLERANCE),
    }
}

/// Tanner's lower bound on the vertex expansion of every set of size `s`:
/// ((s/n)(1 - lambda^2) + lambda^2)^-1 - 1.
pub fn tanner_bound(lambda: f64, s: usize, n: usize) -> f64 {
    debug_assert!((1..=n).contains(&s));
    let ratio = s as f64 / n as f64;
    let lam2 = lambda * lambda;
    1.0 / (ratio * (1.0 - lam2) + lam2) - 1.0
}

/// Alon-Boppana reference 2 sqrt(d-1)/d, the Ramanujan threshold.
pub fn alon_boppana_ref(d: usize) -> f64 {
    assert!(d >= 2, "Alon-Boppana reference needs d >= 2");
    2.0 * ((d - 1) as f64).sqrt() / d as f64
}

pub fn is_ramanujan(lambda: f64, d: usize) -> bool {
    lambda <= alon_boppana_ref(d) + 1e-9
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn k4() -> RegularGraph {
        RegularGraph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn c6() -> RegularGraph {
        RegularGraph::build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap()
    }

    fn petersen() -> RegularGraph {
        RegularGraph::build(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            ],
        )
        .unwrap()
    }

    fn two_k4() -> RegularGraph {
        RegularGraph::build(
            8,
            &[
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn dense_known_spectra() {
        let opts = SpectralOptions::default();
        let s = spectrum(&k4(), SpectralMethod::ExactDense, &opts).unwrap();
        assert!((s.lambda2 + 1.0 / 3.0).abs() < 1e-10);
        assert!((s.lambda_n + 1.0 / 3.0).abs() < 1e-10);
        assert!((s.lambda - 1.0 / 3.0).abs() < 1e-10);

        let s = spectrum(&c6(), SpectralMethod::ExactDense, &opts).unwrap();
        assert!((s.lambda2 - 0.5).abs() < 1e-10);
        assert!((s.lambda_n + 1.0).abs() < 1e-10);
        assert!((s.lambda - 1.0).abs() < 1e-10);

        // Petersen spectrum is {3, 1, -2}/3
        let s = spectrum(&petersen(), SpectralMethod::ExactDense, &opts).unwrap();
        assert!((s.lambda2 - 1.0 / 3.0).abs() < 1e-10);
        assert!((s.lambda_n + 2.0 / 3.0).abs() < 1e-10);
        assert!(s.residual < 1e-8);
    }

    #[test]
    fn iterative_matches_dense() {
        let opts = SpectralOptions::default();
        for g in [k4(), c6(), petersen(), two_k4()] {
            let dense = spectrum(&g, SpectralMethod::ExactDense, &opts).unwrap();
            let iter = spectrum(&g, SpectralMethod::Iterative, &opts).unwrap();
            assert!(
                (dense.lambda2 - iter.lambda2).abs() < 1e-7,
                "lambda2 mismatch: {} vs {}",
                dense.lambda2,
                iter.lambda2
            );
            assert!(
                (dense.lambda_n - iter.lambda_n).abs() < 1e-7,
                "lambda_n mismatch: {} vs {}",
                dense.lambda_n,
                iter.lambda_n
            );
        }
    }

    #[test]
    fn disconnected_reports_lambda2_one() {
        let opts = SpectralOptions::default();
        let s = spectrum(&two_k4(), SpectralMethod::Iterative, &opts).unwrap();
        assert!((s.lambda2 - 1.0).abs() < 1e-7);
    }

    #[test]
    fn dense_cap_enforced() {
        let opts = SpectralOptions {
            dense_cap: 4,
            ..Default::default()
        };
        assert!(matches!(
            spectrum(&c6(), SpectralMethod::ExactDense, &opts),
            Err(SpectralError::SizeCap { n: 6, cap: 4 })
        ));
    }

    #[test]
    fn trace_identities() {
        // sum lambda_i = 0 (no self-loops), sum lambda_i^2 = n/d (closed 2-walks)
        for g in [k4(), c6(), petersen(), two_k4()] {
            let ev = dense_eigenvalues(&g, 4096).unwrap();
            let trace: f64 = ev.iter().sum();
            let trace2: f64 = ev.iter().map(|l| l * l).sum();
            assert!(trace.abs() < 1e-8, "trace = {trace}");
            let expected = g.n() as f64 / g.d() as f64;
            assert!((trace2 - expected).abs() < 1e-6 * g.n() as f64);
        }
    }

    #[test]
    fn bipartite_detection_matches_bfs() {
        for g in [k4(), c6(), petersen(), two_k4()] {
            let ev = dense_eigenvalues(&g, 4096).unwrap();
            let spectral_bipartite = (ev[0] + 1.0).abs() < 1e-9;
            assert_eq!(spectral_bipartite, g.has_bipartite_component());
        }
    }

    #[test]
    fn eml_examples() {
        let g = k4();
        let summary = spectrum(&g, SpectralMethod::ExactDense, &SpectralOptions::default()).unwrap();
        let s = VertexSet::from_members(4, [0, 1]);
        let t = VertexSet::from_members(4, [2, 3]);
        let v = VertexSet::full(4);
        let pairs = vec![
            SetPair::new(&g, s, t).unwrap(),
            SetPair::new(&g, v.clone(), v).unwrap(),
        ];
        let report = eml_check(&g, &summary, &pairs);
        assert!(report.violations.is_empty());
        // |4 - 3| = 1 <= (1/3)*3*2 = 2, margin 1
        assert!((report.min_margin - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cheeger_examples() {
        let opts = SpectralOptions::default();
        let s = spectrum(&c6(), SpectralMethod::ExactDense, &opts).unwrap();
        let rep = cheeger_check(&s, PhiEstimate::Exact(1.0 / 3.0));
        assert!(rep.left_ok && rep.right_ok == Some(true));
        assert!((rep.lower - 0.25).abs() < 1e-9);

        // left side tight on K4
        let s = spectrum(&k4(), SpectralMethod::ExactDense, &opts).unwrap();
        let rep = cheeger_check(&s, PhiEstimate::Exact(2.0 / 3.0));
        assert!(rep.left_ok && rep.right_ok == Some(true));
        assert!((rep.lower - 2.0 / 3.0).abs() < 1e-9);

        let s = spectrum(&two_k4(), SpectralMethod::ExactDense, &opts).unwrap();
        let rep = cheeger_check(&s, PhiEstimate::Exact(0.0));
        assert!(rep.left_ok && rep.right_ok == Some(true));

        let rep = cheeger_check(&s, PhiEstimate::UpperBound(0.5));
        assert!(rep.right_ok.is_none());
    }

    #[test]
    fn tanner_examples() {
        assert_eq!(tanner_bound(1.0, 3, 10), 0.0);
        assert_eq!(tanner_bound(0.4, 10, 10), 0.0);
        // Petersen, lambda = 2/3, s = 2 -> 0.8
        let b = tanner_bound(2.0 / 3.0, 2, 10);
        assert!((b - 0.8).abs() < 1e-12);
        // every 2-subset of Petersen has measured expansion >= 0.8
        let g = petersen();
        for u in 0..10 {
            for v in (u + 1)..10 {
                let set = VertexSet::from_members(10, [u, v]);
                let psi = crate::graph::vertex_boundary(&g, &set) as f64 / 2.0;
                assert!(psi + 1e-9 >= b);
            }
        }
    }

    #[test]
    fn alon_boppana_values() {
        assert_eq!(alon_boppana_ref(2), 1.0);
        assert!((alon_boppana_ref(3) - 2.0 * 2.0_f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(alon_boppana_ref(10), 0.6);
    }

    #[test]
    fn sym_eigen_random_matrix_properties() {
        // residual and orthogonality on a seeded dense symmetric matrix
        let n = 24;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = rng.random_range(-1.0..1.0);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let orig = a.clone();
        let (values, vectors) = sym_eigen(a, n).unwrap();
        for j in 0..n {
            let col: Vec<f64> = (0..n).map(|i| vectors[i * n + j]).collect();
            let mut av = vec![0.0; n];
            for i in 0..n {
                av[i] = (0..n).map(|k| orig[i * n + k] * col[k]).sum();
            }
            let res: f64 = av
                .iter()
                .zip(&col)
                .map(|(x, y)| (x - values[j] * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10, "residual {res} for eigenvalue {}", values[j]);
            let nrm = norm(&col);
            assert!((nrm - 1.0).abs() < 1e-10);
        }
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }
}
