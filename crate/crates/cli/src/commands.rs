//! Command implementations. Each returns the rendered report plus exit-code
//! effects; precondition problems exit 2, size/regime refusals exit 3, and a
//! failed theorem cross-check exits 4.

use crate::args::*;
use crate::report::{self, Grade};
use crate::{CmdError, BAD_INPUT, CROSS_CHECK, INTERNAL, REFUSAL};
use mixcert_core::construct::{self, PlantedSidecar, VerifyEffort};
use mixcert_core::density::{self, SearchBudget, EXACT_ENUM_HARD_CAP};
use mixcert_core::graph::{self, RegularGraph, SetPair, VertexSet};
use mixcert_core::io::{edge_list_string, read_edge_list_path};
use mixcert_core::spectral::{
    self, cheeger_check, eml_check, tanner_bound, PhiEstimate, SpectralMethod, SpectralOptions,
    SpectralSummary, CHECK_TOLERANCE,
};
use mixcert_core::walk::{self, Exactness, MixingOutcome, Starts, WalkTrace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};

/// Rendered report plus exit effects.
pub struct CmdOutput {
    /// JSON report (absent for generate, which emits files).
    pub report: Option<String>,
    pub report_path: Option<PathBuf>,
    /// Human summary for stderr.
    pub summary: Option<String>,
    /// Nonzero exit requested despite a rendered report (cross-check failures).
    pub exit_code: i32,
}

impl CmdOutput {
    fn report(text: String, path: Option<PathBuf>) -> Self {
        Self {
            report: Some(text),
            report_path: path,
            summary: None,
            exit_code: 0,
        }
    }
}

fn load_graph(input: &GraphInput) -> Result<RegularGraph, CmdError> {
    let path = input
        .path()
        .ok_or_else(|| CmdError::new(BAD_INPUT, "missing graph path (positional or --graph)"))?;
    read_edge_list_path(path).map_err(|e| CmdError::new(BAD_INPUT, format!("{}: {e}", path.display())))
}

fn write_or_stdout(text: &str, path: Option<&Path>) -> Result<(), CmdError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CmdError::new(INTERNAL, format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_generate(family: &Family) -> Result<CmdOutput, CmdError> {
    match family {
        Family::RandomRegular { n, d, seed, out } => {
            let g = construct::random_regular(*n, *d, *seed).map_err(generation_error)?;
            write_or_stdout(&edge_list_string(&g), out.as_deref())?;
            Ok(CmdOutput {
                report: None,
                report_path: None,
                summary: Some(format!(
                    "random-regular n={} d={} seed={} edges={}",
                    n, d, seed, g.edge_count()
                )),
                exit_code: 0,
            })
        }
        Family::BipartiteRegular {
            size_s,
            size_t,
            degree,
            seed,
            out,
        } => {
            let edges =
                construct::bipartite_regular(*size_s, *size_t, *degree, *seed).map_err(generation_error)?;
            if *degree == 0 {
                // no regular-graph representation; emit the raw (empty) edge set
                write_or_stdout(&format!("{} {}\n", size_s + size_t, 0), out.as_deref())?;
            } else {
                let g = RegularGraph::build(size_s + size_t, &edges)
                    .map_err(|e| CmdError::new(INTERNAL, format!("gadget failed validation: {e}")))?;
                write_or_stdout(&edge_list_string(&g), out.as_deref())?;
            }
            Ok(CmdOutput {
                report: None,
                report_path: None,
                summary: Some(format!(
                    "bipartite-regular sizes={size_s}/{size_t} degree={degree} seed={seed}"
                )),
                exit_code: 0,
            })
        }
        Family::PlantedExpander(args) => generate_planted(args, false),
        Family::PlantedSsve(args) => generate_planted(args, true),
    }
}

fn generation_error(e: construct::ConstructError) -> CmdError {
    use construct::ConstructError::*;
    match e {
        GenerationFailure { .. } | Invariant(_) | Graph(_) => CmdError::new(INTERNAL, e.to_string()),
        _ => CmdError::new(BAD_INPUT, e.to_string()),
    }
}

fn generate_planted(args: &PlantedArgs, ssve: bool) -> Result<CmdOutput, CmdError> {
    let inst = if ssve {
        construct::planted_ssve(args.n, args.d, args.seed)
    } else {
        construct::planted_expander(args.n, args.d, args.seed)
    }
    .map_err(generation_error)?;
    let claims = (!args.skip_claims).then(|| {
        construct::verify_claims(
            &inst,
            &VerifyEffort {
                samples: args.samples,
                seed: args.seed,
            },
        )
    });
    write_or_stdout(&edge_list_string(&inst.graph), args.out.as_deref())?;
    let sidecar_path = args
        .sidecar
        .clone()
        .or_else(|| args.out.as_ref().map(|p| p.with_extension("json")));
    let sidecar = PlantedSidecar::new(&inst, claims.clone());
    let sidecar_text = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes");
    match &sidecar_path {
        Some(p) => std::fs::write(p, sidecar_text + "\n")
            .map_err(|e| CmdError::new(INTERNAL, format!("writing {}: {e}", p.display())))?,
        None => {
            if args.out.is_none() {
                eprintln!("note: no --out/--sidecar given; sidecar JSON not written");
            }
        }
    }
    let family = if ssve { "planted-ssve" } else { "planted-expander" };
    let claims_ok = claims
        .map(|c| {
            c.conductance.holds && c.density.holds && c.vertex_expansion.map_or(true, |v| v.holds)
        })
        .map(|ok| if ok { "claims ok" } else { "CLAIMS FAILED" })
        .unwrap_or("claims skipped");
    Ok(CmdOutput {
        report: None,
        report_path: None,
        summary: Some(format!(
            "{family} n={} d={} seed={} |S|=|T|={} ({claims_ok})",
            args.n,
            args.d,
            args.seed,
            inst.s_set.size()
        )),
        exit_code: 0,
    })
}

fn density_error(e: density::DensityError) -> CmdError {
    match e {
        density::DensityError::SizeCap { n, cap } => CmdError::new(
            REFUSAL,
            format!("n = {n} exceeds the exact cap {cap}; rerun with --mode heuristic"),
        ),
        other => CmdError::new(BAD_INPUT, other.to_string()),
    }
}

pub fn cmd_certify(args: &CertifyArgs) -> Result<CmdOutput, CmdError> {
    let g = load_graph(&args.graph)?;
    let use_exact = match args.mode {
        CertifyMode::Exact => true,
        CertifyMode::Heuristic => false,
        CertifyMode::Auto => g.n() <= args.exact_cap.min(EXACT_ENUM_HARD_CAP),
    };
    let warning = (args.alpha <= (g.d() as f64).sqrt()).then(|| {
        format!(
            "alpha = {} is at most sqrt(d) = {:.4}; even random graphs violate this regime",
            args.alpha,
            (g.d() as f64).sqrt()
        )
    });
    if let Some(w) = &warning {
        eprintln!("warning: {w}");
    }
    let cert = if use_exact {
        if g.n() > args.exact_cap.min(EXACT_ENUM_HARD_CAP) {
            return Err(CmdError::new(
                REFUSAL,
                format!(
                    "n = {} exceeds the exact cap {}; rerun with --mode heuristic",
                    g.n(),
                    args.exact_cap.min(EXACT_ENUM_HARD_CAP)
                ),
            ));
        }
        density::certify_exact(&g, args.alpha, args.delta).map_err(density_error)?
    } else {
        let seed = args.seed.ok_or_else(|| {
            CmdError::new(BAD_INPUT, "--seed is required for the heuristic search")
        })?;
        let budget = SearchBudget {
            restarts: args.restarts,
            max_steps: args.steps.unwrap_or(10 * g.n()),
        };
        density::search_witness(&g, args.alpha, args.delta, &budget, seed)
    };
    let config = json!({
        "graph": args.graph.path().map(|p| p.display().to_string()),
        "alpha": args.alpha,
        "delta": args.delta,
        "mode": if use_exact { "exact" } else { "heuristic" },
        "seed": args.seed,
        "restarts": args.restarts,
        "steps": args.steps,
        "exact_cap": args.exact_cap,
    });
    let body = report::CertificateJson::new(&cert, warning);
    let text = report::render("certify", config, body);
    write_or_stdout(&text, args.out.as_deref())?;
    Ok(CmdOutput {
        report: Some(text),
        report_path: args.out.clone(),
        summary: None,
        exit_code: 0,
    })
}

fn default_t_max(n: usize) -> usize {
    (10.0 * (n as f64).log2()).ceil() as usize
}

pub fn cmd_mix(args: &MixArgs) -> Result<CmdOutput, CmdError> {
    let g = load_graph(&args.graph)?;
    let t_max = args.t_max.unwrap_or_else(|| default_t_max(g.n()));
    let starts = match args.starts {
        StartsArg::All => Starts::AllPointMasses,
        StartsArg::Sampled => {
            let seed = args
                .seed
                .ok_or_else(|| CmdError::new(BAD_INPUT, "--seed is required for sampled starts"))?;
            Starts::SampledPointMasses {
                count: args.sample_count,
                seed,
            }
        }
    };
    let trace = walk::trace_walk(&g, &starts, t_max)
        .map_err(|e| CmdError::new(BAD_INPUT, e.to_string()))?;
    let est = mixing_from_trace(&trace, args.epsilon, t_max)
        .map_err(|e| CmdError::new(BAD_INPUT, e.to_string()))?;
    if let Some(csv_path) = &args.trace_csv {
        std::fs::write(csv_path, report::trace_csv(&trace))
            .map_err(|e| CmdError::new(INTERNAL, format!("writing {}: {e}", csv_path.display())))?;
    }
    let config = json!({
        "graph": args.graph.path().map(|p| p.display().to_string()),
        "epsilon": args.epsilon,
        "t_max": t_max,
        "starts": match args.starts { StartsArg::All => "all", StartsArg::Sampled => "sampled" },
        "sample_count": args.sample_count,
        "seed": args.seed,
        "trace_csv": args.trace_csv.as_ref().map(|p| p.display().to_string()),
    });
    #[derive(Serialize)]
    struct MixBody {
        mixing: report::MixingJson,
        trace_len: usize,
        final_d_tv: f64,
    }
    let body = MixBody {
        mixing: report::MixingJson::new(&est),
        trace_len: trace.steps.len(),
        final_d_tv: trace.steps.last().map(|p| p.d_tv).unwrap_or(f64::NAN),
    };
    let text = report::render("mix", config, body);
    write_or_stdout(&text, args.out.as_deref())?;
    Ok(CmdOutput::report(text, args.out.clone()))
}

/// tau from an already-computed trace; equivalent to walk::mixing_time because
/// per-start d_TV to stationarity is non-increasing.
fn mixing_from_trace(
    trace: &WalkTrace,
    epsilon: f64,
    t_max: usize,
) -> Result<walk::MixingEstimate, walk::WalkError> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(walk::WalkError::InvalidEpsilon(epsilon));
    }
    let outcome = match trace.steps.iter().find(|p| p.d_tv <= epsilon) {
        Some(p) => MixingOutcome::Reached { tau: p.t },
        None => MixingOutcome::NotReached {
            t_max,
            last_d_tv: trace.steps.last().map(|p| p.d_tv).unwrap_or(f64::NAN),
        },
    };
    Ok(walk::MixingEstimate {
        epsilon,
        outcome,
        exactness: trace.exactness,
    })
}

fn spectral_error(e: spectral::SpectralError) -> CmdError {
    match e {
        spectral::SpectralError::SizeCap { n, cap } => CmdError::new(
            REFUSAL,
            format!("n = {n} exceeds the dense cap {cap}; rerun with --mode iterative"),
        ),
        other => CmdError::new(INTERNAL, other.to_string()),
    }
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<CmdOutput, CmdError> {
    let g = load_graph(&args.graph)?;
    let opts = SpectralOptions {
        dense_cap: args.dense_cap,
        ..Default::default()
    };
    let method = match args.mode {
        SpectrumMode::ExactDense => SpectralMethod::ExactDense,
        SpectrumMode::Iterative => SpectralMethod::Iterative,
        SpectrumMode::Auto => {
            if g.n() <= args.dense_cap {
                SpectralMethod::ExactDense
            } else {
                SpectralMethod::Iterative
            }
        }
    };
    let summary = spectral::spectrum(&g, method, &opts).map_err(spectral_error)?;
    let config = json!({
        "graph": args.graph.path().map(|p| p.display().to_string()),
        "mode": format!("{method:?}"),
        "dense_cap": args.dense_cap,
    });
    #[derive(Serialize)]
    struct SpectrumBody {
        graph: report::GraphInfo,
        spectral: report::SpectralJson,
    }
    let body = SpectrumBody {
        graph: report::GraphInfo::new(&g),
        spectral: report::SpectralJson::new(&summary, g.d()),
    };
    let text = report::render("spectrum", config, body);
    write_or_stdout(&text, args.out.as_deref())?;
    Ok(CmdOutput::report(text, args.out.clone()))
}

#[derive(Serialize)]
struct ProbeCheck {
    probes: usize,
    min_margin: f64,
    ok: bool,
    grade: Grade,
}

#[derive(Serialize)]
struct CheegerJson {
    lambda2: f64,
    phi: f64,
    phi_grade: Grade,
    lower: f64,
    upper: f64,
    left_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    right_ok: Option<bool>,
    cut_probes: usize,
}

#[derive(Serialize)]
struct EnvelopeJson {
    probes: usize,
    max_excess: f64,
    ok: bool,
}

#[derive(Serialize)]
struct MonotoneJson {
    max_l2_increase: f64,
    ok: bool,
}

#[derive(Serialize)]
struct Lemma41Json {
    alpha: f64,
    delta: f64,
    pair: report::WitnessJson,
    min_slack: f64,
    ok: bool,
    theorem_floor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_tau_from_pair: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_ratio: Option<f64>,
    minimal: MinimalJson,
}

#[derive(Serialize)]
struct MinimalJson {
    pair: report::WitnessJson,
    degree_floor_s: usize,
    degree_floor_t: usize,
    d_min: usize,
    floors_ok: bool,
}

#[derive(Serialize)]
struct TheoremTable {
    alpha: f64,
    delta: f64,
    /// (log n / log(d/alpha))^2
    tau_upper_scale_global: f64,
    /// log n / log(d/alpha)
    tau_upper_scale_small_set: f64,
    /// log(1/delta) / log(d/alpha)
    tau_lower_floor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_over_upper_global: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_over_upper_small_set: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measured_over_lower_floor: Option<f64>,
}

#[derive(Serialize)]
struct VerifyBody {
    graph: report::GraphInfo,
    spectral: report::SpectralJson,
    eml: ProbeCheck,
    cheeger: CheegerJson,
    tanner: ProbeCheck,
    density: report::CertificateJson,
    mixing: report::MixingJson,
    submultiplicativity: ProbeCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope: Option<EnvelopeJson>,
    l2_monotonicity: MonotoneJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma41: Option<Lemma41Json>,
    theorems: TheoremTable,
    cross_check_failures: Vec<String>,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CmdOutput, CmdError> {
    let g = load_graph(&args.graph)?;
    let n = g.n();
    let d = g.d();
    let mut failures: Vec<String> = Vec::new();

    let sidecar: Option<PlantedSidecar> = match &args.sidecar {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CmdError::new(BAD_INPUT, format!("{}: {e}", path.display())))?;
            let sc: PlantedSidecar = serde_json::from_str(&text)
                .map_err(|e| CmdError::new(BAD_INPUT, format!("{}: {e}", path.display())))?;
            if sc.s.iter().chain(&sc.t).any(|&v| v >= n) || sc.s.is_empty() || sc.t.is_empty() {
                return Err(CmdError::new(BAD_INPUT, "sidecar sets out of range or empty"));
            }
            Some(sc)
        }
        None => None,
    };

    let alpha = args.alpha.unwrap_or(d as f64 / 4.0);
    let delta = args.delta.unwrap_or(1.0 / (d as f64 + 2.0));
    let epsilon = args.epsilon.unwrap_or(1.0 / n as f64);
    let t_max = args.t_max.unwrap_or_else(|| default_t_max(n));

    // spectral summary
    let method = if n <= args.dense_cap {
        SpectralMethod::ExactDense
    } else {
        SpectralMethod::Iterative
    };
    let summary = spectral::spectrum(&g, method, &SpectralOptions::default()).map_err(spectral_error)?;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    // expander mixing lemma over sampled pairs
    let eml = {
        let pairs: Vec<SetPair> = (0..args.samples)
            .map(|_| {
                let s = random_set(&mut rng, n);
                let t = random_set(&mut rng, n);
                SetPair::new(&g, s, t).expect("nonempty by construction")
            })
            .collect();
        let rep = eml_check(&g, &summary, &pairs);
        if !rep.violations.is_empty() {
            failures.push(format!("eml: {} violating pairs", rep.violations.len()));
        }
        ProbeCheck {
            probes: rep.pairs_checked,
            min_margin: rep.min_margin,
            ok: rep.violations.is_empty(),
            grade: Grade::Sampled,
        }
    };

    // Cheeger: exact phi when enumerable, otherwise the best sampled cut
    let cheeger = {
        let exact = density::min_conductance_exact(&g).ok();
        let cut_probes = if exact.is_some() { 0 } else { args.samples };
        let (phi, estimate, grade) = match &exact {
            Some((phi, _)) => (*phi, PhiEstimate::Exact(*phi), Grade::Exact),
            None => {
                let mut best = f64::INFINITY;
                for _ in 0..cut_probes {
                    let k = rng.random_range(1..=n / 2);
                    let cut = random_set_of_size(&mut rng, n, k);
                    best = best.min(graph::conductance_of_cut(&g, &cut).expect("size in range"));
                }
                (best, PhiEstimate::UpperBound(best), Grade::Sampled)
            }
        };
        let rep = cheeger_check(&summary, estimate);
        if !rep.left_ok || rep.right_ok == Some(false) {
            failures.push("cheeger: inequality violated".into());
        }
        CheegerJson {
            lambda2: rep.lambda2,
            phi,
            phi_grade: grade,
            lower: rep.lower,
            upper: rep.upper,
            left_ok: rep.left_ok,
            right_ok: rep.right_ok,
            cut_probes,
        }
    };

    // Tanner bound against measured vertex expansion on sampled sets
    let tanner = {
        let mut min_slack = f64::INFINITY;
        for _ in 0..args.samples {
            let k = rng.random_range(1..=n.max(2) / 2);
            let set = random_set_of_size(&mut rng, n, k);
            let psi = graph::vertex_boundary(&g, &set) as f64 / k as f64;
            min_slack = min_slack.min(psi - tanner_bound(summary.lambda, k, n));
        }
        if min_slack < -CHECK_TOLERANCE {
            failures.push(format!("tanner: bound exceeded by {:.3e}", -min_slack));
        }
        ProbeCheck {
            probes: args.samples,
            min_margin: min_slack,
            ok: min_slack >= -CHECK_TOLERANCE,
            grade: Grade::Sampled,
        }
    };

    // density certification, regime per n
    let warning = (alpha <= (d as f64).sqrt()).then(|| {
        format!(
            "alpha = {alpha} is at most sqrt(d) = {:.4}; even random graphs violate this regime",
            (d as f64).sqrt()
        )
    });
    let cert = if n <= args.exact_cap.min(EXACT_ENUM_HARD_CAP) {
        density::certify_exact(&g, alpha, delta).map_err(density_error)?
    } else {
        density::search_witness(
            &g,
            alpha,
            delta,
            &SearchBudget::default_for(n),
            args.seed,
        )
    };

    // exact or sampled walk trace
    let starts = if n <= 4096 {
        Starts::AllPointMasses
    } else {
        Starts::SampledPointMasses {
            count: 64,
            seed: args.seed,
        }
    };
    let trace = walk::trace_walk(&g, &starts, t_max)
        .map_err(|e| CmdError::new(BAD_INPUT, e.to_string()))?;
    let mixing = mixing_from_trace(&trace, epsilon, t_max)
        .map_err(|e| CmdError::new(BAD_INPUT, e.to_string()))?;
    if let Some(csv_path) = &args.trace_csv {
        std::fs::write(csv_path, report::trace_csv(&trace))
            .map_err(|e| CmdError::new(INTERNAL, format!("writing {}: {e}", csv_path.display())))?;
    }

    // sub-multiplicativity over the whole (k, t) grid of the trace
    let submult = {
        let mut probes = 0usize;
        let mut min_margin = f64::INFINITY;
        let mut ok = true;
        if trace.exactness == Exactness::Exact {
            for t in 1..=t_max {
                for k in 1..=(t_max / t) {
                    let rep = walk::submultiplicativity_audit(&trace, k, t)
                        .expect("indices within trace");
                    probes += 1;
                    min_margin = min_margin.min(rep.margin);
                    ok &= rep.ok;
                }
            }
        }
        if !ok {
            failures.push("submultiplicativity: margin below tolerance".into());
        }
        ProbeCheck {
            probes,
            min_margin,
            ok,
            grade: Grade::Exact,
        }
    };

    // spectral envelope, meaningful only for connected non-bipartite graphs
    let envelope = (g.is_connected() && !g.has_bipartite_component() && trace.exactness == Exactness::Exact)
        .then(|| {
            let sqrt_n = (n as f64).sqrt();
            let mut max_excess = f64::NEG_INFINITY;
            for p in &trace.steps {
                max_excess = max_excess.max(p.d_tv - summary.lambda.powi(p.t as i32) * sqrt_n);
            }
            let ok = max_excess <= CHECK_TOLERANCE;
            if !ok {
                failures.push(format!("envelope: exceeded by {max_excess:.3e}"));
            }
            EnvelopeJson {
                probes: n * trace.steps.len(),
                max_excess,
                ok,
            }
        });

    let l2_monotonicity = {
        let mut max_inc = f64::NEG_INFINITY;
        for w in trace.steps.windows(2) {
            max_inc = max_inc.max(w[1].l2sq - w[0].l2sq);
        }
        let ok = max_inc <= 1e-12;
        if !ok {
            failures.push(format!("l2 monotonicity: increase {max_inc:.3e}"));
        }
        MonotoneJson {
            max_l2_increase: max_inc,
            ok,
        }
    };

    // dense-pair lower-bound audit where a witness exists
    let audit_pair: Option<(SetPair, f64)> = if let Some(sc) = &sidecar {
        let s = VertexSet::from_members(n, sc.s.iter().copied());
        let t = VertexSet::from_members(n, sc.t.iter().copied());
        Some((
            SetPair::new(&g, s, t).map_err(|e| CmdError::new(BAD_INPUT, e.to_string()))?,
            alpha,
        ))
    } else {
        cert.witness.clone().map(|w| (w, alpha))
    };
    let lemma41 = match audit_pair {
        Some((pair, pair_alpha)) if graph::meets_alpha(pair.surplus, pair_alpha) => {
            let audit = walk::lower_bound_audit(&g, &pair, pair_alpha, t_max)
                .map_err(|e| CmdError::new(INTERNAL, e.to_string()))?;
            if !audit.ok {
                failures.push("lemma41: measured d_tv below the lower bound".into());
            }
            let minimal = density::minimize_witness(&g, &pair, pair_alpha)
                .map_err(|e| CmdError::new(INTERNAL, e.to_string()))?;
            let (ssz, tsz) = (
                minimal.pair.s.size() as f64,
                minimal.pair.t.size() as f64,
            );
            let floors_ok = minimal.degree_floor_s as f64 + 1e-9
                >= pair_alpha / 2.0 * (tsz / ssz).sqrt()
                && minimal.degree_floor_t as f64 + 1e-9 >= pair_alpha / 2.0 * (ssz / tsz).sqrt()
                && minimal.d_min as f64 + 1e-9 >= pair_alpha * pair_alpha / (4.0 * d as f64);
            if !floors_ok {
                failures.push("lemma41: minimal-witness degree floors violated".into());
            }
            let min_slack = audit
                .points
                .iter()
                .map(|p| p.measured - p.floor)
                .fold(f64::INFINITY, f64::min);
            Some(Lemma41Json {
                alpha: pair_alpha,
                delta: audit.delta,
                pair: report::WitnessJson::new(&pair),
                min_slack,
                ok: audit.ok,
                theorem_floor: audit.theorem_floor,
                measured_tau_from_pair: audit.measured_tau,
                tau_ratio: audit.tau_ratio,
                minimal: MinimalJson {
                    pair: report::WitnessJson::new(&minimal.pair),
                    degree_floor_s: minimal.degree_floor_s,
                    degree_floor_t: minimal.degree_floor_t,
                    d_min: minimal.d_min,
                    floors_ok,
                },
            })
        }
        _ => None,
    };

    // theorem-consistency table: measured tau against the three bound shapes
    let theorems = {
        let log_ratio = (d as f64 / alpha).ln();
        let upper_global = if log_ratio > 0.0 {
            ((n as f64).ln() / log_ratio).powi(2)
        } else {
            f64::INFINITY
        };
        let upper_small = if log_ratio > 0.0 {
            (n as f64).ln() / log_ratio
        } else {
            f64::INFINITY
        };
        let lower_floor = if log_ratio > 0.0 {
            (1.0 / delta).ln() / log_ratio
        } else {
            0.0
        };
        let measured = match mixing.outcome {
            MixingOutcome::Reached { tau } => Some(tau),
            MixingOutcome::NotReached { .. } => None,
        };
        TheoremTable {
            alpha,
            delta,
            tau_upper_scale_global: upper_global,
            tau_upper_scale_small_set: upper_small,
            tau_lower_floor: lower_floor,
            measured_tau: measured,
            measured_over_upper_global: measured.map(|t| t as f64 / upper_global),
            measured_over_upper_small_set: measured.map(|t| t as f64 / upper_small),
            measured_over_lower_floor: measured
                .filter(|_| lower_floor > 0.0)
                .map(|t| t as f64 / lower_floor),
        }
    };

    let config = json!({
        "graph": args.graph.path().map(|p| p.display().to_string()),
        "sidecar": args.sidecar.as_ref().map(|p| p.display().to_string()),
        "seed": args.seed,
        "alpha": alpha,
        "delta": delta,
        "epsilon": epsilon,
        "t_max": t_max,
        "samples": args.samples,
        "exact_cap": args.exact_cap,
        "dense_cap": args.dense_cap,
        "trace_csv": args.trace_csv.as_ref().map(|p| p.display().to_string()),
    });
    let exit_code = if failures.is_empty() { 0 } else { CROSS_CHECK };
    let body = VerifyBody {
        graph: report::GraphInfo::new(&g),
        spectral: report::SpectralJson::new(&summary, d),
        eml,
        cheeger,
        tanner,
        density: report::CertificateJson::new(&cert, warning),
        mixing: report::MixingJson::new(&mixing),
        submultiplicativity: submult,
        envelope,
        l2_monotonicity,
        lemma41,
        theorems,
        cross_check_failures: failures,
    };
    let text = report::render("verify", config, body);
    write_or_stdout(&text, args.out.as_deref())?;
    Ok(CmdOutput {
        report: Some(text),
        report_path: args.out.clone(),
        summary: None,
        exit_code,
    })
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> VertexSet {
    let k = rng.random_range(1..=n);
    random_set_of_size(rng, n, k)
}

fn random_set_of_size(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VertexSet {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    VertexSet::from_members(n, verts[..k].iter().copied())
}

/// Spectral summary reused by tests.
pub fn spectrum_for(g: &RegularGraph, dense_cap: usize) -> Result<SpectralSummary, CmdError> {
    let method = if g.n() <= dense_cap {
        SpectralMethod::ExactDense
    } else {
        SpectralMethod::Iterative
    };
    spectral::spectrum(g, method, &SpectralOptions::default()).map_err(spectral_error)
}
