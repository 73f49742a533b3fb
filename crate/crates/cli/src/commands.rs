//! One function per subcommand, each returning the `result` block of the
//! JSON output. Vertices are always reported by their original ids.

use netclass::cliques::{
    enumerate_all_cliques, enumerate_maximal_cliques, enumerate_maximal_cliques_backtracking,
    enumerate_maximal_cliques_pivot, maximum_clique, CliqueSet,
};
use netclass::closure::weak_closure_number;
use netclass::graph::ClosureRateCurve;
use netclass::metric::{
    bct_properties_report, eccentricities, eccentricity_decomposition_report, two_sweep,
};
use netclass::plb::{best_fit_gamma, plb_constant, plb_diagnostics, PlbDiagnostics};
use netclass::tkf::{tightly_knit_decomposition, verify_family, Epsilon};
use netclass::triangles::{triangle_count_naive, triangle_count_oriented};
use netclass::{DegreeDistribution, Graph};
use serde_json::{json, Value};

use crate::{CliError, Dataset, Result};

pub const DEFAULT_RNG_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: usize = 10_000;

pub fn closure(data: &Dataset, with_order: bool) -> Value {
    let profile = weak_closure_number(&data.graph);
    let mut out = json!({
        "c": profile.c_closure,
        "weak_c": profile.weak_closure,
    });
    if with_order {
        out["elimination_order"] = json!(data.labels(&profile.elimination_order));
        out["requirement"] = json!(profile.per_vertex_requirement);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueAlgorithm {
    ReverseSearch,
    Backtracking,
    Pivot,
}

impl CliqueAlgorithm {
    pub fn name(self) -> &'static str {
        match self {
            CliqueAlgorithm::ReverseSearch => "reverse-search",
            CliqueAlgorithm::Backtracking => "backtracking",
            CliqueAlgorithm::Pivot => "pivot",
        }
    }

    fn run(self, g: &Graph, budget: u64) -> netclass::Result<CliqueSet> {
        match self {
            CliqueAlgorithm::ReverseSearch => enumerate_maximal_cliques(g, budget),
            CliqueAlgorithm::Backtracking => enumerate_maximal_cliques_backtracking(g, budget),
            CliqueAlgorithm::Pivot => enumerate_maximal_cliques_pivot(g, budget),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueMode {
    /// Number of maximal cliques.
    Count,
    /// Every maximal clique.
    Enumerate,
    /// One largest clique.
    Max,
    /// Number of cliques of every size, maximal or not.
    CountAll,
}

pub fn cliques(data: &Dataset, mode: CliqueMode, algorithm: CliqueAlgorithm, budget: u64) -> Result<Value> {
    let g = &data.graph;
    Ok(match mode {
        CliqueMode::Count => {
            let set = algorithm.run(g, budget)?;
            json!({
                "algorithm": algorithm.name(),
                "count": set.len(),
                "largest_size": set.largest().map_or(0, <[usize]>::len),
                "fingerprint": set.fingerprint,
            })
        }
        CliqueMode::Enumerate => {
            let set = algorithm.run(g, budget)?;
            let listed: Vec<Vec<u64>> = set.cliques.iter().map(|c| data.labels(c)).collect();
            json!({
                "algorithm": algorithm.name(),
                "count": set.len(),
                "fingerprint": set.fingerprint,
                "cliques": listed,
            })
        }
        CliqueMode::Max => {
            if g.vertex_count() == 0 {
                return Err(CliError::Core(netclass::Error::Domain("graph has no vertices".into())));
            }
            let clique = maximum_clique(g, budget)?;
            json!({ "size": clique.len(), "clique": data.labels(&clique) })
        }
        CliqueMode::CountAll => json!({ "count": enumerate_all_cliques(g, budget, None)? }),
    })
}

pub fn triangle(data: &Dataset, naive: bool) -> Value {
    let stats = if naive {
        triangle_count_naive(&data.graph)
    } else {
        triangle_count_oriented(&data.graph)
    };
    json!({
        "algorithm": if naive { "naive" } else { "oriented" },
        "t": stats.triangles,
        "w": stats.wedges,
        "tau": stats.density,
        "operation_count": stats.operation_count,
    })
}

pub fn tkf(data: &Dataset, epsilon: Option<f64>) -> Result<Value> {
    let g = &data.graph;
    let mode = epsilon.map_or(Epsilon::Auto, Epsilon::Fixed);
    let family = tightly_knit_decomposition(g, mode)?;
    verify_family(g, &family)?;
    let clusters: Vec<Vec<u64>> = family.clusters.iter().map(|c| data.labels(&c.vertices)).collect();
    let certificates: Vec<Value> = family
        .clusters
        .iter()
        .map(|c| {
            json!({
                "size": c.size(),
                "center": g.label(c.center),
                "edges": c.edges,
                "triangles": c.triangles,
                "rho_edge": c.rho_edge,
                "rho_tri": c.rho_tri,
                "radius": c.radius,
            })
        })
        .collect();
    let phases: Vec<Value> = family
        .phases
        .iter()
        .map(|p| {
            json!({
                "epsilon": p.epsilon,
                "residual_density": p.residual_density,
                "edges_deleted": p.deletions.len(),
                "triangles_destroyed": p.triangles_destroyed,
                "seed": p.extraction.as_ref().map(|t| g.label(t.seed)),
                "supplement": p.extraction.as_ref().map(|t| t.supplement.len()),
                "triangles_saved": p.triangles_saved,
                "triangles_cut": p.triangles_cut,
            })
        })
        .collect();
    Ok(json!({
        "epsilon": match epsilon { Some(e) => json!(e), None => json!("auto") },
        "input_density": family.input_density,
        "clusters": clusters,
        "certificates": certificates,
        "captured_fraction": family.captured_fraction,
        "captured_triangles": family.captured_triangles,
        "total_triangles": family.total_triangles,
        "min_rho": family.min_rho(),
        "cleaning_destroyed": family.cleaning_destroyed(),
        "phases_executed": family.phases.len(),
        "phases": phases,
        "diagnostic": family.diagnostic,
        "verified": true,
    }))
}

/// The PLB fit and the structural diagnostics; the diagnostics come back
/// separately so the caller can write the tail-mass CSV.
pub fn plb(data: &Dataset, gamma: f64, shift: f64, search: bool) -> Result<(Value, PlbDiagnostics)> {
    let dd = DegreeDistribution::of(&data.graph);
    let fit = plb_constant(&dd, gamma, shift)?;
    let diagnostics = plb_diagnostics(&data.graph, &fit)?;
    let buckets: Vec<Value> = fit
        .buckets
        .iter()
        .map(|b| json!({"r": b.r, "lo": b.lo, "hi": b.hi, "mass": b.mass, "bound": b.bound, "slack": b.slack}))
        .collect();
    let mut out = json!({
        "gamma": fit.gamma,
        "shift": fit.shift,
        "c": fit.c,
        "n": fit.n,
        "isolated": fit.isolated,
        "binding_r": fit.buckets[fit.binding].r,
        "buckets": buckets,
        "diagnostics": serde_json::to_value(&diagnostics)?,
    });
    if search {
        out["gamma_search"] = serde_json::to_value(best_fit_gamma(&dd, shift)?)?;
    }
    Ok((out, diagnostics))
}

/// Restricts to the largest component when asked; reports what was kept.
pub fn metric_graph(g: &Graph, largest_cc: bool) -> (Graph, Value) {
    if largest_cc {
        let h = g.largest_component();
        let note = json!({
            "largest_component": true,
            "n": h.vertex_count(),
            "m": h.edge_count(),
        });
        (h, note)
    } else {
        (g.clone(), json!({ "largest_component": false }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiameterMode {
    Exact,
    TwoSweep,
}

pub fn diameter(data: &Dataset, mode: DiameterMode, largest_cc: bool, seed_label: Option<u64>) -> Result<Value> {
    let (g, scope) = metric_graph(&data.graph, largest_cc);
    let seed = match seed_label {
        None => None,
        Some(label) => Some(g.index_of(label).ok_or_else(|| {
            CliError::Usage(format!("seed vertex {label} is not in the analysed graph"))
        })?),
    };
    let sweep = two_sweep(&g, seed)?;
    let mut out = json!({
        "scope": scope,
        "two_sweep": {
            "seed": g.label(sweep.seed),
            "start": g.label(sweep.start),
            "end": g.label(sweep.end),
            "estimate": sweep.estimate,
        },
    });
    match mode {
        DiameterMode::Exact => {
            let ecc = eccentricities(&g)?;
            out["mode"] = json!("exact");
            out["diameter"] = json!(ecc.iter().max());
            out["radius"] = json!(ecc.iter().min());
        }
        DiameterMode::TwoSweep => {
            out["mode"] = json!("two-sweep");
            out["diameter_lower_bound"] = json!(sweep.estimate);
        }
    }
    Ok(out)
}

pub fn bct(
    data: &Dataset,
    samples: usize,
    rng_seed: u64,
    exponents: (f64, f64),
    largest_cc: bool,
) -> Result<Value> {
    let (g, scope) = metric_graph(&data.graph, largest_cc);
    let report = bct_properties_report(&g, samples, rng_seed, exponents)?;
    let decomposition = match report.tail.c_bct {
        Some(c) => match eccentricity_decomposition_report(&g, c) {
            Ok(d) => json!({
                "k": d.k,
                "c_bct": d.c_bct,
                "mean_tau": d.mean_tau,
                "log_term": d.log_term,
                "spread": d.spread,
                "rank_correlation": d.rank_correlation,
                "degenerate": d.degenerate,
            }),
            Err(e) => json!({ "error": e.to_string() }),
        },
        None => json!({ "error": "tail fit is degenerate; c_bct undefined" }),
    };
    Ok(json!({
        "scope": scope,
        "report": serde_json::to_value(&report)?,
        "eccentricity_decomposition": decomposition,
    }))
}

pub fn curve(data: &Dataset, max_k: Option<u32>) -> (Value, ClosureRateCurve) {
    let mut curve = ClosureRateCurve::of(&data.graph);
    if let Some(k) = max_k {
        curve.points.retain(|p| p.k <= k);
    }
    let points: Vec<Value> = curve
        .points
        .iter()
        .map(|p| json!({"k": p.k, "pairs": p.pairs, "closed": p.closed, "rate": p.rate()}))
        .collect();
    (json!({ "edge_density": curve.edge_density, "points": points }), curve)
}
