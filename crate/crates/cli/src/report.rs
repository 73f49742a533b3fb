//! Every analysis on one dataset, each phase under a wall-clock budget.

use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use netclass::cliques::{enumerate_maximal_cliques_pivot, DEFAULT_CLIQUE_BUDGET};
use netclass::plb::best_fit_gamma;
use netclass::DegreeDistribution;
use serde_json::{json, Map, Value};

use crate::commands::{self, DiameterMode};
use crate::{envelope, Dataset};

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub phase_budget: Duration,
    pub samples: usize,
    pub rng_seed: u64,
    /// Leave out wall-clock times so repeated runs are byte-identical.
    pub timings: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            phase_budget: Duration::from_secs(120),
            samples: commands::DEFAULT_SAMPLES,
            rng_seed: commands::DEFAULT_RNG_SEED,
            timings: true,
        }
    }
}

type Phase = fn(&Dataset, &ReportOptions) -> Value;

fn phases() -> Vec<(&'static str, Phase)> {
    vec![
        ("closure", |d, _| commands::closure(d, false)),
        ("cliques", |d, _| {
            match enumerate_maximal_cliques_pivot(&d.graph, DEFAULT_CLIQUE_BUDGET) {
                Ok(set) => json!({
                    "algorithm": "pivot",
                    "count": set.len(),
                    "largest_size": set.largest().map_or(0, <[usize]>::len),
                }),
                Err(e) => json!({ "error": e.to_string() }),
            }
        }),
        ("triangle", |d, _| commands::triangle(d, false)),
        ("tkf", |d, _| commands::tkf(d, None).unwrap_or_else(|e| json!({ "error": e.to_string() }))),
        ("plb", |d, _| {
            let dd = DegreeDistribution::of(&d.graph);
            let run = || -> crate::Result<Value> {
                let search = best_fit_gamma(&dd, 0.0)?;
                let (mut fit, _) = commands::plb(d, search.best.gamma, 0.0, false)?;
                fit["gamma_source"] = json!("heuristic grid search");
                Ok(fit)
            };
            run().unwrap_or_else(|e| json!({ "error": e.to_string() }))
        }),
        ("metric", |d, _| {
            commands::diameter(d, DiameterMode::Exact, true, None)
                .unwrap_or_else(|e| json!({ "error": e.to_string() }))
        }),
        ("bct", |d, o| {
            commands::bct(d, o.samples, o.rng_seed, (0.5, 0.5), true)
                .unwrap_or_else(|e| json!({ "error": e.to_string() }))
        }),
    ]
}

/// Runs each phase on a worker thread. A phase that overruns its budget is
/// marked skipped and its worker is left to finish in the background.
pub fn run_report(data: Dataset, options: &ReportOptions) -> Value {
    let data = Arc::new(data);
    let mut blocks = Map::new();
    let mut timings = Map::new();
    let mut skipped = Vec::new();
    for (name, phase) in phases() {
        let (tx, rx) = mpsc::channel();
        let worker_data = Arc::clone(&data);
        let worker_options = options.clone();
        let started = Instant::now();
        thread::spawn(move || {
            let _ = tx.send(phase(&worker_data, &worker_options));
        });
        match rx.recv_timeout(options.phase_budget) {
            Ok(value) => {
                blocks.insert(name.into(), value);
            }
            Err(_) => {
                blocks.insert(
                    name.into(),
                    json!({ "skipped": true, "budget_seconds": options.phase_budget.as_secs_f64() }),
                );
                skipped.push(name);
            }
        }
        timings.insert(name.into(), json!(started.elapsed().as_secs_f64()));
    }
    let mut result = json!({
        "phases": blocks,
        "skipped": skipped,
        "rng_seed": options.rng_seed,
        "samples": options.samples,
    });
    if options.timings {
        result["wall_clock_seconds"] = Value::Object(timings);
    }
    envelope("report", Some(&data), result)
}
