use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use netclass::cliques::DEFAULT_CLIQUE_BUDGET;
use netclass::graph::LoadOptions;
use netclass_cli::commands::{self, CliqueAlgorithm, CliqueMode, DiameterMode};
use netclass_cli::datasets::{default_cache_dir, fetch_dataset_from, SNAP_BASE_URL};
use netclass_cli::report::{run_report, ReportOptions};
use netclass_cli::{emit, envelope, load_dataset, render, CliError, Dataset, Result};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "netclass", version, about = "Graph analytics for social-network graph classes")]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge list: two integer ids per line, `#` comments. `.gz` is accepted.
    file: PathBuf,

    /// Keep only pairs listed in both directions.
    #[arg(long)]
    reciprocal_only: bool,

    /// Reject self-loops instead of dropping them.
    #[arg(long)]
    strict: bool,
}

impl Input {
    fn load(&self) -> Result<Dataset> {
        load_dataset(
            &self.file,
            LoadOptions {
                symmetrize: !self.reciprocal_only,
                allow_self_loops: !self.strict,
            },
        )
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Reverse,
    Backtrack,
    Pivot,
}

#[derive(Subcommand)]
enum Command {
    /// c-closure and weak closure numbers.
    Closure {
        #[command(flatten)]
        input: Input,
        /// Include the elimination order and per-vertex requirements.
        #[arg(long)]
        order: bool,
    },
    /// Maximal clique counting and enumeration.
    #[command(group(ArgGroup::new("mode").args(["count", "enumerate", "max", "count_all"])))]
    Cliques {
        #[command(flatten)]
        input: Input,
        /// Number of maximal cliques (the default).
        #[arg(long)]
        count: bool,
        /// List every maximal clique.
        #[arg(long)]
        enumerate: bool,
        /// One maximum clique.
        #[arg(long)]
        max: bool,
        /// Number of all non-empty cliques.
        #[arg(long)]
        count_all: bool,
        #[arg(long, value_enum, default_value = "pivot")]
        algorithm: AlgorithmArg,
        /// Abort after this many cliques.
        #[arg(long, default_value_t = DEFAULT_CLIQUE_BUDGET)]
        budget: u64,
    },
    /// Triangle and wedge counts and triangle density.
    Triangle {
        #[command(flatten)]
        input: Input,
        /// Check every wedge instead of using the degree orientation.
        #[arg(long)]
        naive: bool,
    },
    /// Tightly-knit family decomposition.
    Tkf {
        #[command(flatten)]
        input: Input,
        /// Cleaner threshold in (0, 1]; a quarter of the triangle density when omitted.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Power-law-bounded fit of the degree distribution.
    Plb {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        shift: f64,
        /// Also run the heuristic grid search over gamma.
        #[arg(long)]
        fit_gamma: bool,
        /// Write the tail-mass diagnostics as CSV.
        #[arg(long)]
        tail_csv: Option<PathBuf>,
    },
    /// Exact diameter or the two-sweep lower bound.
    #[command(group(ArgGroup::new("how").args(["exact", "two_sweep"])))]
    Diameter {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        two_sweep: bool,
        #[arg(long)]
        largest_cc: bool,
        /// Two-sweep start vertex (original id); highest degree when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Level-threshold distance properties on sampled pairs.
    Bct {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = commands::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = commands::DEFAULT_RNG_SEED)]
        rng_seed: u64,
        /// Level-size exponents x and y; thresholds are ⌈n^x⌉ and ⌈n^y⌉.
        #[arg(long, num_args = 2, value_names = ["X", "Y"], default_values_t = [0.5, 0.5])]
        exponents: Vec<f64>,
        #[arg(long)]
        largest_cc: bool,
    },
    /// Closure rate against number of common neighbors.
    Curve {
        #[command(flatten)]
        input: Input,
        /// Write the curve as CSV (k,pairs,closed,rate).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Every analysis, each under a time budget.
    Report {
        #[command(flatten)]
        input: Input,
        /// Seconds allowed per phase.
        #[arg(long, default_value_t = 120)]
        phase_budget: u64,
        #[arg(long, default_value_t = commands::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = commands::DEFAULT_RNG_SEED)]
        rng_seed: u64,
        /// Omit wall-clock times for byte-identical reruns.
        #[arg(long)]
        no_timings: bool,
    },
    /// Download a known SNAP dataset into the cache.
    Fetch {
        name: String,
        /// Defaults to $NETCLASS_DATA_DIR or ./data.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long, default_value = SNAP_BASE_URL)]
        base_url: String,
        #[arg(long, default_value_t = 30)]
        connect_timeout: u64,
    },
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

fn run(command: Command) -> Result<Value> {
    Ok(match command {
        Command::Closure { input, order } => {
            let data = input.load()?;
            envelope("closure", Some(&data), commands::closure(&data, order))
        }
        Command::Cliques {
            input,
            enumerate,
            max,
            count_all,
            algorithm,
            budget,
            ..
        } => {
            let data = input.load()?;
            let mode = if enumerate {
                CliqueMode::Enumerate
            } else if max {
                CliqueMode::Max
            } else if count_all {
                CliqueMode::CountAll
            } else {
                CliqueMode::Count
            };
            let algorithm = match algorithm {
                AlgorithmArg::Reverse => CliqueAlgorithm::ReverseSearch,
                AlgorithmArg::Backtrack => CliqueAlgorithm::Backtracking,
                AlgorithmArg::Pivot => CliqueAlgorithm::Pivot,
            };
            envelope("cliques", Some(&data), commands::cliques(&data, mode, algorithm, budget)?)
        }
        Command::Triangle { input, naive } => {
            let data = input.load()?;
            envelope("triangle", Some(&data), commands::triangle(&data, naive))
        }
        Command::Tkf { input, epsilon } => {
            let data = input.load()?;
            envelope("tkf", Some(&data), commands::tkf(&data, epsilon)?)
        }
        Command::Plb {
            input,
            gamma,
            shift,
            fit_gamma,
            tail_csv,
        } => {
            let data = input.load()?;
            let (result, diagnostics) = commands::plb(&data, gamma, shift, fit_gamma)?;
            if let Some(path) = tail_csv {
                write_file(&path, &diagnostics.tail_csv())?;
            }
            envelope("plb", Some(&data), result)
        }
        Command::Diameter {
            input,
            two_sweep,
            largest_cc,
            seed,
            ..
        } => {
            let data = input.load()?;
            let mode = if two_sweep { DiameterMode::TwoSweep } else { DiameterMode::Exact };
            envelope("diameter", Some(&data), commands::diameter(&data, mode, largest_cc, seed)?)
        }
        Command::Bct {
            input,
            samples,
            rng_seed,
            exponents,
            largest_cc,
        } => {
            let data = input.load()?;
            let result = commands::bct(&data, samples, rng_seed, (exponents[0], exponents[1]), largest_cc)?;
            envelope("bct", Some(&data), result)
        }
        Command::Curve { input, csv, max_k } => {
            let data = input.load()?;
            let (result, curve) = commands::curve(&data, max_k);
            if let Some(path) = csv {
                write_file(&path, &curve.to_csv())?;
            }
            envelope("curve", Some(&data), result)
        }
        Command::Report {
            input,
            phase_budget,
            samples,
            rng_seed,
            no_timings,
        } => {
            let data = input.load()?;
            let options = ReportOptions {
                phase_budget: Duration::from_secs(phase_budget),
                samples,
                rng_seed,
                timings: !no_timings,
            };
            run_report(data, &options)
        }
        Command::Fetch {
            name,
            cache_dir,
            base_url,
            connect_timeout,
        } => {
            let dir = cache_dir.unwrap_or_else(default_cache_dir);
            let outcome = fetch_dataset_from(&name, &dir, &base_url, Duration::from_secs(connect_timeout))?;
            if let Some(warning) = &outcome.warning {
                eprintln!("warning: {warning}");
            }
            envelope("fetch", None, serde_json::to_value(outcome)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|value| emit(&render(&value)?, cli.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
