//! Library side of the `netclass` command: dataset loading and caching, the
//! JSON produced by each subcommand, and the combined report.

pub mod commands;
pub mod datasets;
pub mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use netclass::graph::{load_edge_list, LoadOptions, LoadStats};
use netclass::Graph;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Bumped whenever a field is renamed or removed from any output.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] netclass::Error),

    #[error("{0}")]
    Usage(String),

    #[error("retrieval failed: {0}")]
    Fetch(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage errors (including out-of-range flag values), 1 for
    /// everything that went wrong with the data.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(netclass::Error::InvalidArgument(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// A graph with where it came from.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub path: PathBuf,
    pub raw_line_count: usize,
    pub graph: Graph,
    pub load: LoadStats,
}

#[derive(Debug, Clone, Serialize)]
pub struct DatasetInfo {
    pub path: String,
    pub raw_line_count: usize,
    pub n: usize,
    pub m: usize,
    pub load: LoadStats,
}

impl Dataset {
    pub fn info(&self) -> DatasetInfo {
        DatasetInfo {
            path: self.path.display().to_string(),
            raw_line_count: self.raw_line_count,
            n: self.graph.vertex_count(),
            m: self.graph.edge_count(),
            load: self.load.clone(),
        }
    }

    /// Original ids for a list of dense vertex indices.
    pub fn labels(&self, vertices: &[usize]) -> Vec<u64> {
        vertices.iter().map(|&v| self.graph.label(v)).collect()
    }
}

/// Reads an edge list, gunzipping when the name ends in `.gz`.
pub fn load_dataset(path: &Path, options: LoadOptions) -> Result<Dataset> {
    let file_err = |source| CliError::File {
        path: path.to_path_buf(),
        source,
    };
    let raw = fs::read(path).map_err(file_err)?;
    let bytes = if path.extension().is_some_and(|e| e == "gz") {
        let mut out = Vec::new();
        GzDecoder::new(&raw[..]).read_to_end(&mut out).map_err(file_err)?;
        out
    } else {
        raw
    };
    let raw_line_count = count_lines(&bytes);
    let (graph, load) = load_edge_list(&bytes[..], options)?;
    Ok(Dataset {
        path: path.to_path_buf(),
        raw_line_count,
        graph,
        load,
    })
}

fn count_lines(bytes: &[u8]) -> usize {
    let newlines = bytes.iter().filter(|&&b| b == b'\n').count();
    newlines + usize::from(bytes.last().is_some_and(|&b| b != b'\n'))
}

/// The common wrapper around every command's result.
pub fn envelope(command: &str, dataset: Option<&Dataset>, result: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "dataset": dataset.map(Dataset::info),
        "result": result,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(value: &Value) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Writes to `out` when given, stdout otherwise.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
