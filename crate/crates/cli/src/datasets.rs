//! Known SNAP datasets and a download cache.
//!
//! A dataset is cached as `<cache>/<name>.txt`, decompressed. After a download
//! the file is loaded and its vertex and edge counts compared with the
//! manifest. A vertex-count mismatch leaves a `<name>.txt.unverified` marker
//! next to the file; an edge-count mismatch alone is only reported, since
//! symmetrizing a directed listing legitimately changes `m`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Duration;

use flate2::read::GzDecoder;
use netclass::graph::LoadOptions;
use serde::Serialize;

use crate::{load_dataset, CliError, Result};

pub const SNAP_BASE_URL: &str = "https://snap.stanford.edu/data/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DatasetEntry {
    pub name: &'static str,
    /// File name under the base URL.
    pub remote: &'static str,
    pub n: usize,
    /// Edge count as listed by the source.
    pub m: usize,
}

pub const MANIFEST: [DatasetEntry; 4] = [
    DatasetEntry {
        name: "email-Enron",
        remote: "email-Enron.txt.gz",
        n: 36692,
        m: 183831,
    },
    DatasetEntry {
        name: "p2p-Gnutella04",
        remote: "p2p-Gnutella04.txt.gz",
        n: 10876,
        m: 39994,
    },
    DatasetEntry {
        name: "wiki-Vote",
        remote: "wiki-Vote.txt.gz",
        n: 7115,
        m: 103689,
    },
    DatasetEntry {
        name: "ca-GrQc",
        remote: "ca-GrQc.txt.gz",
        n: 5242,
        m: 14496,
    },
];

pub fn lookup(name: &str) -> Option<&'static DatasetEntry> {
    MANIFEST.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// `$NETCLASS_DATA_DIR`, else `data` under the current directory.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("NETCLASS_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"))
}

pub fn cached_path(entry: &DatasetEntry, cache_dir: &Path) -> PathBuf {
    cache_dir.join(format!("{}.txt", entry.name))
}

fn marker_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".unverified");
    PathBuf::from(name)
}

#[derive(Debug, Clone, Serialize)]
pub struct FetchOutcome {
    pub name: String,
    pub path: PathBuf,
    pub cache_hit: bool,
    pub n: usize,
    pub m: usize,
    pub expected_n: usize,
    pub expected_m: usize,
    /// `n` matches the manifest.
    pub verified: bool,
    /// The undirected edge count differs from the listed one.
    pub m_differs: bool,
    pub warning: Option<String>,
}

/// Fetches from SNAP unless the file is already cached.
pub fn fetch_dataset(name: &str, cache_dir: &Path) -> Result<FetchOutcome> {
    fetch_dataset_from(name, cache_dir, SNAP_BASE_URL, Duration::from_secs(30))
}

/// As [`fetch_dataset`] with an explicit base URL and connect timeout.
pub fn fetch_dataset_from(
    name: &str,
    cache_dir: &Path,
    base_url: &str,
    connect_timeout: Duration,
) -> Result<FetchOutcome> {
    let entry = lookup(name).ok_or_else(|| {
        let known: Vec<&str> = MANIFEST.iter().map(|e| e.name).collect();
        CliError::Usage(format!("unknown dataset {name:?}; known: {}", known.join(", ")))
    })?;
    let path = cached_path(entry, cache_dir);
    let cache_hit = path.is_file();
    if !cache_hit {
        fs::create_dir_all(cache_dir)?;
        let url = format!("{}/{}", base_url.trim_end_matches('/'), entry.remote);
        download_gz(&url, &path, connect_timeout)?;
    }
    verify(entry, path, cache_hit)
}

fn download_gz(url: &str, dest: &Path, connect_timeout: Duration) -> Result<()> {
    let agent: ureq::Agent = ureq::Agent::config_builder()
        .timeout_connect(Some(connect_timeout))
        .timeout_global(Some(Duration::from_secs(600)))
        .build()
        .into();
    let response = agent
        .get(url)
        .call()
        .map_err(|e| CliError::Fetch(format!("{url}: {e}")))?;
    let reader = response.into_body().into_reader();
    let partial = dest.with_extension("txt.part");
    let result = (|| -> io::Result<()> {
        let mut out = io::BufWriter::new(fs::File::create(&partial)?);
        io::copy(&mut GzDecoder::new(reader), &mut out)?;
        io::Write::flush(&mut out)?;
        Ok(())
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&partial);
        return Err(CliError::Fetch(format!("{url}: {e}")));
    }
    fs::rename(&partial, dest)?;
    Ok(())
}

fn verify(entry: &DatasetEntry, path: PathBuf, cache_hit: bool) -> Result<FetchOutcome> {
    let data = load_dataset(&path, LoadOptions::default())?;
    let (n, m) = (data.graph.vertex_count(), data.graph.edge_count());
    let verified = n == entry.n;
    let marker = marker_path(&path);
    let warning = if verified {
        if marker.exists() {
            fs::remove_file(&marker)?;
        }
        None
    } else {
        let msg = format!(
            "{}: expected n = {}, found n = {n}; file kept but marked unverified",
            entry.name, entry.n
        );
        fs::write(&marker, format!("{msg}\n"))?;
        Some(msg)
    };
    Ok(FetchOutcome {
        name: entry.name.to_string(),
        path,
        cache_hit,
        n,
        m,
        expected_n: entry.n,
        expected_m: entry.m,
        verified,
        m_differs: m != entry.m,
        warning,
    })
}
