use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Serialize;

use super::{Graph, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Treat every data line as an undirected edge. When false, only pairs
    /// listed in both directions become edges.
    pub symmetrize: bool,
    /// When false, a self-loop line is a parse error instead of being dropped.
    pub allow_self_loops: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            symmetrize: true,
            allow_self_loops: true,
        }
    }
}

/// Bookkeeping from ingestion, so raw and deduplicated edge counts can both be
/// reported.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LoadStats {
    pub comment_lines: usize,
    pub edge_lines: usize,
    pub self_loops: usize,
    /// Data lines that did not contribute a new undirected edge (repeats and
    /// reverse directions), excluding self-loops.
    pub duplicate_lines: usize,
    /// Pairs dropped because they were listed in one direction only
    /// (always zero when symmetrizing).
    pub unreciprocated: usize,
}

/// Reads a SNAP-style edge list: `#` comments, blank lines ignored, every other
/// line two whitespace-separated non-negative integer ids.
pub fn load_edge_list<R: Read>(source: R, options: LoadOptions) -> Result<(Graph, LoadStats)> {
    let mut reader = BufReader::new(source);
    let mut stats = LoadStats::default();
    let mut arcs: Vec<(u64, u64)> = Vec::new();
    let mut ids: Vec<u64> = Vec::new();
    let mut line = String::new();
    let mut line_no = 0usize;
    loop {
        line.clear();
        let read = reader.read_line(&mut line).map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::Parse {
                line: line_no + 1,
                message: "invalid UTF-8".into(),
            },
            _ => Error::Io(e),
        })?;
        if read == 0 {
            break;
        }
        line_no += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            stats.comment_lines += 1;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (parse_id(a, line_no)?, parse_id(b, line_no)?),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two vertex ids, found {:?}", trimmed),
                })
            }
        };
        stats.edge_lines += 1;
        ids.push(a);
        ids.push(b);
        if a == b {
            if !options.allow_self_loops {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("self-loop on vertex {a}"),
                });
            }
            stats.self_loops += 1;
            continue;
        }
        arcs.push((a, b));
    }

    ids.sort_unstable();
    ids.dedup();
    let index = |id: u64| ids.binary_search(&id).expect("id was recorded") as Vertex;

    let pairs: Vec<(Vertex, Vertex)> = if options.symmetrize {
        let mut pairs: Vec<(Vertex, Vertex)> = arcs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (index(a), index(b));
                (x.min(y), x.max(y))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        stats.duplicate_lines = arcs.len() - pairs.len();
        pairs
    } else {
        let mut directed: Vec<(Vertex, Vertex)> =
            arcs.iter().map(|&(a, b)| (index(a), index(b))).collect();
        directed.sort_unstable();
        directed.dedup();
        let mut pairs = Vec::new();
        let mut one_way = 0;
        for &(x, y) in &directed {
            let reverse = directed.binary_search(&(y, x)).is_ok();
            if !reverse {
                one_way += 1;
            } else if x < y {
                pairs.push((x, y));
            }
        }
        stats.unreciprocated = one_way;
        stats.duplicate_lines = arcs.len() - directed.len() + (directed.len() - one_way) / 2;
        pairs
    };

    Ok((Graph::from_sorted_pairs(ids, pairs), stats))
}

pub fn load_edge_list_path(path: impl AsRef<Path>, options: LoadOptions) -> Result<(Graph, LoadStats)> {
    load_edge_list(File::open(path)?, options)
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("not a vertex id: {token:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<(Graph, LoadStats)> {
        load_edge_list(text.as_bytes(), LoadOptions::default())
    }

    #[test]
    fn two_edge_path() {
        let (g, stats) = load("0 1\n1 2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(stats.edge_lines, 2);
    }

    #[test]
    fn self_loops_and_duplicates_dropped() {
        let (g, stats) = load("0 0\n0 1\n1 0").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(stats.self_loops, 1);
        assert_eq!(stats.duplicate_lines, 1);
        g.validate().unwrap();
    }

    #[test]
    fn comments_blank_lines_and_sparse_ids() {
        let text = "# Directed graph\n# FromNodeId\tToNodeId\n\n30\t7\n7\t1000000\n";
        let (g, stats) = load(text).unwrap();
        assert_eq!(stats.comment_lines, 2);
        assert_eq!(g.labels(), &[7, 30, 1_000_000]);
        assert_eq!(g.index_of(30), Some(1));
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && !g.has_edge(1, 2));
    }

    #[test]
    fn empty_input_is_empty_graph() {
        let (g, _) = load("").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (0, 0));
        let (g, _) = load("# only a comment\n").unwrap();
        assert_eq!(g.vertex_count(), 0);
    }

    #[test]
    fn malformed_lines_report_line_number() {
        match load("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load("0 1\n\n1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("5\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("-1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn strict_self_loops() {
        let opts = LoadOptions {
            allow_self_loops: false,
            ..LoadOptions::default()
        };
        assert!(matches!(
            load_edge_list("0 1\n2 2\n".as_bytes(), opts),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn reciprocal_only() {
        let opts = LoadOptions {
            symmetrize: false,
            ..LoadOptions::default()
        };
        let (g, stats) = load_edge_list("0 1\n1 0\n1 2\n2 3\n3 2\n3 2\n".as_bytes(), opts).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(2, 3) && !g.has_edge(1, 2));
        assert_eq!(stats.unreciprocated, 1);
        assert_eq!(stats.duplicate_lines, 3);
    }
}
