use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{Graph, TwoHopCounter};
use crate::error::{invalid, Result};

/// Vertex counts per degree, `n(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeDistribution {
    counts: Vec<u64>,
    n: u64,
    m: u64,
}

impl DegreeDistribution {
    pub fn of(g: &Graph) -> Self {
        let mut counts = vec![0u64; g.max_degree() + 1];
        for v in g.vertices() {
            counts[g.degree(v)] += 1;
        }
        if g.vertex_count() == 0 {
            counts.clear();
        }
        DegreeDistribution {
            counts,
            n: g.vertex_count() as u64,
            m: g.edge_count() as u64,
        }
    }

    /// From raw counts where `counts[d] = n(d)`. The degree sum must be even.
    /// Trailing zero counts are trimmed so `d_max` has a non-zero count.
    pub fn from_counts(mut counts: Vec<u64>) -> Result<Self> {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        let degree_sum: u64 = counts.iter().enumerate().map(|(d, &c)| d as u64 * c).sum();
        if !degree_sum.is_multiple_of(2) {
            return invalid(format!("degree sum {degree_sum} is odd"));
        }
        Ok(DegreeDistribution {
            n: counts.iter().sum(),
            m: degree_sum / 2,
            counts,
        })
    }

    pub fn vertex_count(&self) -> u64 {
        self.n
    }

    pub fn edge_count(&self) -> u64 {
        self.m
    }

    /// `n(d)`, zero beyond `d_max`.
    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `Σ_{d ≥ k} n(d)`.
    pub fn tail_mass(&self, k: usize) -> u64 {
        self.counts.iter().skip(k).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosureRatePoint {
    pub k: u32,
    pub pairs: u64,
    pub closed: u64,
}

impl ClosureRatePoint {
    pub fn rate(&self) -> f64 {
        if self.pairs == 0 {
            0.0
        } else {
            self.closed as f64 / self.pairs as f64
        }
    }
}

/// For each number of common neighbors `k ≥ 1`: how many vertex pairs share
/// exactly `k` neighbors and how many of those are adjacent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureRateCurve {
    pub points: Vec<ClosureRatePoint>,
    pub edge_density: f64,
}

impl ClosureRateCurve {
    /// Enumerates pairs by iterating wedges, so cost is `O(Σ deg²)`.
    pub fn of(g: &Graph) -> Self {
        let n = g.vertex_count();
        let (pairs, closed) = g
            .vertices()
            .into_par_iter()
            .fold(
                || (TwoHopCounter::new(n), Vec::<u64>::new(), Vec::<u64>::new()),
                |(mut counter, mut pairs, mut closed), u| {
                    counter.for_each(g, u, |w| w > u, |w, k| {
                        let k = k as usize;
                        if pairs.len() <= k {
                            pairs.resize(k + 1, 0);
                            closed.resize(k + 1, 0);
                        }
                        pairs[k] += 1;
                        if g.has_edge(u, w) {
                            closed[k] += 1;
                        }
                    });
                    (counter, pairs, closed)
                },
            )
            .map(|(_, p, c)| (p, c))
            .reduce(|| (Vec::new(), Vec::new()), |a, b| (add_hist(a.0, b.0), add_hist(a.1, b.1)));

        let points = pairs
            .iter()
            .zip(closed.iter())
            .enumerate()
            .filter(|&(k, (&p, _))| k >= 1 && p > 0)
            .map(|(k, (&p, &c))| ClosureRatePoint {
                k: k as u32,
                pairs: p,
                closed: c,
            })
            .collect();
        let all_pairs = n as f64 * (n as f64 - 1.0) / 2.0;
        ClosureRateCurve {
            points,
            edge_density: if all_pairs > 0.0 {
                g.edge_count() as f64 / all_pairs
            } else {
                0.0
            },
        }
    }

    pub fn point(&self, k: u32) -> Option<&ClosureRatePoint> {
        self.points.iter().find(|p| p.k == k)
    }

    /// `k,pairs,closed,rate` with LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,pairs,closed,rate\n");
        for p in &self.points {
            writeln!(out, "{},{},{},{}", p.k, p.pairs, p.closed, p.rate()).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some("k,pairs,closed,rate") {
            return invalid("missing closure-rate CSV header");
        }
        let mut points = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let fields: Vec<&str> = line.split(',').collect();
            let parse = |s: &str| s.parse::<u64>().or_else(|_| invalid(format!("bad field {s:?}")));
            if fields.len() != 4 {
                return invalid(format!("bad CSV row {line:?}"));
            }
            points.push(ClosureRatePoint {
                k: parse(fields[0])? as u32,
                pairs: parse(fields[1])?,
                closed: parse(fields[2])?,
            });
        }
        Ok(ClosureRateCurve {
            points,
            edge_density: f64::NAN,
        })
    }
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
