//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Vertices are dense indices `0..n`. Every graph carries a label map back to
//! the identifiers of the input it was built from; labels are kept sorted so a
//! label lookup is a binary search.

mod bfs;
mod io;
mod stats;

pub use bfs::{BfsLevels, UNREACHABLE};
pub use io::{load_edge_list, load_edge_list_path, LoadOptions, LoadStats};
pub use stats::{ClosureRateCurve, ClosureRatePoint, DegreeDistribution};

use crate::error::{invalid, Error, Result};

/// Dense vertex index.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    labels: Vec<u64>,
}

impl Graph {
    pub fn empty() -> Self {
        Graph {
            offsets: vec![0],
            targets: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Builds a graph on `n` vertices labelled `0..n`. Self-loops and repeated
    /// edges are dropped, and each pair is taken as an undirected edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u != v {
                pairs.push((u.min(v) as Vertex, u.max(v) as Vertex));
            }
        }
        Ok(Self::from_sorted_pairs((0..n as u64).collect(), pairs))
    }

    /// `pairs` must hold `(lo, hi)` with `lo < hi`; they are sorted and deduplicated here.
    pub(crate) fn from_sorted_pairs(labels: Vec<u64>, mut pairs: Vec<(Vertex, Vertex)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0 as Vertex; offsets[n]];
        for &(u, v) in &pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }
        for &(u, v) in &pairs {
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            offsets,
            targets,
            labels,
        }
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&(b as Vertex)).is_ok()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return invalid(format!("vertex {v} out of range (n = {})", self.vertex_count()));
        }
        Ok(())
    }

    /// |N(u) ∩ N(v)| by merging the two sorted neighbor lists.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return invalid("common neighbors of a vertex with itself");
        }
        Ok(intersection_size(self.neighbors(u), self.neighbors(v)))
    }

    /// Jaccard similarity of the edge `(u, v)`:
    /// `|N(u) ∩ N(v)| / (|N(u) ∪ N(v)| - 2)`, and `0` for an isolated edge.
    pub fn jaccard_similarity(&self, u: usize, v: usize) -> Result<f64> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.has_edge(u, v) {
            return invalid(format!("({u}, {v}) is not an edge"));
        }
        Ok(jaccard_of_edge(self.neighbors(u), self.neighbors(v)))
    }

    /// Number of two-hop paths, `Σ_v C(deg(v), 2)`.
    pub fn wedge_count(&self) -> u64 {
        self.vertices().map(|v| choose2(self.degree(v) as u64)).sum()
    }

    /// Subgraph induced by `vertices`, which may be given in any order and
    /// with repeats. The result keeps the ascending dense order of the parent,
    /// so its labels stay sorted.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut keep: Vec<usize> = Vec::with_capacity(vertices.len());
        for &v in vertices {
            self.check_vertex(v)?;
            keep.push(v);
        }
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![Vertex::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i as Vertex;
        }
        let mut pairs = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w as usize];
                if j != Vertex::MAX && (i as Vertex) < j {
                    pairs.push((i as Vertex, j));
                }
            }
        }
        let labels = keep.iter().map(|&v| self.labels[v]).collect();
        Ok(Graph::from_sorted_pairs(labels, pairs))
    }

    /// Graph with the same vertices and a subset of the edges.
    pub(crate) fn with_edges(&self, pairs: Vec<(Vertex, Vertex)>) -> Graph {
        Graph::from_sorted_pairs(self.labels.clone(), pairs)
    }

    /// Checks simplicity, symmetry, sortedness and the label map.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        if self.offsets.len() != n + 1 || !self.targets.len().is_multiple_of(2) {
            return Err(Error::Domain("inconsistent adjacency arrays".into()));
        }
        if self.labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("labels not strictly ascending".into()));
        }
        for v in 0..n {
            let nbrs = self.neighbors(v);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Domain(format!("neighbors of {v} not strictly ascending")));
            }
            for &w in nbrs {
                let w = w as usize;
                if w >= n || w == v {
                    return Err(Error::Domain(format!("bad neighbor {w} of {v}")));
                }
                if self.neighbors(w).binary_search(&(v as Vertex)).is_err() {
                    return Err(Error::Domain(format!("edge ({v}, {w}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Connected components as sorted vertex lists, largest first (ties by
    /// smallest member).
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w as usize);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn largest_component(&self) -> Graph {
        match self.connected_components().first() {
            Some(c) => self.induced_subgraph(c).expect("component vertices are valid"),
            None => Graph::empty(),
        }
    }
}

#[inline]
pub(crate) fn choose2(d: u64) -> u64 {
    d * d.saturating_sub(1) / 2
}

pub(crate) fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Jaccard similarity given the neighbor lists of the two endpoints of an edge.
pub(crate) fn jaccard_of_edge(nu: &[Vertex], nv: &[Vertex]) -> f64 {
    let inter = intersection_size(nu, nv);
    // The union counts u and v themselves.
    let denom = nu.len() + nv.len() - inter - 2;
    if denom == 0 {
        0.0
    } else {
        inter as f64 / denom as f64
    }
}

/// Scratch space for counting common neighbors of one vertex with everything
/// at distance two. Reused across calls to avoid reallocating.
pub(crate) struct TwoHopCounter {
    counts: Vec<u32>,
    touched: Vec<Vertex>,
}

impl TwoHopCounter {
    pub(crate) fn new(n: usize) -> Self {
        TwoHopCounter {
            counts: vec![0; n],
            touched: Vec::new(),
        }
    }

    /// Calls `f(w, |N(u) ∩ N(w)|)` for every `w ≠ u` sharing a neighbor with
    /// `u` and accepted by `filter`. Order of `w` is unspecified.
    pub(crate) fn for_each(
        &mut self,
        g: &Graph,
        u: usize,
        filter: impl Fn(usize) -> bool,
        mut f: impl FnMut(usize, u32),
    ) {
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x as usize) {
                let wi = w as usize;
                if wi == u || !filter(wi) {
                    continue;
                }
                if self.counts[wi] == 0 {
                    self.touched.push(w);
                }
                self.counts[wi] += 1;
            }
        }
        for &w in &self.touched {
            f(w as usize, self.counts[w as usize]);
            self.counts[w as usize] = 0;
        }
        self.touched.clear();
    }
}
