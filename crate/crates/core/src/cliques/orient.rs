use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{Graph, Vertex};

/// An acyclic orientation of an undirected graph: every edge points from the
/// endpoint of lower rank to the endpoint of higher rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedGraph {
    /// Vertices in ascending rank.
    pub order: Vec<usize>,
    /// `rank[v]` is the position of `v` in `order`.
    pub rank: Vec<u32>,
    offsets: Vec<usize>,
    /// Out-neighbors per vertex, ascending by rank.
    targets: Vec<Vertex>,
    /// Largest degree at removal time, for orientations built by min-degree
    /// peeling.
    pub degeneracy: Option<u32>,
}

impl OrientedGraph {
    fn from_order(g: &Graph, order: Vec<usize>, degeneracy: Option<u32>) -> Self {
        let n = g.vertex_count();
        let mut rank = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i as u32;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut targets = Vec::with_capacity(g.edge_count());
        for v in 0..n {
            let start = targets.len();
            targets.extend(g.neighbors(v).iter().copied().filter(|&w| rank[w as usize] > rank[v]));
            targets[start..].sort_unstable_by_key(|&w| rank[w as usize]);
            offsets.push(targets.len());
        }
        OrientedGraph {
            order,
            rank,
            offsets,
            targets,
            degeneracy,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rank.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Out-neighbors of `v` sorted by vertex id.
    pub fn out_neighbors_by_id(&self, v: usize) -> Vec<Vertex> {
        let mut out = self.out_neighbors(v).to_vec();
        out.sort_unstable();
        out
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.out_degree(v)).collect()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    /// `Σ_v C(d⁺_v, 2)`: the pair checks made by oriented triangle counting.
    pub fn out_pair_count(&self) -> u64 {
        (0..self.vertex_count())
            .map(|v| crate::graph::choose2(self.out_degree(v) as u64))
            .sum()
    }

    /// `Σ_v (d⁺_v)²`.
    pub fn out_degree_square_sum(&self) -> u64 {
        (0..self.vertex_count())
            .map(|v| (self.out_degree(v) as u64).pow(2))
            .sum()
    }
}

/// Min-degree peeling order (smallest id on ties). The degeneracy is the
/// largest degree a vertex has when it is removed; edges point along the
/// removal order, so every out-degree is at most the degeneracy.
pub fn degeneracy_ordering(g: &Graph) -> OrientedGraph {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: BTreeSet<(usize, usize)> = g.vertices().map(|v| (degree[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut alpha = 0;
    while let Some((d, v)) = queue.pop_first() {
        alpha = alpha.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
    OrientedGraph::from_order(g, order, Some(alpha as u32))
}

/// Orients each edge from the lower-degree endpoint to the higher-degree one,
/// breaking ties by vertex id.
pub fn degree_orientation(g: &Graph) -> OrientedGraph {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    OrientedGraph::from_order(g, order, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn degeneracy_examples() {
        for seed in 0..10 {
            let tree = generators::random_tree(60, seed);
            assert_eq!(degeneracy_ordering(&tree).degeneracy, Some(1));
        }
        assert_eq!(degeneracy_ordering(&generators::complete(6)).degeneracy, Some(5));
        assert_eq!(degeneracy_ordering(&generators::cycle(4)).degeneracy, Some(2));
        assert_eq!(degeneracy_ordering(&Graph::empty()).degeneracy, Some(0));
    }

    #[test]
    fn degeneracy_orientation_bounds_out_degree() {
        for seed in 0..20 {
            let g = generators::random_density(30, seed);
            let o = degeneracy_ordering(&g);
            assert_eq!(o.arc_count(), g.edge_count());
            assert!(o.max_out_degree() <= o.degeneracy.unwrap() as usize);
            let bound = (2.0 * g.edge_count() as f64).sqrt();
            assert!(o.degeneracy.unwrap() as f64 <= bound + 1e-9);
        }
    }

    #[test]
    fn degree_orientation_examples() {
        let star = degree_orientation(&generators::star(5));
        assert_eq!(star.out_degree(0), 0);
        assert!((1..5).all(|v| star.out_degree(v) == 1));
        let k4 = degree_orientation(&generators::complete(4));
        assert_eq!(k4.out_degrees(), vec![3, 2, 1, 0]);
        assert_eq!(k4.out_pair_count(), 3 + 1);
        let c6 = degree_orientation(&generators::cycle(6));
        assert_eq!(c6.out_degrees(), vec![2, 1, 1, 1, 1, 0]);
        assert_eq!(c6.arc_count(), 6);
    }
}
