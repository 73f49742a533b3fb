//! Clique enumeration and the orientation machinery shared with triangle
//! counting.

mod backtrack;
mod orient;
mod pivot;
mod reverse;

pub use backtrack::enumerate_maximal_cliques_backtracking;
pub use orient::{degeneracy_ordering, degree_orientation, OrientedGraph};
pub use pivot::enumerate_maximal_cliques_pivot;
pub use reverse::enumerate_maximal_cliques;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{intersection_size, Graph, Vertex};

pub const DEFAULT_CLIQUE_BUDGET: u64 = 10_000_000;

/// Maximal cliques of a graph, each sorted ascending, the list sorted
/// lexicographically so two sets compare equal regardless of discovery order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueSet {
    pub cliques: Vec<Vec<usize>>,
    pub fingerprint: u64,
}

impl CliqueSet {
    pub(crate) fn new(g: &Graph, mut cliques: Vec<Vec<usize>>) -> Self {
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort_unstable();
        cliques.dedup();
        CliqueSet {
            cliques,
            fingerprint: fingerprint(g),
        }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn largest(&self) -> Option<&[usize]> {
        // First maximum in lexicographic order.
        self.cliques
            .iter()
            .fold(None::<&Vec<usize>>, |best, c| match best {
                Some(b) if b.len() >= c.len() => Some(b),
                _ => Some(c),
            })
            .map(|c| c.as_slice())
    }

    /// Checks completeness, maximality and uniqueness of every member against `g`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.fingerprint != fingerprint(g) {
            return Err(Error::Domain("clique set belongs to a different graph".into()));
        }
        for w in self.cliques.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Domain("clique list not strictly sorted".into()));
            }
        }
        for c in &self.cliques {
            if !is_clique(g, c) {
                return Err(Error::Domain(format!("{c:?} is not a clique")));
            }
            if let Some(v) = extension(g, c) {
                return Err(Error::Domain(format!("{c:?} is not maximal: {v} extends it")));
            }
        }
        Ok(())
    }
}

/// FNV-1a over the vertex count and sorted edge list.
pub fn fingerprint(g: &Graph) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(g.vertex_count() as u64);
    for (u, v) in g.edges() {
        eat(u as u64);
        eat(v as u64);
    }
    h
}

pub fn is_clique(g: &Graph, vertices: &[usize]) -> bool {
    vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && g.has_edge(u, v)))
}

/// Some vertex adjacent to every member of `clique`, if one exists.
pub(crate) fn extension(g: &Graph, clique: &[usize]) -> Option<usize> {
    match clique.first() {
        None => g.vertices().next(),
        Some(&first) => g
            .neighbors(first)
            .iter()
            .map(|&w| w as usize)
            .find(|&w| clique[1..].iter().all(|&u| u != w && g.has_edge(u, w))),
    }
}

/// Whether the sorted vertex list `set` induces a complete subgraph, using
/// one sorted intersection per member.
pub(crate) fn sorted_set_is_clique(g: &Graph, set: &[Vertex]) -> bool {
    set.iter()
        .all(|&x| intersection_size(g.neighbors(x as usize), set) + 1 == set.len())
}

/// Counts cliques against a budget.
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// A largest clique, taken as the biggest member of the maximal-clique
/// enumeration (first in lexicographic order on ties).
pub fn maximum_clique(g: &Graph, budget: u64) -> Result<Vec<usize>> {
    if g.vertex_count() == 0 {
        return invalid("maximum clique of an empty graph");
    }
    let set = enumerate_maximal_cliques_pivot(g, budget)?;
    Ok(set.largest().expect("non-empty graph has a maximal clique").to_vec())
}

/// Callback receiving each clique as it is found.
pub type Emit<'a> = &'a mut dyn FnMut(&[usize]);

/// Counts every non-empty clique, optionally passing each one to `emit`.
///
/// For each vertex in degeneracy order, only subsets of its later neighbors
/// are extended, so each clique is produced once from its earliest vertex and
/// the work is `O(n · 2^α)` up to the cost of the adjacency intersections.
pub fn enumerate_all_cliques(
    g: &Graph,
    budget: u64,
    mut emit: Option<Emit<'_>>,
) -> Result<u64> {
    let oriented = degeneracy_ordering(g);
    let mut budget = Budget::new(budget);
    let mut count = 0u64;
    let mut current = Vec::new();
    for v in oriented.order.iter().copied() {
        let later: Vec<Vertex> = oriented.out_neighbors_by_id(v);
        current.push(v);
        extend_all(g, &mut current, &later, &mut budget, &mut count, &mut emit)?;
        current.pop();
    }
    Ok(count)
}

fn extend_all(
    g: &Graph,
    current: &mut Vec<usize>,
    candidates: &[Vertex],
    budget: &mut Budget,
    count: &mut u64,
    emit: &mut Option<Emit<'_>>,
) -> Result<()> {
    budget.charge()?;
    *count += 1;
    if let Some(f) = emit.as_mut() {
        f(current);
    }
    for (i, &c) in candidates.iter().enumerate() {
        let nbrs = g.neighbors(c as usize);
        let next: Vec<Vertex> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|x| nbrs.binary_search(x).is_ok())
            .collect();
        current.push(c as usize);
        extend_all(g, current, &next, budget, count, emit)?;
        current.pop();
    }
    Ok(())
}

/// `3^{n/3}`: the most maximal cliques any `n`-vertex graph can have.
pub fn moon_moser_bound(n: usize) -> f64 {
    3f64.powf(n as f64 / 3.0)
}

/// `3^{(c-1)/3} · n²`: the maximal-clique bound for weakly c-closed graphs.
pub fn weak_closure_clique_bound(c: u32, n: usize) -> f64 {
    3f64.powf((c as f64 - 1.0) / 3.0) * (n as f64).powi(2)
}


#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use crate::generators;

    #[test]
    fn all_cliques_examples() {
        let count = |g: &Graph| enumerate_all_cliques(g, DEFAULT_CLIQUE_BUDGET, None).unwrap();
        assert_eq!(count(&generators::complete(3)), 7);
        assert_eq!(count(&generators::path(3)), 5);
        let octahedron = generators::complete_multipartite(&[2, 2, 2]);
        assert_eq!(brute_all_cliques(&octahedron), 26);
        assert_eq!(count(&octahedron), 26);
    }

    #[test]
    fn all_cliques_match_subset_count() {
        for seed in 0..50 {
            let g = generators::random_density(3 + seed as usize % 12, seed);
            let mut seen = Vec::new();
            let mut emit = |c: &[usize]| {
                let mut c = c.to_vec();
                c.sort_unstable();
                seen.push(c);
            };
            let count = enumerate_all_cliques(&g, DEFAULT_CLIQUE_BUDGET, Some(&mut emit)).unwrap();
            assert_eq!(count, brute_all_cliques(&g));
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u64, count);
            assert!(seen.iter().all(|c| is_clique(&g, c)));
        }
    }

    #[test]
    fn all_cliques_budget() {
        let g = generators::complete(10);
        assert!(matches!(
            enumerate_all_cliques(&g, 100, None),
            Err(Error::BudgetExceeded { budget: 100 })
        ));
    }

    #[test]
    fn maximum_clique_examples() {
        assert_eq!(maximum_clique(&generators::moon_moser(12), 1000).unwrap().len(), 4);
        assert_eq!(maximum_clique(&generators::complete(5), 1000).unwrap(), vec![0, 1, 2, 3, 4]);
        let petersen = generators::petersen();
        assert_eq!(maximum_clique(&petersen, 1000).unwrap().len(), 2);
        // Triangle-free by brute force over triples.
        for a in 0..10 {
            for b in a + 1..10 {
                for c in b + 1..10 {
                    assert!(!is_clique(&petersen, &[a, b, c]));
                }
            }
        }
        assert!(maximum_clique(&Graph::empty(), 10).is_err());
        assert_eq!(maximum_clique(&Graph::from_edges(1, &[]).unwrap(), 10).unwrap(), vec![0]);
    }

    #[test]
    fn bounds() {
        assert!((moon_moser_bound(12) - 81.0).abs() < 1e-9);
        assert!((weak_closure_clique_bound(1, 5) - 25.0).abs() < 1e-9);
    }
}
