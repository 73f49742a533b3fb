//! Deterministic and seeded random graph families used by tests, benchmarks
//! and the CLI.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_edges(n, &edges).expect("generator produced in-range edges")
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    build(n, edges)
}

/// `K_{1,n-1}` with center 0.
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|i| (0, i)).collect())
}

pub fn complete(n: usize) -> Graph {
    complete_multipartite(&vec![1; n])
}

/// Vertices are numbered part by part; every pair in different parts is adjacent.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let mut part_of = Vec::new();
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let n = part_of.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Balanced `n/3`-partite graph with parts of size 3; `n` is rounded down to a
/// multiple of 3.
pub fn moon_moser(n: usize) -> Graph {
    complete_multipartite(&vec![3; n / 3])
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    build(10, edges)
}

/// `K_k` on vertices `0..k` with a path of `tail` extra vertices hanging off
/// vertex `k - 1`.
pub fn lollipop(k: usize, tail: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    for i in 0..tail {
        edges.push((k - 1 + i, k + i));
    }
    build(k + tail, edges)
}

/// Disjoint union, relabelling each part after the previous ones.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.vertex_count();
    }
    build(offset, edges)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    build(n, edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    build(n, edges)
}

/// Power-law degree sequence: the `i`-th largest degree is the
/// `(i - 1/2)/n` upper quantile of a Pareto law with exponent `gamma` and
/// minimum `min_degree`, capped at `n - 1`. The sum is made even.
pub fn power_law_degree_sequence(n: usize, gamma: f64, min_degree: usize) -> Vec<usize> {
    let mut degrees: Vec<usize> = (1..=n)
        .map(|i| {
            let q = (i as f64 - 0.5) / n as f64;
            let d = min_degree as f64 * q.powf(-1.0 / (gamma - 1.0));
            (d.floor() as usize).clamp(min_degree, n.saturating_sub(1))
        })
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        *degrees.last_mut().unwrap() += 1;
    }
    degrees
}

/// Erased configuration model: stubs are matched uniformly, then self-loops
/// and parallel edges are discarded.
pub fn configuration_model(degrees: &[usize], seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v, d))
        .collect();
    stubs.shuffle(&mut rng);
    let edges = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    build(degrees.len(), edges)
}

/// Erased configuration model over [`power_law_degree_sequence`].
pub fn power_law_configuration(n: usize, gamma: f64, min_degree: usize, seed: u64) -> Graph {
    configuration_model(&power_law_degree_sequence(n, gamma, min_degree), seed)
}

/// Overlapping planted cliques on `n` vertices plus uniform noise edges.
/// Clique sizes are drawn uniformly from `sizes`.
pub fn planted_cliques(
    n: usize,
    cliques: usize,
    sizes: std::ops::RangeInclusive<usize>,
    noise_edges: usize,
    seed: u64,
) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    for _ in 0..cliques {
        let size = rng.random_range(sizes.clone()).min(n);
        let members: Vec<usize> = all.choose_multiple(&mut rng, size).copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    if n >= 2 {
        for _ in 0..noise_edges {
            edges.push((rng.random_range(0..n), rng.random_range(0..n)));
        }
    }
    build(n, edges)
}

/// Random graph whose edge probability is itself drawn per graph, for
/// property tests that want a spread of densities.
pub fn random_density(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = rng.random::<f64>();
    gnp(n, p, rng.random())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().vertices().all(|v| petersen().degree(v) == 3));
        assert_eq!(moon_moser(12).edge_count(), 12 * 9 / 2);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(lollipop(20, 5).edge_count(), 190 + 5);
        assert_eq!(cycle(6).edge_count(), 6);
        assert_eq!(random_tree(50, 3).edge_count(), 49);
        assert!(random_tree(50, 3).is_connected());
    }

    #[test]
    fn power_law_sequence_shape() {
        let degrees = power_law_degree_sequence(1024, 2.5, 1);
        assert_eq!(degrees.len(), 1024);
        assert!(degrees.iter().sum::<usize>() % 2 == 0);
        assert!(degrees.windows(2).take(1000).all(|w| w[0] >= w[1]));
        let g = power_law_configuration(1024, 2.5, 1, 7);
        g.validate().unwrap();
    }

    #[test]
    fn seeded_generators_are_reproducible() {
        assert_eq!(gnp(40, 0.2, 9), gnp(40, 0.2, 9));
        assert_eq!(planted_cliques(60, 5, 3..=8, 10, 1), planted_cliques(60, 5, 3..=8, 10, 1));
    }
}
