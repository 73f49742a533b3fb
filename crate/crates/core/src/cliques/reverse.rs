use super::{Budget, CliqueSet};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

/// Maximal cliques by reverse search over the lexicographic parent relation,
/// giving polynomial work per clique on any graph.
///
/// `closure(X)` extends a clique `X` greedily in ascending vertex order and is
/// the lexicographically first maximal clique containing `X`. The root is
/// `closure(∅)`. For any other maximal clique `K` with members
/// `k_1 < … < k_s`, its parent is `closure({k_1, …, k_j})` for the largest
/// `j < s` at which that closure differs from `K`. Parents are
/// lexicographically smaller, so the relation is a tree over all maximal
/// cliques. Every child of `K` has the form
/// `closure({i} ∪ (N(i) ∩ {k ∈ K : k < i}))` for some `i ∉ K`; a candidate
/// is accepted iff its parent is `K` and `i` is the member that follows the
/// parent's defining prefix.
///
/// The tree is walked depth-first with an explicit stack. Per clique the work
/// is at most `n` candidates, each costing a bounded number of closures,
/// which is polynomial in `n` and `m`.
pub fn enumerate_maximal_cliques(g: &Graph, budget: u64) -> Result<CliqueSet> {
    let mut budget = Budget::new(budget);
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    if g.vertex_count() == 0 {
        return Ok(CliqueSet::new(g, Vec::new()));
    }
    let root = closure(g, &[]);
    budget.charge()?;
    out.push(root.clone());
    // Each frame is a clique and the next candidate vertex to try.
    let mut stack: Vec<(Vec<Vertex>, usize)> = vec![(root, 0)];
    while let Some((clique, next)) = stack.last_mut() {
        let Some(i) = (*next..g.vertex_count()).find(|&i| clique.binary_search(&(i as Vertex)).is_err())
        else {
            stack.pop();
            continue;
        };
        *next = i + 1;
        let child = child_candidate(g, clique, i);
        let accepted = matches!(
            parent(g, &child),
            Some((p, j)) if p == *clique && child[j] as usize == i
        );
        if accepted {
            budget.charge()?;
            out.push(child.clone());
            stack.push((child, 0));
        }
    }
    Ok(CliqueSet::new(
        g,
        out.into_iter()
            .map(|c| c.into_iter().map(|v| v as usize).collect())
            .collect(),
    ))
}

/// Lexicographically first maximal clique containing the sorted clique `seed`.
fn closure(g: &Graph, seed: &[Vertex]) -> Vec<Vertex> {
    let candidates: Vec<Vertex> = match seed.iter().min_by_key(|&&v| g.degree(v as usize)) {
        None => g.vertices().map(|v| v as Vertex).collect(),
        Some(&pivot) => g
            .neighbors(pivot as usize)
            .iter()
            .copied()
            .filter(|&w| seed.iter().all(|&s| s != w && g.has_edge(s as usize, w as usize)))
            .collect(),
    };
    let mut added: Vec<Vertex> = Vec::new();
    for w in candidates {
        if added.iter().all(|&a| g.has_edge(a as usize, w as usize)) {
            added.push(w);
        }
    }
    let mut clique = seed.to_vec();
    clique.extend(added);
    clique.sort_unstable();
    clique
}

fn child_candidate(g: &Graph, clique: &[Vertex], i: usize) -> Vec<Vertex> {
    let nbrs = g.neighbors(i);
    let mut seed: Vec<Vertex> = clique
        .iter()
        .copied()
        .take_while(|&k| (k as usize) < i)
        .filter(|k| nbrs.binary_search(k).is_ok())
        .collect();
    seed.push(i as Vertex);
    seed.sort_unstable();
    closure(g, &seed)
}

/// Parent in the reverse-search tree with the prefix length `j` it was taken
/// from; `None` for the root. The child is generated from its parent only via
/// `i = clique[j]`, so each clique is reached exactly once.
fn parent(g: &Graph, clique: &[Vertex]) -> Option<(Vec<Vertex>, usize)> {
    (0..clique.len())
        .rev()
        .map(|j| (closure(g, &clique[..j]), j))
        .find(|(c, _)| c.as_slice() != clique)
}

#[cfg(test)]
mod tests {
    use super::super::oracle::brute_maximal_cliques;
    use super::*;
    use crate::error::Error;
    use crate::generators;

    #[test]
    fn examples() {
        let run = |g: &Graph| enumerate_maximal_cliques(g, 1_000_000).unwrap();
        let k5 = run(&generators::complete(5));
        assert_eq!(k5.cliques, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(run(&generators::moon_moser(9)).len(), 27);
        let petersen = run(&generators::petersen());
        assert_eq!(petersen.cliques, brute_maximal_cliques(&generators::petersen()));
        assert_eq!(petersen.len(), 15);
        assert!(run(&Graph::empty()).is_empty());
        assert_eq!(run(&Graph::from_edges(3, &[]).unwrap()).len(), 3);
    }

    #[test]
    fn matches_subset_oracle() {
        for seed in 0..120 {
            let g = generators::random_density(1 + seed as usize % 15, 300 + seed);
            let brute = brute_maximal_cliques(&g);
            // A budget of exactly the clique count also proves no clique is
            // generated twice.
            let set = enumerate_maximal_cliques(&g, brute.len() as u64).unwrap();
            assert_eq!(set.cliques, brute, "seed {seed}");
        }
    }

    #[test]
    fn budget() {
        assert!(matches!(
            enumerate_maximal_cliques(&generators::moon_moser(9), 5),
            Err(Error::BudgetExceeded { budget: 5 })
        ));
    }
}
