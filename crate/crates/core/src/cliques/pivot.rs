use super::{degeneracy_ordering, Budget, CliqueSet};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

/// Bron–Kerbosch with Tomita pivoting, with the outer level run over a
/// degeneracy ordering. Fast in practice on sparse graphs; it carries no
/// per-clique delay guarantee.
pub fn enumerate_maximal_cliques_pivot(g: &Graph, budget: u64) -> Result<CliqueSet> {
    let oriented = degeneracy_ordering(g);
    let mut budget = Budget::new(budget);
    let mut out = Vec::new();
    let mut r = Vec::new();
    for &v in &oriented.order {
        let nbrs = g.neighbors(v);
        let (mut p, mut x): (Vec<Vertex>, Vec<Vertex>) = (Vec::new(), Vec::new());
        for &w in nbrs {
            if oriented.rank[w as usize] > oriented.rank[v] {
                p.push(w);
            } else {
                x.push(w);
            }
        }
        r.push(v);
        expand(g, &mut r, p, x, &mut out, &mut budget)?;
        r.pop();
    }
    Ok(CliqueSet::new(g, out))
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: Vec<Vertex>,
    mut x: Vec<Vertex>,
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            budget.charge()?;
            out.push(r.clone());
        }
        return Ok(());
    }
    // Pivot maximizing |P ∩ N(u)| over u ∈ P ∪ X.
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| {
            let nu = g.neighbors(u as usize);
            p.iter().filter(|w| nu.binary_search(w).is_ok()).count()
        })
        .expect("P is non-empty");
    let pivot_nbrs = g.neighbors(pivot as usize);
    let branch: Vec<Vertex> = p
        .iter()
        .copied()
        .filter(|w| pivot_nbrs.binary_search(w).is_err())
        .collect();
    for v in branch {
        let nv = g.neighbors(v as usize);
        let keep = |s: &[Vertex]| -> Vec<Vertex> {
            s.iter().copied().filter(|w| nv.binary_search(w).is_ok()).collect()
        };
        let (np, nx) = (keep(&p), keep(&x));
        r.push(v as usize);
        expand(g, r, np, nx, out, budget)?;
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
    Ok(())
}
