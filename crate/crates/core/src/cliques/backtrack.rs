use std::collections::HashSet;

use super::{sorted_set_is_clique, Budget, CliqueSet};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

/// Maximal cliques by per-vertex backtracking with a history set.
///
/// For a root `v` the procedure keeps a history `H` (a clique) and the set of
/// vertices adjacent to all of `H`. The candidate set is `v` together with
/// its neighbors among those; if it is a clique, `H ∪ N` is reported,
/// otherwise each candidate `w ≠ v` is explored with history `H ∪ {v}`. In a
/// c-closed graph the recursion depth is at most `c`.
///
/// Branching only on candidates above the current vertex keeps histories
/// ascending. The per-vertex loops still rediscover cliques; a clique is kept
/// only from the loop of its smallest vertex, and within one loop repeats are
/// dropped.
/// Every leaf report counts against `budget`.
pub fn enumerate_maximal_cliques_backtracking(g: &Graph, budget: u64) -> Result<CliqueSet> {
    let mut budget = Budget::new(budget);
    let mut out = Vec::new();
    let everyone: Vec<Vertex> = g.vertices().map(|v| v as Vertex).collect();
    for root in g.vertices() {
        let mut found = HashSet::new();
        let mut history = Vec::new();
        visit(g, root, root, &mut history, &everyone, &mut found, &mut budget)?;
        out.extend(found);
    }
    Ok(CliqueSet::new(g, out))
}

/// `common` holds the vertices adjacent to every member of `history`.
fn visit(
    g: &Graph,
    root: usize,
    v: usize,
    history: &mut Vec<usize>,
    common: &[Vertex],
    found: &mut HashSet<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    let nbrs = g.neighbors(v);
    let rest: Vec<Vertex> = common
        .iter()
        .copied()
        .filter(|x| nbrs.binary_search(x).is_ok())
        .collect();
    if sorted_set_is_clique(g, &rest) {
        budget.charge()?;
        // History members and v are >= root by the pruning below.
        if rest.first().is_none_or(|&x| x as usize >= root) {
            let mut clique = history.clone();
            clique.push(v);
            clique.extend(rest.iter().map(|&x| x as usize));
            clique.sort_unstable();
            found.insert(clique);
        }
        return Ok(());
    }
    history.push(v);
    for &w in &rest {
        // Histories grow in ascending order past the root, so each is
        // built once; a maximal clique is still reached by adding its own
        // members in order until the candidates form a clique.
        if (w as usize) <= v.max(root) {
            continue;
        }
        visit(g, root, w as usize, history, &rest, found, budget)?;
    }
    history.pop();
    Ok(())
}
