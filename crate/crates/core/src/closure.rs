//! Closure numbers: the smallest `c` such that every pair with `c` common
//! neighbors is adjacent (c-closure), and the smallest `c` admitting an
//! elimination ordering of `c`-good vertices (weak c-closure).

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::{Graph, TwoHopCounter, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureProfile {
    pub c_closure: u32,
    pub weak_closure: u32,
    /// Vertices in elimination order; each is `weak_closure`-good in the
    /// subgraph induced by itself and the vertices after it.
    pub elimination_order: Vec<usize>,
    /// `1 + max common neighbors with a surviving non-neighbor`, for each
    /// position of `elimination_order`.
    pub per_vertex_requirement: Vec<u32>,
}

/// Largest number of common neighbors between `u` and a non-neighbor.
fn max_non_adjacent_overlap(g: &Graph, u: usize, counter: &mut TwoHopCounter, only_greater: bool) -> u32 {
    let mut best = 0;
    counter.for_each(
        g,
        u,
        |w| !only_greater || w > u,
        |w, k| {
            if k > best && !g.has_edge(u, w) {
                best = k;
            }
        },
    );
    best
}

/// Smallest `c` such that `g` is c-closed: one more than the largest number of
/// common neighbors of a non-adjacent pair, and 1 when no such pair shares a
/// neighbor.
pub fn c_closure_number(g: &Graph) -> u32 {
    let n = g.vertex_count();
    let best = g
        .vertices()
        .into_par_iter()
        .map_init(
            || TwoHopCounter::new(n),
            |counter, u| max_non_adjacent_overlap(g, u, counter, true),
        )
        .max()
        .unwrap_or(0);
    best + 1
}

/// Whether every non-neighbor of `v` shares at most `c - 1` neighbors with it.
pub fn is_c_good(g: &Graph, v: usize, c: u32) -> Result<bool> {
    g.check_vertex(v)?;
    if c == 0 {
        return invalid("closure parameter must be at least 1");
    }
    let mut counter = TwoHopCounter::new(g.vertex_count());
    Ok(max_non_adjacent_overlap(g, v, &mut counter, false) < c)
}

/// Per-vertex goodness requirements under vertex deletion.
///
/// `partners[v]` lists every non-neighbor `w` that shares at least one
/// neighbor with `v` in the original graph, with the current common-neighbor
/// count among surviving vertices. `hist[v][k]` counts surviving partners of
/// `v` at overlap `k`, and `top[v]` is the largest `k` with a non-zero count.
struct Requirements {
    partners: Vec<Vec<(Vertex, u32)>>,
    hist: Vec<Vec<u32>>,
    top: Vec<u32>,
}

impl Requirements {
    fn build(g: &Graph) -> Self {
        let n = g.vertex_count();
        let partners: Vec<Vec<(Vertex, u32)>> = g
            .vertices()
            .into_par_iter()
            .map_init(
                || TwoHopCounter::new(n),
                |counter, u| {
                    let mut list = Vec::new();
                    counter.for_each(g, u, |_| true, |w, k| {
                        if !g.has_edge(u, w) {
                            list.push((w as Vertex, k));
                        }
                    });
                    list.sort_unstable();
                    list
                },
            )
            .collect();
        let mut hist = Vec::with_capacity(n);
        let mut top = Vec::with_capacity(n);
        for list in &partners {
            let max = list.iter().map(|&(_, k)| k).max().unwrap_or(0);
            let mut h = vec![0u32; max as usize + 1];
            for &(_, k) in list {
                h[k as usize] += 1;
            }
            hist.push(h);
            top.push(max);
        }
        Requirements { partners, hist, top }
    }

    fn requirement(&self, v: usize) -> u32 {
        self.top[v] + 1
    }

    fn settle_top(&mut self, v: usize) {
        while self.top[v] > 0 && self.hist[v][self.top[v] as usize] == 0 {
            self.top[v] -= 1;
        }
    }

    /// Drops one partner of `v` currently at overlap `k`.
    fn forget(&mut self, v: usize, k: u32) {
        if k > 0 {
            self.hist[v][k as usize] -= 1;
            self.settle_top(v);
        }
    }

    /// Lowers the overlap of the pair `(a, b)` by one on both sides.
    fn decrement_pair(&mut self, a: usize, b: usize) {
        for (x, y) in [(a, b), (b, a)] {
            let list = &mut self.partners[x];
            let pos = list
                .binary_search_by_key(&(y as Vertex), |&(w, _)| w)
                .expect("non-adjacent pair with a common neighbor is a partner");
            let k = list[pos].1;
            list[pos].1 = k - 1;
            self.hist[x][k as usize] -= 1;
            if k > 1 {
                self.hist[x][k as usize - 1] += 1;
            }
            self.settle_top(x);
        }
    }
}

/// Smallest `c` such that `g` is weakly c-closed, with a witnessing elimination
/// ordering.
///
/// Greedy minimax: repeatedly remove the surviving vertex with the smallest
/// requirement (smallest index on ties). Requirements only shrink as vertices
/// are deleted, so the greedy order achieves the optimal maximum, in the same
/// way the min-degree order achieves the degeneracy. After each removal only
/// the requirements of vertices within two hops of the removed vertex are
/// updated.
pub fn weak_closure_number(g: &Graph) -> ClosureProfile {
    let n = g.vertex_count();
    let mut req = Requirements::build(g);
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(u32, Vertex)> =
        (0..n).map(|v| (req.requirement(v), v as Vertex)).collect();

    let mut order = Vec::with_capacity(n);
    let mut per_vertex = Vec::with_capacity(n);
    let mut weak = 1;
    let mut live_nbrs: Vec<usize> = Vec::new();
    let mut before = Vec::new();

    while let Some((r, v)) = queue.pop_first() {
        let v = v as usize;
        alive[v] = false;
        order.push(v);
        per_vertex.push(r);
        weak = weak.max(r);

        // Vertices whose requirement may change: surviving partners of v and
        // surviving neighbors of v (which lose v as a common neighbor).
        before.clear();
        let partners = std::mem::take(&mut req.partners[v]);
        for &(w, k) in &partners {
            let w = w as usize;
            if alive[w] {
                before.push((w, req.requirement(w)));
                req.forget(w, k);
            }
        }
        live_nbrs.clear();
        live_nbrs.extend(g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| alive[w]));
        for &w in &live_nbrs {
            before.push((w, req.requirement(w)));
        }
        for (i, &a) in live_nbrs.iter().enumerate() {
            for &b in &live_nbrs[i + 1..] {
                if !g.has_edge(a, b) {
                    req.decrement_pair(a, b);
                }
            }
        }
        req.partners[v] = partners;

        before.sort_unstable();
        before.dedup_by_key(|&mut (w, _)| w);
        for &(w, old) in &before {
            let new = req.requirement(w);
            if new != old {
                queue.remove(&(old, w as Vertex));
                queue.insert((new, w as Vertex));
            }
        }
    }

    ClosureProfile {
        c_closure: c_closure_number(g),
        weak_closure: weak,
        elimination_order: order,
        per_vertex_requirement: per_vertex,
    }
}
