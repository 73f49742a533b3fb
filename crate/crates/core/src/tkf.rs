//! Tightly-knit family decomposition: alternate a Jaccard cleaner and a
//! max-degree extractor until no edges remain.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{intersection_size, jaccard_of_edge, Graph, Vertex};
use crate::triangles::{density_of, triangle_count_naive, triangle_count_oriented};

/// How the cleaner threshold is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Epsilon {
    /// A quarter of the triangle density, recomputed before each cleaning
    /// phase and never above a quarter of the input's density.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deletion {
    pub u: usize,
    pub v: usize,
    pub similarity: f64,
    /// Triangles through the edge at the moment it was deleted.
    pub triangles_destroyed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractorTrace {
    pub seed: usize,
    pub d_max: usize,
    /// `(w, θ_w)` for every vertex at distance exactly two from the seed.
    pub scores: Vec<(usize, u64)>,
    pub supplement: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub center: usize,
    pub edges: u64,
    pub triangles: u64,
    /// `edges / C(size, 2)`, and 1 when the denominator is 0.
    pub rho_edge: f64,
    /// `triangles / C(size, 3)`, and 1 when the denominator is 0.
    pub rho_tri: f64,
    pub radius: u32,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Phase {
    pub epsilon: f64,
    /// Triangle density of the working graph before cleaning.
    pub residual_density: f64,
    pub deletions: Vec<Deletion>,
    pub triangles_destroyed: u64,
    pub extraction: Option<ExtractorTrace>,
    /// Working-graph triangles inside the extracted cluster.
    pub triangles_saved: u64,
    /// Working-graph triangles with one or two corners in the cluster.
    pub triangles_cut: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightlyKnitFamily {
    pub clusters: Vec<Cluster>,
    pub total_triangles: u64,
    pub captured_triangles: u64,
    pub captured_fraction: f64,
    pub input_density: f64,
    pub epsilon: Epsilon,
    pub phases: Vec<Phase>,
    pub diagnostic: Option<String>,
}

impl TightlyKnitFamily {
    /// Triangles destroyed across every cleaning phase.
    pub fn cleaning_destroyed(&self) -> u64 {
        self.phases.iter().map(|p| p.triangles_destroyed).sum()
    }

    pub fn min_rho(&self) -> Option<f64> {
        self.clusters
            .iter()
            .map(|c| c.rho_edge.min(c.rho_tri))
            .min_by(f64::total_cmp)
    }
}

/// Mutable adjacency used by the pipeline. Neighbor lists stay sorted.
struct Working {
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl Working {
    fn of(g: &Graph) -> Self {
        Working {
            adj: g.vertices().map(|v| g.neighbors(v).to_vec()).collect(),
            edges: g.edge_count(),
        }
    }

    fn remove_edge(&mut self, u: usize, v: usize) {
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            if let Ok(i) = list.binary_search(&(b as Vertex)) {
                list.remove(i);
            }
        }
        self.edges -= 1;
    }

    fn isolate(&mut self, v: usize) {
        for w in std::mem::take(&mut self.adj[v]) {
            let list = &mut self.adj[w as usize];
            if let Ok(i) = list.binary_search(&(v as Vertex)) {
                list.remove(i);
            }
            self.edges -= 1;
        }
    }

    fn triangles_and_wedges(&self) -> (u64, u64) {
        let mut closed = 0u64;
        let mut wedges = 0u64;
        for (u, nbrs) in self.adj.iter().enumerate() {
            wedges += crate::graph::choose2(nbrs.len() as u64);
            for &v in nbrs.iter().filter(|&&v| (v as usize) > u) {
                closed += intersection_size(nbrs, &self.adj[v as usize]) as u64;
            }
        }
        (closed / 3, wedges)
    }

    fn to_graph(&self, like: &Graph) -> Graph {
        let pairs = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| {
                nbrs.iter()
                    .filter(move |&&v| (v as usize) > u)
                    .map(move |&v| (u as Vertex, v))
            })
            .collect();
        like.with_edges(pairs)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return invalid(format!("epsilon must lie in (0, 1], got {epsilon}"));
    }
    Ok(())
}

/// Deletes edges with Jaccard similarity below `epsilon` until none remain.
/// Edges are examined from a FIFO worklist seeded with every edge in
/// ascending order; a deletion re-queues the surviving edges at both
/// endpoints, since their similarities changed.
pub fn clean(g: &Graph, epsilon: f64) -> Result<(Graph, Vec<Deletion>)> {
    check_epsilon(epsilon)?;
    let mut work = Working::of(g);
    let log = clean_working(&mut work, epsilon);
    Ok((work.to_graph(g), log))
}

fn clean_working(work: &mut Working, epsilon: f64) -> Vec<Deletion> {
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued: HashSet<(usize, usize)> = HashSet::new();
    for (u, nbrs) in work.adj.iter().enumerate() {
        for &v in nbrs.iter().filter(|&&v| (v as usize) > u) {
            queue.push_back((u, v as usize));
            queued.insert((u, v as usize));
        }
    }
    let mut log = Vec::new();
    while let Some((u, v)) = queue.pop_front() {
        queued.remove(&(u, v));
        if work.adj[u].binary_search(&(v as Vertex)).is_err() {
            continue;
        }
        let (nu, nv) = (&work.adj[u], &work.adj[v]);
        let similarity = jaccard_of_edge(nu, nv);
        if similarity >= epsilon {
            continue;
        }
        let destroyed = intersection_size(nu, nv) as u64;
        work.remove_edge(u, v);
        log.push(Deletion {
            u,
            v,
            similarity,
            triangles_destroyed: destroyed,
        });
        for x in [u, v] {
            for &w in &work.adj[x] {
                let key = (x.min(w as usize), x.max(w as usize));
                if queued.insert(key) {
                    queue.push_back(key);
                }
            }
        }
    }
    log
}

/// One extractor step: the cluster is a max-degree vertex `v`, its
/// neighbors, and up to `deg(v)` vertices at distance two ranked by
/// `θ_w`, the number of edges among `N(v) ∩ N(w)`. Only positive scores are
/// taken; ties go to the smaller id. The remainder keeps every vertex id and
/// drops all edges touching the cluster.
pub fn extract(g: &Graph) -> Result<(Vec<usize>, ExtractorTrace, Graph)> {
    let mut work = Working::of(g);
    let (cluster, trace) = extract_working(&work)?;
    for &v in &cluster {
        work.isolate(v);
    }
    Ok((cluster, trace, work.to_graph(g)))
}

fn extract_working(work: &Working) -> Result<(Vec<usize>, ExtractorTrace)> {
    if work.edges == 0 {
        return invalid("cannot extract from a graph without edges");
    }
    let n = work.adj.len();
    let seed = (0..n)
        .max_by_key(|&v| (work.adj[v].len(), std::cmp::Reverse(v)))
        .expect("graph has edges");
    let nv = &work.adj[seed];
    let d_max = nv.len();

    let mut in_ball = vec![false; n];
    in_ball[seed] = true;
    for &w in nv {
        in_ball[w as usize] = true;
    }
    let mut second: Vec<usize> = nv
        .iter()
        .flat_map(|&x| work.adj[x as usize].iter().map(|&w| w as usize))
        .filter(|&w| !in_ball[w])
        .collect();
    second.sort_unstable();
    second.dedup();

    let scores: Vec<(usize, u64)> = second
        .iter()
        .map(|&w| {
            let shared: Vec<Vertex> = work.adj[w]
                .iter()
                .copied()
                .filter(|x| nv.binary_search(x).is_ok())
                .collect();
            let twice: usize = shared
                .iter()
                .map(|&x| intersection_size(&work.adj[x as usize], &shared))
                .sum();
            (w, twice as u64 / 2)
        })
        .collect();

    let mut ranked: Vec<(usize, u64)> = scores.iter().copied().filter(|&(_, s)| s > 0).collect();
    ranked.sort_by_key(|&(w, s)| (std::cmp::Reverse(s), w));
    let mut supplement: Vec<usize> = ranked.iter().take(d_max).map(|&(w, _)| w).collect();
    supplement.sort_unstable();

    let mut cluster: Vec<usize> = std::iter::once(seed)
        .chain(nv.iter().map(|&w| w as usize))
        .chain(supplement.iter().copied())
        .collect();
    cluster.sort_unstable();
    Ok((
        cluster,
        ExtractorTrace {
            seed,
            d_max,
            scores,
            supplement,
        },
    ))
}

/// Working-graph triangles with all corners in the cluster, and those with
/// one or two.
fn split_triangles(work: &Working, member: &[bool]) -> (u64, u64) {
    let mut inside = 0u64;
    let mut cut = 0u64;
    for (u, nbrs) in work.adj.iter().enumerate() {
        for &v in nbrs.iter().filter(|&&v| (v as usize) > u) {
            let nv = &work.adj[v as usize];
            for &w in nbrs.iter().filter(|&&w| w > v) {
                if nv.binary_search(&w).is_ok() {
                    let k = [u, v as usize, w as usize].iter().filter(|&&x| member[x]).count();
                    match k {
                        3 => inside += 1,
                        1 | 2 => cut += 1,
                        _ => {}
                    }
                }
            }
        }
    }
    (inside, cut)
}

/// Alternates cleaning and extraction until the working graph has no edges.
/// Certificates are taken on the subgraph of `g` induced by each cluster, and
/// the captured fraction is relative to the triangles of `g`.
pub fn tightly_knit_decomposition(g: &Graph, epsilon: Epsilon) -> Result<TightlyKnitFamily> {
    if let Epsilon::Fixed(e) = epsilon {
        check_epsilon(e)?;
    }
    let original = triangle_count_oriented(g);
    let mut family = TightlyKnitFamily {
        clusters: Vec::new(),
        total_triangles: original.triangles,
        captured_triangles: 0,
        captured_fraction: 0.0,
        input_density: original.density,
        epsilon,
        phases: Vec::new(),
        diagnostic: None,
    };
    if epsilon == Epsilon::Auto && original.triangles == 0 {
        family.diagnostic = Some("input has no triangles; nothing to capture".into());
        return Ok(family);
    }

    let mut work = Working::of(g);
    while work.edges > 0 {
        let (t, w) = work.triangles_and_wedges();
        let residual_density = density_of(t, w);
        let eps = match epsilon {
            Epsilon::Fixed(e) => e,
            Epsilon::Auto if t == 0 => {
                family.diagnostic = Some(format!(
                    "stopped with {} edges left in a triangle-free residual",
                    work.edges
                ));
                break;
            }
            Epsilon::Auto => original.density.min(residual_density) / 4.0,
        };
        let deletions = clean_working(&mut work, eps);
        let mut phase = Phase {
            epsilon: eps,
            residual_density,
            triangles_destroyed: deletions.iter().map(|d| d.triangles_destroyed).sum(),
            deletions,
            extraction: None,
            triangles_saved: 0,
            triangles_cut: 0,
        };
        if work.edges > 0 {
            let (members, trace) = extract_working(&work)?;
            let mut member = vec![false; work.adj.len()];
            for &v in &members {
                member[v] = true;
            }
            let (saved, cut) = split_triangles(&work, &member);
            phase.triangles_saved = saved;
            phase.triangles_cut = cut;
            for &v in &members {
                work.isolate(v);
            }
            family.clusters.push(certify(g, members, trace.seed)?);
            phase.extraction = Some(trace);
        }
        family.phases.push(phase);
    }

    family.captured_triangles = family.clusters.iter().map(|c| c.triangles).sum();
    family.captured_fraction = if family.total_triangles == 0 {
        0.0
    } else {
        family.captured_triangles as f64 / family.total_triangles as f64
    };
    Ok(family)
}

fn ratio_or_one(num: u64, denom: u64) -> f64 {
    if denom == 0 {
        1.0
    } else {
        num as f64 / denom as f64
    }
}

fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

fn certify(g: &Graph, vertices: Vec<usize>, center: usize) -> Result<Cluster> {
    let sub = g.induced_subgraph(&vertices)?;
    let size = vertices.len() as u64;
    let edges = sub.edge_count() as u64;
    let triangles = triangle_count_oriented(&sub).triangles;
    let local_center = vertices.binary_search(&center).expect("center is a member");
    let radius = if size <= 1 {
        0
    } else if sub.vertices().any(|v| sub.degree(v) as u64 == size - 1) {
        1
    } else {
        let ecc = sub.bfs_unchecked(local_center).eccentricity();
        if ecc == 2 {
            2
        } else {
            exact_radius(&sub)
        }
    };
    Ok(Cluster {
        rho_edge: ratio_or_one(edges, crate::graph::choose2(size)),
        rho_tri: ratio_or_one(triangles, choose3(size)),
        vertices,
        center,
        edges,
        triangles,
        radius,
    })
}

fn exact_radius(g: &Graph) -> u32 {
    g.vertices()
        .map(|v| g.bfs_unchecked(v).eccentricity())
        .min()
        .unwrap_or(0)
}

/// Recomputes every certificate of `family` from `g` alone: disjointness,
/// radius at most 2 (minimum eccentricity over all members), edge and
/// triangle counts, both densities and the captured fraction.
pub fn verify_family(g: &Graph, family: &TightlyKnitFamily) -> Result<()> {
    let fail = |msg: String| Err(Error::Domain(msg));
    let mut owner = vec![usize::MAX; g.vertex_count()];
    let mut captured = 0u64;
    for (i, c) in family.clusters.iter().enumerate() {
        for &v in &c.vertices {
            g.check_vertex(v)?;
            if owner[v] != usize::MAX {
                return fail(format!("vertex {v} is in clusters {} and {i}", owner[v]));
            }
            owner[v] = i;
        }
        let sub = g.induced_subgraph(&c.vertices)?;
        if sub.vertex_count() != c.vertices.len() {
            return fail(format!("cluster {i} repeats a vertex"));
        }
        let radius = exact_radius(&sub);
        let connected = sub.is_connected();
        if !connected || radius > 2 || radius != c.radius {
            return fail(format!(
                "cluster {i}: radius {radius} (connected: {connected}), reported {}",
                c.radius
            ));
        }
        let edges = sub.edge_count() as u64;
        let triangles = triangle_count_naive(&sub).triangles;
        if edges != c.edges || triangles != c.triangles {
            return fail(format!(
                "cluster {i}: counted {edges} edges and {triangles} triangles, reported {} and {}",
                c.edges, c.triangles
            ));
        }
        let size = c.vertices.len() as u64;
        let rho_edge = ratio_or_one(edges, crate::graph::choose2(size));
        let rho_tri = ratio_or_one(triangles, choose3(size));
        if (rho_edge - c.rho_edge).abs() > 1e-12 || (rho_tri - c.rho_tri).abs() > 1e-12 {
            return fail(format!("cluster {i}: densities do not match the counts"));
        }
        captured += triangles;
    }
    let total = triangle_count_naive(g).triangles;
    let fraction = if total == 0 { 0.0 } else { captured as f64 / total as f64 };
    if total != family.total_triangles
        || captured != family.captured_triangles
        || (fraction - family.captured_fraction).abs() > 1e-12
    {
        return fail(format!(
            "captured {captured} of {total} triangles, reported {} of {}",
            family.captured_triangles, family.total_triangles
        ));
    }
    Ok(())
}
