//! Eccentricities, diameter heuristics and level-threshold statistics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{BfsLevels, Graph};

fn require_connected(g: &Graph) -> Result<()> {
    if g.vertex_count() == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    let components = g.connected_components().len();
    if components > 1 {
        return Err(Error::Domain(format!(
            "graph is disconnected ({components} components); restrict to the largest component"
        )));
    }
    Ok(())
}

/// Exact eccentricity of every vertex by one BFS per vertex.
pub fn eccentricities(g: &Graph) -> Result<Vec<u32>> {
    require_connected(g)?;
    Ok(g.vertices()
        .into_par_iter()
        .map(|v| g.bfs_unchecked(v).eccentricity())
        .collect())
}

pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(eccentricities(g)?.into_iter().max().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoSweep {
    pub seed: usize,
    /// Farthest vertex from the seed.
    pub start: usize,
    /// Farthest vertex from `start`.
    pub end: usize,
    /// `ecc(start)`, a lower bound on the diameter.
    pub estimate: u32,
}

/// BFS from `seed` to its farthest vertex `t`, then report `ecc(t)`. Ties go
/// to the smallest id. Without a seed the highest-degree vertex is used.
pub fn two_sweep(g: &Graph, seed: Option<usize>) -> Result<TwoSweep> {
    require_connected(g)?;
    let seed = match seed {
        Some(s) => {
            g.check_vertex(s)?;
            s
        }
        None => g
            .vertices()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("graph is non-empty"),
    };
    let start = g.bfs_unchecked(seed).farthest();
    let second = g.bfs_unchecked(start);
    Ok(TwoSweep {
        seed,
        start,
        end: second.farthest(),
        estimate: second.eccentricity(),
    })
}

/// Smallest level `ℓ ≥ 1` holding at least `k` vertices, or `None` when no
/// level does.
pub fn tau_from_levels(levels: &BfsLevels, k: usize) -> Option<u32> {
    levels
        .level_sizes
        .iter()
        .enumerate()
        .skip(1)
        .find(|&(_, &size)| size >= k)
        .map(|(l, _)| l as u32)
}

/// `τ_s(k)`; `None` stands for infinity.
pub fn tau(g: &Graph, s: usize, k: usize) -> Result<Option<u32>> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    Ok(tau_from_levels(&g.bfs_levels(s)?, k))
}

/// `⌈n^x⌉`, the level-size threshold for exponent `x`.
pub fn threshold(n: usize, exponent: f64) -> usize {
    let k = (n as f64).powf(exponent).ceil() as usize;
    // Guard against powf landing just above an integer.
    let k = if k > 1 && ((k - 1) as f64) >= (n as f64).powf(exponent) { k - 1 } else { k };
    k.max(1)
}

/// Mean of the finite values; `None` when there are none.
pub fn mean_tau(taus: &[Option<u32>]) -> Option<f64> {
    let finite: Vec<f64> = taus.iter().flatten().map(|&t| t as f64).collect();
    if finite.is_empty() {
        None
    } else {
        Some(finite.iter().sum::<f64>() / finite.len() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauColumn {
    pub k: usize,
    pub tau: Vec<Option<u32>>,
    /// Mean over vertices with finite `τ`.
    pub mean: Option<f64>,
    pub infinite: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricProfile {
    pub eccentricity: Vec<u32>,
    pub diameter: u32,
    pub radius: u32,
    pub taus: Vec<TauColumn>,
    pub two_sweep: TwoSweep,
}

/// Eccentricities and `τ_s(k)` for each requested `k` from one BFS per
/// vertex.
pub fn metric_profile(g: &Graph, ks: &[usize]) -> Result<MetricProfile> {
    require_connected(g)?;
    if ks.contains(&0) {
        return invalid("k must be at least 1");
    }
    let rows: Vec<(u32, Vec<Option<u32>>)> = g
        .vertices()
        .into_par_iter()
        .map(|v| {
            let levels = g.bfs_unchecked(v);
            let taus = ks.iter().map(|&k| tau_from_levels(&levels, k)).collect();
            (levels.eccentricity(), taus)
        })
        .collect();
    let eccentricity: Vec<u32> = rows.iter().map(|r| r.0).collect();
    let taus = ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let tau: Vec<Option<u32>> = rows.iter().map(|r| r.1[i]).collect();
            TauColumn {
                k,
                mean: mean_tau(&tau),
                infinite: tau.iter().filter(|t| t.is_none()).count(),
                tau,
            }
        })
        .collect();
    Ok(MetricProfile {
        diameter: eccentricity.iter().copied().max().unwrap_or(0),
        radius: eccentricity.iter().copied().min().unwrap_or(0),
        eccentricity,
        taus,
        two_sweep: two_sweep(g, None)?,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PairCheck {
    pub pairs: usize,
    /// Pairs where either threshold is infinite; left out of both fractions.
    pub infinite_pairs: usize,
    /// `dist(s, t) ≤ τ_s + τ_t`.
    pub upper_holds: usize,
    /// `dist(s, t) > τ_s + τ_t − 1`.
    pub lower_holds: usize,
}

impl PairCheck {
    fn record(&mut self, dist: u32, ts: Option<u32>, tt: Option<u32>) {
        self.pairs += 1;
        match (ts, tt) {
            (Some(a), Some(b)) => {
                if dist <= a + b {
                    self.upper_holds += 1;
                }
                if dist + 1 > a + b {
                    self.lower_holds += 1;
                }
            }
            _ => self.infinite_pairs += 1,
        }
    }

    fn finite(&self) -> usize {
        self.pairs - self.infinite_pairs
    }

    pub fn upper_fraction(&self) -> Option<f64> {
        (self.finite() > 0).then(|| self.upper_holds as f64 / self.finite() as f64)
    }

    pub fn lower_fraction(&self) -> Option<f64> {
        (self.finite() > 0).then(|| self.lower_holds as f64 / self.finite() as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailPoint {
    /// Integer level `L` with `L > T`.
    pub level: u32,
    /// `L − T`.
    pub gamma: f64,
    /// Fraction of vertices with `τ_s ≥ L`.
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailFit {
    pub points: Vec<TailPoint>,
    /// Least-squares line `ln fraction = intercept + slope · γ`.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    /// `exp(−slope)`; `None` with fewer than two points or a slope that is
    /// not negative.
    pub c_bct: Option<f64>,
    pub r_squared: Option<f64>,
}

/// Fits `fraction{s : τ_s ≥ T + γ} ≈ c^{−γ}` over the integer levels above
/// `T`. The line gets a free intercept because `γ` only takes the values
/// `L − T`, which rarely start at 0.
pub fn tail_fit(taus: &[Option<u32>]) -> TailFit {
    let mut fit = TailFit {
        points: Vec::new(),
        slope: None,
        intercept: None,
        c_bct: None,
        r_squared: None,
    };
    let Some(mean) = mean_tau(taus) else {
        return fit;
    };
    let n = taus.len() as f64;
    let top = taus.iter().flatten().copied().max().unwrap_or(0);
    let first = mean.floor() as u32 + 1;
    fit.points = (first..=top)
        .map(|level| TailPoint {
            level,
            gamma: level as f64 - mean,
            fraction: taus.iter().flatten().filter(|&&t| t >= level).count() as f64 / n,
        })
        .filter(|p| p.fraction > 0.0)
        .collect();
    if fit.points.len() < 2 {
        return fit;
    }
    let len = fit.points.len() as f64;
    let mx = fit.points.iter().map(|p| p.gamma).sum::<f64>() / len;
    let my = fit.points.iter().map(|p| p.fraction.ln()).sum::<f64>() / len;
    let sxx: f64 = fit.points.iter().map(|p| (p.gamma - mx).powi(2)).sum();
    let sxy: f64 = fit.points.iter().map(|p| (p.gamma - mx) * (p.fraction.ln() - my)).sum();
    let syy: f64 = fit.points.iter().map(|p| (p.fraction.ln() - my).powi(2)).sum();
    let slope = sxy / sxx;
    fit.slope = Some(slope);
    fit.intercept = Some(my - slope * mx);
    fit.r_squared = (syy > 0.0).then(|| sxy * sxy / (sxx * syy));
    fit.c_bct = (slope < 0.0).then(|| (-slope).exp());
    fit
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BctReport {
    pub n: usize,
    pub rng_seed: u64,
    pub exponents: (f64, f64),
    /// `(⌈n^x⌉, ⌈n^y⌉)`.
    pub thresholds: (usize, usize),
    pub mean_tau: Option<f64>,
    pub pairs: PairCheck,
    pub property_one_fraction: Option<f64>,
    pub property_two_fraction: Option<f64>,
    pub tail: TailFit,
}

fn thresholds_for(g: &Graph, exponents: (f64, f64)) -> Result<(usize, usize)> {
    let (x, y) = exponents;
    if !(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0) {
        return invalid(format!("exponents must lie in (0, 1], got ({x}, {y})"));
    }
    Ok((threshold(g.vertex_count(), x), threshold(g.vertex_count(), y)))
}

fn tau_rows(g: &Graph, ks: (usize, usize)) -> Vec<(Option<u32>, Option<u32>)> {
    g.vertices()
        .into_par_iter()
        .map(|v| {
            let levels = g.bfs_unchecked(v);
            (tau_from_levels(&levels, ks.0), tau_from_levels(&levels, ks.1))
        })
        .collect()
}

/// Samples `samples` ordered pairs of distinct vertices with a seeded
/// generator and checks the two distance bounds on each, then fits the tail
/// of `τ_s(k_x)` around its mean. Default exponents are `(0.5, 0.5)`.
pub fn bct_properties_report(
    g: &Graph,
    samples: usize,
    rng_seed: u64,
    exponents: (f64, f64),
) -> Result<BctReport> {
    require_connected(g)?;
    let n = g.vertex_count();
    let ks = thresholds_for(g, exponents)?;
    let rows = tau_rows(g, ks);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(samples);
    if n >= 2 {
        while pairs.len() < samples {
            let s = rng.random_range(0..n);
            let t = rng.random_range(0..n);
            if s != t {
                pairs.push((s, t));
            }
        }
    }
    let mut sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    sources.sort_unstable();
    sources.dedup();
    let dists: Vec<Vec<u32>> = sources.par_iter().map(|&s| g.bfs_unchecked(s).dist).collect();
    let mut check = PairCheck::default();
    for &(s, t) in &pairs {
        let i = sources.binary_search(&s).expect("source was collected");
        check.record(dists[i][t], rows[s].0, rows[t].1);
    }
    let first: Vec<Option<u32>> = rows.iter().map(|r| r.0).collect();
    Ok(BctReport {
        n,
        rng_seed,
        exponents,
        thresholds: ks,
        mean_tau: mean_tau(&first),
        property_one_fraction: check.upper_fraction(),
        property_two_fraction: check.lower_fraction(),
        pairs: check,
        tail: tail_fit(&first),
    })
}

/// Both distance bounds over every ordered pair of distinct vertices.
pub fn bct_pairs_exact(g: &Graph, exponents: (f64, f64)) -> Result<PairCheck> {
    require_connected(g)?;
    let ks = thresholds_for(g, exponents)?;
    let rows = tau_rows(g, ks);
    let partial: Vec<PairCheck> = g
        .vertices()
        .into_par_iter()
        .map(|s| {
            let dist = g.bfs_unchecked(s).dist;
            let mut check = PairCheck::default();
            for t in g.vertices().filter(|&t| t != s) {
                check.record(dist[t], rows[s].0, rows[t].1);
            }
            check
        })
        .collect();
    Ok(partial.iter().fold(PairCheck::default(), |acc, p| PairCheck {
        pairs: acc.pairs + p.pairs,
        infinite_pairs: acc.infinite_pairs + p.infinite_pairs,
        upper_holds: acc.upper_holds + p.upper_holds,
        lower_holds: acc.lower_holds + p.lower_holds,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spread {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub stdev: f64,
}

impl Spread {
    fn of(values: &[f64]) -> Self {
        let len = values.len() as f64;
        let mean = values.iter().sum::<f64>() / len;
        Spread {
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            stdev: (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / len).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EccentricityDecomposition {
    pub k: usize,
    pub c_bct: f64,
    pub mean_tau: f64,
    /// `ln n / ln c_bct`.
    pub log_term: f64,
    /// `ecc(u) − τ_u(k) − T(k) − log_c n` per vertex with finite `τ_u(k)`.
    pub residuals: Vec<f64>,
    pub spread: Spread,
    /// Spearman correlation of `τ_u(k)` with `ecc(u)`; `None` when either
    /// side is constant.
    pub rank_correlation: Option<f64>,
    pub degenerate: bool,
}

/// Compares each eccentricity with `τ_u(⌈√n⌉) + T(⌈√n⌉) + log_c n`.
pub fn eccentricity_decomposition_report(g: &Graph, c_bct: f64) -> Result<EccentricityDecomposition> {
    if !(c_bct > 1.0 && c_bct.is_finite()) {
        return Err(Error::Domain(format!(
            "c_bct must be a finite value above 1, got {c_bct}"
        )));
    }
    let k = threshold(g.vertex_count(), 0.5);
    let profile = metric_profile(g, &[k])?;
    let column = &profile.taus[0];
    let Some(mean) = column.mean else {
        return Err(Error::Domain(format!("no vertex has {k} vertices on one level")));
    };
    let log_term = (g.vertex_count() as f64).ln() / c_bct.ln();
    let (mut taus, mut eccs, mut residuals) = (Vec::new(), Vec::new(), Vec::new());
    for (v, t) in column.tau.iter().enumerate() {
        if let Some(t) = *t {
            let ecc = profile.eccentricity[v] as f64;
            taus.push(t as f64);
            eccs.push(ecc);
            residuals.push(ecc - t as f64 - mean - log_term);
        }
    }
    let rank_correlation = spearman(&taus, &eccs);
    Ok(EccentricityDecomposition {
        k,
        c_bct,
        mean_tau: mean,
        log_term,
        spread: Spread::of(&residuals),
        residuals,
        degenerate: rank_correlation.is_none(),
        rank_correlation,
    })
}

/// Average ranks, ties sharing the mean of their positions.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0;
        for &k in &idx[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

pub fn spearman(a: &[f64], b: &[f64]) -> Option<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let (ra, rb) = (ranks(a), ranks(b));
    let mean = (a.len() - 1) as f64 / 2.0;
    let cov: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - mean) * (y - mean)).sum();
    let va: f64 = ra.iter().map(|x| (x - mean).powi(2)).sum();
    let vb: f64 = rb.iter().map(|y| (y - mean).powi(2)).sum();
    if va == 0.0 || vb == 0.0 {
        None
    } else {
        Some(cov / (va * vb).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn eccentricity_examples() {
        assert_eq!(eccentricities(&generators::path(5)).unwrap(), vec![4, 3, 2, 3, 4]);
        assert_eq!(diameter(&generators::path(5)).unwrap(), 4);
        assert_eq!(eccentricities(&generators::cycle(6)).unwrap(), vec![3; 6]);
        let star = eccentricities(&generators::star(6)).unwrap();
        assert_eq!(star[0], 1);
        assert!(star[1..].iter().all(|&e| e == 2));
    }

    #[test]
    fn disconnected_input_names_components() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        let err = eccentricities(&g).unwrap_err().to_string();
        assert!(err.contains("3 components"), "{err}");
        assert!(two_sweep(&g, None).is_err());
        assert!(eccentricities(&Graph::empty()).is_err());
    }

    #[test]
    fn two_sweep_examples() {
        assert_eq!(two_sweep(&generators::cycle(6), None).unwrap().estimate, 3);
        let p5 = two_sweep(&generators::path(5), Some(2)).unwrap();
        assert_eq!((p5.start, p5.estimate, p5.end), (0, 4, 4));
        assert!(two_sweep(&generators::path(5), Some(9)).is_err());
        for seed in 0..40 {
            let tree = generators::random_tree(2 + seed as usize * 5, seed);
            let d = diameter(&tree).unwrap();
            for s in [0, tree.vertex_count() - 1] {
                assert_eq!(two_sweep(&tree, Some(s)).unwrap().estimate, d);
            }
        }
    }

    #[test]
    fn eccentricity_matches_pairwise_distances() {
        for seed in 0..20 {
            let g = generators::gnp(40, 0.12, seed).largest_component();
            let all: Vec<Vec<u32>> = g.vertices().map(|v| g.bfs_levels(v).unwrap().dist).collect();
            let ecc = eccentricities(&g).unwrap();
            for u in g.vertices() {
                assert_eq!(ecc[u], g.vertices().map(|v| all[u][v]).max().unwrap());
            }
            assert!(two_sweep(&g, None).unwrap().estimate <= diameter(&g).unwrap());
        }
    }

    #[test]
    fn tau_examples() {
        let star = generators::star(8);
        for k in 1..8 {
            assert_eq!(tau(&star, 0, k).unwrap(), Some(1));
        }
        let path = generators::path(6);
        assert_eq!(tau(&path, 0, 1).unwrap(), Some(1));
        assert_eq!(tau(&path, 0, 2).unwrap(), None);
        assert_eq!(tau(&generators::complete(7), 3, 6).unwrap(), Some(1));
        assert!(tau(&path, 0, 0).is_err());
        assert!(tau(&path, 9, 1).is_err());
    }

    #[test]
    fn tau_is_monotone_in_k() {
        for seed in 0..10 {
            let g = generators::gnp(60, 0.08, seed).largest_component();
            for s in g.vertices() {
                let levels = g.bfs_levels(s).unwrap();
                let mut last = Some(0);
                for k in 1..10 {
                    let t = tau_from_levels(&levels, k);
                    match (last, t) {
                        (Some(a), Some(b)) => assert!(b >= a),
                        (None, Some(_)) => panic!("finite after infinite"),
                        _ => {}
                    }
                    last = t;
                }
                if g.degree(s) > 0 {
                    assert_eq!(tau_from_levels(&levels, 1), Some(1));
                }
            }
        }
    }

    #[test]
    fn thresholds_round_up() {
        assert_eq!(threshold(100, 0.5), 10);
        assert_eq!(threshold(101, 0.5), 11);
        assert_eq!(threshold(1, 0.5), 1);
        assert_eq!(threshold(2000, 0.5), 45);
    }

    #[test]
    fn property_one_on_small_families() {
        let k = generators::complete(12);
        let report = bct_properties_report(&k, 500, 1, (0.5, 0.5)).unwrap();
        assert_eq!(report.property_one_fraction, Some(1.0));
        let star = generators::star(30);
        let exact = bct_pairs_exact(&star, (0.5, 0.5)).unwrap();
        assert_eq!(exact.pairs, 30 * 29);
        assert_eq!(exact.infinite_pairs, 0);
        assert_eq!(exact.upper_fraction(), Some(1.0));
        // No level of a path holds ⌈√10⌉ vertices.
        let path = bct_pairs_exact(&generators::path(10), (0.5, 0.5)).unwrap();
        assert_eq!(path.infinite_pairs, path.pairs);
        assert_eq!(path.upper_fraction(), None);
    }

    #[test]
    fn sampled_fraction_tracks_exact() {
        for seed in 0..3 {
            let g = generators::gnp(250, 0.03, seed).largest_component();
            let exact = bct_pairs_exact(&g, (0.5, 0.5)).unwrap();
            let sampled = bct_properties_report(&g, 10_000, seed, (0.5, 0.5)).unwrap();
            let diff = exact.upper_fraction().unwrap() - sampled.property_one_fraction.unwrap();
            assert!(diff.abs() <= 0.05);
        }
    }

    #[test]
    fn report_is_reproducible() {
        let g = generators::gnp(200, 0.04, 5).largest_component();
        let a = bct_properties_report(&g, 2000, 77, (0.5, 0.5)).unwrap();
        let b = bct_properties_report(&g, 2000, 77, (0.5, 0.5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_fit_recovers_geometric_decay() {
        // 2^(11-L) of 1024 vertices have τ ≥ L, so each level halves the tail.
        let mut taus = vec![Some(10)];
        for level in 1..=10u32 {
            taus.extend(std::iter::repeat_n(Some(level), 1 << (10 - level)));
        }
        let fit = tail_fit(&taus);
        assert!((fit.c_bct.unwrap() - 2.0).abs() < 0.05, "{fit:?}");
        assert!(fit.r_squared.unwrap() > 0.99);
        assert!(tail_fit(&[Some(1); 10]).c_bct.is_none());
    }

    #[test]
    fn decomposition_examples() {
        let k = eccentricity_decomposition_report(&generators::complete(9), 2.0).unwrap();
        assert_eq!(k.spread.max - k.spread.min, 0.0);
        assert!(k.degenerate);
        let c = eccentricity_decomposition_report(&generators::cycle(16), 2.0);
        // Cycle levels never reach 4 vertices.
        assert!(c.is_err());
        assert!(eccentricity_decomposition_report(&generators::complete(4), 1.0).is_err());
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]), Some(1.0));
        assert_eq!(spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman(&[1.0, 1.0, 1.0], &[3.0, 2.0, 1.0]), None);
    }
}
