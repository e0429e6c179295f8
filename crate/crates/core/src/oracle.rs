//! Naive references for cross-checking the fast paths.
//!
//! Nothing here is tuned; every routine is the most direct transcription of
//! its definition.

use std::collections::BTreeSet;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{torus_distance, Point};
use crate::rgg::Graph;
use crate::seed::{stream_rng, Stream};

/// All pairs at toroidal distance `<= r`, by checking every pair.
pub fn brute_force_edges(points: &[Point], r: f64) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if torus_distance(&points[i], &points[j]).expect("matching dimensions") <= r {
                edges.insert((i, j));
            }
        }
    }
    edges
}

/// One edge that passes the common-neighbour test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnCandidate {
    pub edge: (usize, usize),
    /// `{i, j} ∪ Z_ij`, sorted.
    pub candidate: Vec<usize>,
}

/// Every edge `(i, j)` whose common neighbours number exactly `k - 2` and
/// form a clique, in lexicographic order.
pub fn brute_force_cn_scan(graph: &Graph, k: usize) -> Result<Vec<CnCandidate>> {
    if k < 2 {
        return Err(Error::usage(format!("CN needs k >= 2, got {k}")));
    }
    let n = graph.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !graph.has_edge(i, j) {
                continue;
            }
            let z: Vec<usize> = (0..n)
                .filter(|&v| v != i && v != j && graph.has_edge(i, v) && graph.has_edge(j, v))
                .collect();
            if z.len() != k - 2 {
                continue;
            }
            let closed = z
                .iter()
                .enumerate()
                .all(|(a, &u)| z[a + 1..].iter().all(|&v| graph.has_edge(u, v)));
            if closed {
                let mut candidate = z;
                candidate.extend([i, j]);
                candidate.sort_unstable();
                out.push(CnCandidate {
                    edge: (i, j),
                    candidate,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    /// Share of the unit ball covered by the region.
    pub fraction: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Estimates what fraction of the unit `d`-ball satisfies `inside`.
///
/// Points are drawn uniformly in the ball (Gaussian direction, radius
/// `U^{1/d}`); the standard error is `√(p(1-p)/samples)`.
pub fn monte_carlo_volume(
    inside: impl Fn(&[f64]) -> bool,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<VolumeEstimate> {
    if d == 0 {
        return Err(Error::usage("dimension must be at least 1"));
    }
    if samples < 10_000 {
        return Err(Error::usage(format!("need at least 10^4 samples, got {samples}")));
    }
    let mut rng = stream_rng(seed, Stream::Positions);
    let mut point = vec![0.0; d];
    let mut hits = 0usize;
    for _ in 0..samples {
        let mut norm2 = 0.0f64;
        for c in point.iter_mut() {
            *c = StandardNormal.sample(&mut rng);
            norm2 += *c * *c;
        }
        let scale = rng.random::<f64>().powf(1.0 / d as f64) / norm2.sqrt();
        for c in point.iter_mut() {
            *c *= scale;
        }
        if inside(&point) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    Ok(VolumeEstimate {
        fraction: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
    })
}

/// Outcome of comparing a fast routine against its oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub instance: String,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares a geometric graph's edges with [`brute_force_edges`].
pub fn check_edges(graph: &Graph, label: impl Into<String>) -> OracleReport {
    let fast: BTreeSet<(usize, usize)> = graph.edges().collect();
    let slow = brute_force_edges(&graph.positions(), graph.radius());
    let mismatches = fast
        .symmetric_difference(&slow)
        .map(|(i, j)| {
            let side = if fast.contains(&(*i, *j)) { "extra" } else { "missing" };
            format!("{side} edge ({i}, {j})")
        })
        .collect();
    OracleReport {
        instance: label.into(),
        mismatches,
    }
}

/// Compares [`crate::algorithms::cn_recover`] with the first candidate of
/// the exhaustive scan.
pub fn check_cn(graph: &Graph, k: usize, label: impl Into<String>) -> Result<OracleReport> {
    let fast = crate::algorithms::cn_recover(graph, k)?.output;
    let slow = brute_force_cn_scan(graph, k)?
        .into_iter()
        .next()
        .map(|c| c.candidate)
        .unwrap_or_default();
    let mismatches = if fast == slow {
        Vec::new()
    } else {
        vec![format!("cn returned {fast:?}, exhaustive scan starts with {slow:?}")]
    };
    Ok(OracleReport {
        instance: label.into(),
        mismatches,
    })
}
