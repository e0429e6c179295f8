//! Degree-based (VD) and common-neighbour-based (CN) clique recovery.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rgg::{intersect_sorted, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
pub enum Method {
    #[serde(rename = "VD", alias = "vd")]
    Vd,
    #[serde(rename = "CN", alias = "cn")]
    Cn,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Vd => "VD",
            Method::Cn => "CN",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "VD" => Ok(Method::Vd),
            "CN" => Ok(Method::Cn),
            _ => Err(Error::usage(format!("unknown method {s:?}; expected VD or CN"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkCounters {
    /// Edges (or, for VD, vertices) visited before returning.
    pub edges_scanned: usize,
    /// Edges whose common-neighbour count was exactly `k - 2`.
    pub clique_checks: usize,
    /// Adjacency lookups spent inside clique checks.
    pub adjacency_probes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryResult {
    pub method: Method,
    pub k: usize,
    /// Sorted; empty when CN finds nothing.
    pub output: Vec<usize>,
    /// Set once the result has been scored with [`evaluate`].
    pub exact_match: Option<bool>,
    pub overlap: Option<usize>,
    pub work: WorkCounters,
}

/// The `k` vertices of largest degree, ties going to the smaller id.
///
/// One pass over the degrees keeps the current best `k` in a min-heap whose
/// root is the weakest kept vertex.
pub fn vd_recover(graph: &Graph, k: usize) -> Result<RecoveryResult> {
    let n = graph.vertex_count();
    if k == 0 || k > n {
        return Err(Error::usage(format!("VD needs 1 <= k <= N, got k = {k}, N = {n}")));
    }
    // heap key: (degree, Reverse(id)); the minimum is the worst candidate
    let mut heap: BinaryHeap<Reverse<(usize, Reverse<usize>)>> = BinaryHeap::with_capacity(k + 1);
    for v in 0..n {
        let key = (graph.degree(v), Reverse(v));
        if heap.len() < k {
            heap.push(Reverse(key));
        } else if let Some(Reverse(worst)) = heap.peek() {
            if key > *worst {
                heap.pop();
                heap.push(Reverse(key));
            }
        }
    }
    let mut output: Vec<usize> = heap.into_iter().map(|Reverse((_, Reverse(v)))| v).collect();
    output.sort_unstable();
    Ok(RecoveryResult {
        method: Method::Vd,
        k,
        output,
        exact_match: None,
        overlap: None,
        work: WorkCounters {
            edges_scanned: n,
            ..WorkCounters::default()
        },
    })
}

/// Scans edges `(i, j)`, `i < j`, in lexicographic order and returns
/// `{i, j} ∪ Z_ij` for the first edge whose `k - 2` common neighbours form
/// a clique. Returns an empty set if no edge qualifies.
pub fn cn_recover(graph: &Graph, k: usize) -> Result<RecoveryResult> {
    if k < 2 {
        return Err(Error::usage(format!("CN needs k >= 2, got {k}")));
    }
    let target = k - 2;
    let mut work = WorkCounters::default();
    let mut common = Vec::new();
    for i in 0..graph.vertex_count() {
        let ni = graph.neighbors(i);
        // neither endpoint can have fewer than k - 1 neighbours
        let skip_i = ni.len() < k - 1;
        for &j in &ni[ni.partition_point(|&j| j <= i)..] {
            work.edges_scanned += 1;
            if skip_i || graph.degree(j) < k - 1 {
                continue;
            }
            intersect_sorted(ni, graph.neighbors(j), &mut common);
            if common.len() != target {
                continue;
            }
            work.clique_checks += 1;
            let (ok, probes) = graph.count_clique_probes(&common);
            work.adjacency_probes += probes;
            if ok {
                let mut output = common.clone();
                output.push(i);
                output.push(j);
                output.sort_unstable();
                return Ok(RecoveryResult {
                    method: Method::Cn,
                    k,
                    output,
                    exact_match: None,
                    overlap: None,
                    work,
                });
            }
        }
    }
    Ok(RecoveryResult {
        method: Method::Cn,
        k,
        output: Vec::new(),
        exact_match: None,
        overlap: None,
        work,
    })
}

/// Scores a result against the true clique.
pub fn evaluate(mut result: RecoveryResult, truth: &[usize]) -> RecoveryResult {
    let mut truth = truth.to_vec();
    truth.sort_unstable();
    truth.dedup();
    let mut shared = Vec::new();
    intersect_sorted(&result.output, &truth, &mut shared);
    result.exact_match = Some(result.output == truth);
    result.overlap = Some(shared.len());
    result
}
