//! Hard random geometric graphs on the unit torus and clique planting.

mod grid;
pub mod io;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::seed::{stream_rng, Stream};
use crate::theory::ModelParams;

/// How many vertices an instance gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexCount {
    /// `N ~ Poisson(n)`.
    #[default]
    Poisson,
    /// Exactly this many vertices.
    Fixed(usize),
}

/// Undirected simple graph with sorted adjacency lists and, for geometric
/// instances, the vertex positions that generated it.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    dim: usize,
    radius: f64,
    /// Flat `N × dim` coordinates; empty for purely combinatorial graphs.
    positions: Vec<f64>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds the hard geometric graph on the given positions: an edge for
    /// every pair at toroidal distance `<= radius`.
    pub fn from_positions(points: &[Point], radius: f64) -> Result<Self> {
        let dim = match points.first() {
            Some(p) => p.dim(),
            None => {
                return Err(Error::usage(
                    "no positions given; use Graph::empty for an empty geometric graph",
                ))
            }
        };
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::usage("positions have mixed dimensions"));
        }
        let flat: Vec<f64> = points.iter().flat_map(|p| p.coords().iter().copied()).collect();
        Graph::from_flat_positions(dim, radius, flat)
    }

    pub fn empty(dim: usize, radius: f64) -> Result<Self> {
        Graph::from_flat_positions(dim, radius, Vec::new())
    }

    pub(crate) fn from_flat_positions(dim: usize, radius: f64, positions: Vec<f64>) -> Result<Self> {
        check_radius(radius)?;
        if dim == 0 {
            return Err(Error::usage("dimension must be at least 1"));
        }
        let adjacency = grid::radius_adjacency(&positions, dim, radius);
        Ok(Graph {
            dim,
            radius,
            positions,
            adjacency,
        })
    }

    /// Combinatorial graph on `vertex_count` vertices with no positions.
    /// Duplicate edges are merged; self-loops and out-of-range ids are errors.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let adjacency = adjacency_from_edges(vertex_count, edges)?;
        Ok(Graph {
            dim: 0,
            radius: 0.0,
            positions: Vec::new(),
            adjacency,
        })
    }

    /// Geometric graph with an explicit edge list (used when reading files
    /// and when planting).
    pub(crate) fn with_edges(
        dim: usize,
        radius: f64,
        positions: Vec<f64>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let count = positions.len() / dim.max(1);
        let adjacency = adjacency_from_edges(count, edges)?;
        Ok(Graph {
            dim,
            radius,
            positions,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Ambient dimension, or 0 for graphs built without positions.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn has_positions(&self) -> bool {
        self.dim > 0
    }

    pub fn position(&self, v: usize) -> Option<&[f64]> {
        if !self.has_positions() || v >= self.vertex_count() {
            return None;
        }
        Some(&self.positions[v * self.dim..(v + 1) * self.dim])
    }

    pub fn positions(&self) -> Vec<Point> {
        if !self.has_positions() {
            return Vec::new();
        }
        self.positions
            .chunks(self.dim)
            .map(|c| Point::new(c.to_vec()).expect("stored positions are canonical"))
            .collect()
    }

    pub(crate) fn flat_positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, list)| {
            let start = list.partition_point(|&j| j <= i);
            list[start..].iter().map(move |&j| (i, j))
        })
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i >= self.vertex_count() || j >= self.vertex_count() {
            return false;
        }
        let (a, b) = if self.degree(i) <= self.degree(j) { (i, j) } else { (j, i) };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// `N(i) ∩ N(j)`, sorted. `i` and `j` never appear in it.
    pub fn common_neighbors(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::usage("common neighbours need two distinct vertices"));
        }
        let mut out = Vec::new();
        intersect_sorted(&self.adjacency[i], &self.adjacency[j], &mut out);
        Ok(out)
    }

    /// Whether every pair of `set` is adjacent. Probes each pair at most
    /// once and stops at the first missing edge.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        self.count_clique_probes(set).0
    }

    /// `(is_clique, probes used)`; probes never exceed `C(|set|, 2)`.
    pub(crate) fn count_clique_probes(&self, set: &[usize]) -> (bool, usize) {
        let mut probes = 0;
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                probes += 1;
                if u == v || !self.has_edge(u, v) {
                    return (false, probes);
                }
            }
        }
        (true, probes)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::usage(format!(
                "vertex {v} out of range (graph has {} vertices)",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    /// Verifies symmetry, sortedness, and absence of loops and duplicates.
    pub fn check_structure(&self) -> Result<()> {
        for (i, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Instance(format!("neighbour list of {i} is not strictly sorted")));
            }
            for &j in list {
                if j == i {
                    return Err(Error::Instance(format!("self-loop at {i}")));
                }
                if j >= self.vertex_count() || self.adjacency[j].binary_search(&i).is_err() {
                    return Err(Error::Instance(format!("edge ({i}, {j}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    fn add_edge(&mut self, i: usize, j: usize) -> bool {
        match self.adjacency[i].binary_search(&j) {
            Ok(_) => false,
            Err(pos) => {
                self.adjacency[i].insert(pos, j);
                let pos = self.adjacency[j].binary_search(&i).unwrap_err();
                self.adjacency[j].insert(pos, i);
                true
            }
        }
    }

    fn remove_edge(&mut self, i: usize, j: usize) {
        if let Ok(pos) = self.adjacency[i].binary_search(&j) {
            self.adjacency[i].remove(pos);
        }
        if let Ok(pos) = self.adjacency[j].binary_search(&i) {
            self.adjacency[j].remove(pos);
        }
    }
}

fn check_radius(radius: f64) -> Result<()> {
    if !(radius >= 0.0) || radius >= crate::theory::params::MAX_RADIUS {
        return Err(Error::domain(format!("radius {radius} must lie in [0, 1/4)")));
    }
    Ok(())
}

fn adjacency_from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for &(i, j) in edges {
        if i >= vertex_count || j >= vertex_count {
            return Err(Error::usage(format!(
                "edge ({i}, {j}) references a vertex outside 0..{vertex_count}"
            )));
        }
        if i == j {
            return Err(Error::usage(format!("self-loop at {i}")));
        }
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(adjacency)
}

/// Merge-intersection of two sorted lists into `out` (cleared first).
pub(crate) fn intersect_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
}

/// Samples `G(n, r)` with a Poisson number of vertices.
pub fn sample_instance(params: &ModelParams, seed: u64) -> Result<Graph> {
    sample_instance_with(params, VertexCount::Poisson, seed)
}

/// Samples `G(n, r)` with the given vertex-count rule. Positions come from
/// the [`Stream::Positions`] stream and the Poisson draw from
/// [`Stream::VertexCount`].
pub fn sample_instance_with(params: &ModelParams, count: VertexCount, seed: u64) -> Result<Graph> {
    check_radius(params.radius())?;
    let vertices = match count {
        VertexCount::Fixed(v) => v,
        VertexCount::Poisson => {
            if params.n() <= 0.0 {
                0
            } else {
                let dist = Poisson::new(params.n())
                    .map_err(|e| Error::domain(format!("cannot draw Poisson({}): {e}", params.n())))?;
                dist.sample(&mut stream_rng(seed, Stream::VertexCount)) as usize
            }
        }
    };
    let mut rng = stream_rng(seed, Stream::Positions);
    let positions: Vec<f64> = (0..vertices * params.dim()).map(|_| rng.random::<f64>()).collect();
    Graph::from_flat_positions(params.dim(), params.radius(), positions)
}

/// A graph after completing a hidden vertex set into a clique.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance {
    graph: Graph,
    clique: Vec<usize>,
    planted_edges: Vec<(usize, usize)>,
}

impl PlantedInstance {
    pub(crate) fn from_parts(
        graph: Graph,
        clique: Vec<usize>,
        planted_edges: Vec<(usize, usize)>,
    ) -> Self {
        PlantedInstance {
            graph,
            clique,
            planted_edges,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// The hidden set `K`, sorted.
    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    /// Pairs inside `K` that were absent before planting, lexicographic.
    pub fn planted_edges(&self) -> &[(usize, usize)] {
        &self.planted_edges
    }

    /// The graph before planting.
    pub fn base_graph(&self) -> Graph {
        let mut g = self.graph.clone();
        for &(i, j) in &self.planted_edges {
            g.remove_edge(i, j);
        }
        g
    }
}

/// Plants a clique on a uniformly random `k`-subset (seeded partial
/// Fisher–Yates on the [`Stream::CliqueChoice`] stream).
pub fn plant_clique(graph: &Graph, k: usize, seed: u64) -> Result<PlantedInstance> {
    if k < 2 {
        return Err(Error::usage(format!("planted clique size must be at least 2, got {k}")));
    }
    let vertices = graph.vertex_count();
    if k > vertices {
        return Err(Error::Instance(format!(
            "cannot plant a {k}-clique in a graph with {vertices} vertices"
        )));
    }
    let mut rng = stream_rng(seed, Stream::CliqueChoice);
    let chosen = index::sample(&mut rng, vertices, k).into_vec();
    plant_clique_on(graph, &chosen)
}

/// Completes the given vertex set into a clique.
pub fn plant_clique_on(graph: &Graph, set: &[usize]) -> Result<PlantedInstance> {
    let mut clique = set.to_vec();
    clique.sort_unstable();
    clique.dedup();
    if clique.len() != set.len() {
        return Err(Error::usage("clique vertices must be distinct"));
    }
    if let Some(&v) = clique.last() {
        graph.check_vertex(v)?;
    }
    let mut planted = graph.clone();
    let mut planted_edges = Vec::new();
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            if planted.add_edge(u, v) {
                planted_edges.push((u, v));
            }
        }
    }
    Ok(PlantedInstance {
        graph: planted,
        clique,
        planted_edges,
    })
}
