//! Plain-text instance files.
//!
//! ```text
//! rggraph v1 <d> <r> <N>
//! <N lines of d coordinates>
//! edges <M>
//! <M lines "i j" with i < j>
//! clique <k>            (optional)
//! <k ids on one line>
//! planted <P>           (optional, only after clique)
//! <P lines "i j">
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{Graph, PlantedInstance};
use crate::error::{Error, Result};

/// What a file held: a bare graph or a planted instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Planted(PlantedInstance),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Graph(g) => g,
            Instance::Planted(p) => p.graph(),
        }
    }

    pub fn clique(&self) -> Option<&[usize]> {
        match self {
            Instance::Graph(_) => None,
            Instance::Planted(p) => Some(p.clique()),
        }
    }
}

pub fn write_graph(graph: &Graph) -> Result<String> {
    let mut out = header(graph)?;
    write_edges(&mut out, graph.edges().collect::<Vec<_>>().as_slice());
    Ok(out)
}

pub fn write_planted(inst: &PlantedInstance) -> Result<String> {
    let mut out = header(inst.graph())?;
    write_edges(&mut out, &inst.graph().edges().collect::<Vec<_>>());
    let ids: Vec<String> = inst.clique().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "clique {}", ids.len());
    let _ = writeln!(out, "{}", ids.join(" "));
    let _ = writeln!(out, "planted {}", inst.planted_edges().len());
    for (i, j) in inst.planted_edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    Ok(out)
}

fn header(graph: &Graph) -> Result<String> {
    if !graph.has_positions() {
        return Err(Error::usage("only geometric graphs can be written to instance files"));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "rggraph v1 {} {:e} {}",
        graph.dim(),
        graph.radius(),
        graph.vertex_count()
    );
    for chunk in graph.flat_positions().chunks(graph.dim()) {
        let coords: Vec<String> = chunk.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    Ok(out)
}

fn write_edges(out: &mut String, edges: &[(usize, usize)]) {
    let _ = writeln!(out, "edges {}", edges.len());
    for (i, j) in edges {
        let _ = writeln!(out, "{i} {j}");
    }
}

pub fn save(instance: &Instance, path: &Path) -> Result<()> {
    let text = match instance {
        Instance::Graph(g) => write_graph(g)?,
        Instance::Planted(p) => write_planted(p)?,
    };
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            let t = line.trim();
            if !t.is_empty() {
                return Ok((idx + 1, t));
            }
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of file, expected {what}")))
    }

    fn next_nonempty(&mut self) -> Option<(usize, &'a str)> {
        for (idx, line) in self.inner.by_ref() {
            self.last = idx + 1;
            let t = line.trim();
            if !t.is_empty() {
                return Some((idx + 1, t));
            }
        }
        None
    }
}

fn field<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} {token:?}")))
}

fn section(line: usize, text: &str, keyword: &str) -> Result<usize> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected `{keyword} <count>`")));
    }
    let count = field(line, parts.next(), "count")?;
    if parts.next().is_some() {
        return Err(Error::parse(line, "trailing tokens"));
    }
    Ok(count)
}

fn read_pairs(lines: &mut Lines<'_>, count: usize, vertices: usize) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, text) = lines.next_line("an edge")?;
        let mut parts = text.split_whitespace();
        let i: usize = field(no, parts.next(), "vertex id")?;
        let j: usize = field(no, parts.next(), "vertex id")?;
        if parts.next().is_some() {
            return Err(Error::parse(no, "an edge line holds exactly two ids"));
        }
        if i >= vertices || j >= vertices {
            return Err(Error::parse(no, format!("edge ({i}, {j}) out of range")));
        }
        if i == j {
            return Err(Error::parse(no, format!("self-loop at {i}")));
        }
        pairs.push((i.min(j), i.max(j)));
    }
    Ok(pairs)
}

pub fn parse(text: &str) -> Result<Instance> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (no, head) = lines.next_line("a header")?;
    let mut parts = head.split_whitespace();
    if parts.next() != Some("rggraph") || parts.next() != Some("v1") {
        return Err(Error::parse(no, "expected header `rggraph v1 <d> <r> <N>`"));
    }
    let dim: usize = field(no, parts.next(), "dimension")?;
    let radius: f64 = field(no, parts.next(), "radius")?;
    let count: usize = field(no, parts.next(), "vertex count")?;
    if parts.next().is_some() {
        return Err(Error::parse(no, "trailing tokens in header"));
    }
    if dim == 0 {
        return Err(Error::parse(no, "dimension must be at least 1"));
    }
    if !(0.0..0.25).contains(&radius) {
        return Err(Error::parse(no, format!("radius {radius} outside [0, 1/4)")));
    }

    let mut positions = Vec::with_capacity(count * dim);
    for _ in 0..count {
        let (no, text) = lines.next_line("a coordinate line")?;
        let coords: Vec<&str> = text.split_whitespace().collect();
        if coords.len() != dim {
            return Err(Error::parse(no, format!("expected {dim} coordinates, found {}", coords.len())));
        }
        for c in coords {
            let x: f64 = field(no, Some(c), "coordinate")?;
            if !(0.0..1.0).contains(&x) {
                return Err(Error::parse(no, format!("coordinate {x} outside [0, 1)")));
            }
            positions.push(x);
        }
    }

    let (no, text) = lines.next_line("an edges section")?;
    let m = section(no, text, "edges")?;
    let edges = read_pairs(&mut lines, m, count)?;
    let graph = Graph::with_edges(dim, radius, positions, &edges)?;

    let Some((no, text)) = lines.next_nonempty() else {
        return Ok(Instance::Graph(graph));
    };
    let k = section(no, text, "clique")?;
    let mut clique = Vec::with_capacity(k);
    if k > 0 {
        let (no, text) = lines.next_line("clique ids")?;
        for tok in text.split_whitespace() {
            let v: usize = field(no, Some(tok), "vertex id")?;
            if v >= count {
                return Err(Error::parse(no, format!("clique vertex {v} out of range")));
            }
            clique.push(v);
        }
        if clique.len() != k {
            return Err(Error::parse(no, format!("expected {k} clique ids, found {}", clique.len())));
        }
    }
    clique.sort_unstable();
    clique.dedup();
    if clique.len() != k {
        return Err(Error::parse(no, "clique ids must be distinct"));
    }
    if !graph.is_clique(&clique) {
        return Err(Error::parse(no, "listed clique is not complete in the edge list"));
    }

    let planted = match lines.next_nonempty() {
        None => Vec::new(),
        Some((no, text)) => {
            let p = section(no, text, "planted")?;
            let pairs = read_pairs(&mut lines, p, count)?;
            if let Some((no, _)) = lines.next_nonempty() {
                return Err(Error::parse(no, "unexpected content after planted section"));
            }
            pairs
        }
    };
    Ok(Instance::Planted(PlantedInstance::from_parts(graph, clique, planted)))
}
