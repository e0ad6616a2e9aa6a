//! Undirected graphs, DIMACS text I/O, and seeded generation of random
//! 3-colorable instances.
//!
//! Generated graphs carry their ground-truth 3-partition, so every instance
//! is 3-colorable by construction. Generation is a pure function of
//! `(type, n, p, seed)`: the RNG is ChaCha8 seeded with `seed`, and pairs are
//! visited in a fixed order, so the same arguments yield an identical graph
//! on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// An immutable undirected graph with optional ground-truth 3-partition.
///
/// Vertices are `0..n-1`. Edges are stored as `(min, max)` pairs, sorted and
/// deduplicated. Self-loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    partition: Option<Vec<u8>>,
}

impl Graph {
    /// Builds a graph, normalizing edges to `(min, max)` order, sorting and
    /// collapsing duplicates. Rejects self-loops, out-of-range endpoints, and
    /// a partition that puts both endpoints of an edge in the same class.
    pub fn new(n: usize, edges: Vec<(u32, u32)>, partition: Option<Vec<u8>>) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();

        if let Some(part) = &partition {
            if part.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "partition has {} entries, expected {n}",
                    part.len()
                )));
            }
            if let Some(&c) = part.iter().find(|&&c| c > 2) {
                return Err(Error::InvalidParameter(format!(
                    "partition class {c} outside 0..=2"
                )));
            }
            if let Some(&(u, v)) = norm
                .iter()
                .find(|&&(u, v)| part[u as usize] == part[v as usize])
            {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) joins two vertices of partition class {}",
                    part[u as usize]
                )));
            }
        }

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Ok(Self {
            n,
            edges: norm,
            adj,
            partition,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Ground-truth class per vertex, present on generated graphs.
    pub fn partition(&self) -> Option<&[u8]> {
        self.partition.as_deref()
    }

    /// Complete graph on `n` vertices (no partition).
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        Self::new(n, edges, None).expect("complete graph is always valid")
    }

    /// Cycle graph on `n >= 3` vertices (no partition).
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges = (0..n as u32)
            .map(|u| (u, (u + 1) % n as u32))
            .collect();
        Self::new(n, edges, None).expect("cycle graph is always valid")
    }
}

/// Family of random 3-colorable graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphType {
    /// Class sizes differ by at most one; each cross-class pair kept with
    /// probability `p`.
    EquiPartite,
    /// Each vertex assigned to a class uniformly at random; each cross-class
    /// pair kept with probability `p`.
    Uniform,
    /// Classes as in `EquiPartite`; exactly `round(p * P)` edges placed to
    /// minimize the degree spread, where `P` counts cross-class pairs.
    Flat,
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GraphType::EquiPartite => "equipartite",
            GraphType::Uniform => "uniform",
            GraphType::Flat => "flat",
        };
        f.write_str(s)
    }
}

impl FromStr for GraphType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equipartite" => Ok(GraphType::EquiPartite),
            "uniform" => Ok(GraphType::Uniform),
            "flat" => Ok(GraphType::Flat),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph type '{other}' (expected equipartite, uniform or flat)"
            ))),
        }
    }
}

/// Generates a random 3-colorable graph of the given family.
///
/// `p` applies only to cross-class vertex pairs; same-class edges are never
/// created, so the stored partition is always a proper 3-coloring.
pub fn generate(ty: GraphType, n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 3")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p}, need 0 <= p <= 1")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let classes: Vec<u8> = match ty {
        GraphType::EquiPartite | GraphType::Flat => {
            (0..n).map(|v| (v % 3) as u8).collect()
        }
        GraphType::Uniform => (0..n).map(|_| rng.gen_range(0..3u8)).collect(),
    };

    let edges = match ty {
        GraphType::EquiPartite | GraphType::Uniform => {
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if classes[u as usize] != classes[v as usize] && rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        GraphType::Flat => flat_edges(n, p, &classes, &mut rng),
    };

    Graph::new(n, edges, Some(classes))
}

/// Places exactly `round(p * P)` cross-class edges, at each step picking
/// uniformly among the candidate pairs whose endpoint degree sum is minimal.
fn flat_edges(n: usize, p: f64, classes: &[u8], rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if classes[u as usize] != classes[v as usize] {
                candidates.push((u, v));
            }
        }
    }
    let m = (p * candidates.len() as f64).round() as usize;
    let mut degree = vec![0u32; n];
    let mut edges = Vec::with_capacity(m);

    for _ in 0..m {
        // One pass: track the minimal degree sum seen so far and
        // reservoir-sample uniformly among its ties.
        let mut best_sum = u32::MAX;
        let mut ties = 0usize;
        let mut chosen = 0usize;
        for (idx, &(u, v)) in candidates.iter().enumerate() {
            let sum = degree[u as usize] + degree[v as usize];
            if sum < best_sum {
                best_sum = sum;
                ties = 1;
                chosen = idx;
            } else if sum == best_sum {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    chosen = idx;
                }
            }
        }
        let (u, v) = candidates.swap_remove(chosen);
        degree[u as usize] += 1;
        degree[v as usize] += 1;
        edges.push((u, v));
    }
    edges
}

/// Parses a DIMACS `.col`-style graph.
///
/// Accepts `c ...` comment lines anywhere, one `p edge <n> <m>` line, and
/// `e <u> <v>` lines with 1-based vertex ids. Duplicate edges collapse. A
/// `c partition <c1> ... <cn>` comment restores the ground-truth partition.
pub fn load_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut partition: Option<(usize, Vec<u8>)> = None;

    let fmt_err = |line: usize, message: String| Error::Format { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_ascii_whitespace();
        match fields.next() {
            Some("c") => {
                if fields.next() == Some("partition") {
                    let classes: Vec<u8> = fields
                        .map(|t| {
                            t.parse::<u8>().map_err(|_| {
                                fmt_err(lineno, format!("bad partition class '{t}'"))
                            })
                        })
                        .collect::<Result<_>>()?;
                    partition = Some((lineno, classes));
                }
            }
            Some("p") => {
                if n.is_some() {
                    return Err(fmt_err(lineno, "duplicate 'p' line".into()));
                }
                if fields.next() != Some("edge") {
                    return Err(fmt_err(lineno, "expected 'p edge <n> <m>'".into()));
                }
                let nv: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| fmt_err(lineno, "bad vertex count in 'p' line".into()))?;
                let _m: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| fmt_err(lineno, "bad edge count in 'p' line".into()))?;
                n = Some(nv);
            }
            Some("e") => {
                let n = n.ok_or_else(|| fmt_err(lineno, "'e' line before 'p' line".into()))?;
                let u: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| fmt_err(lineno, "bad edge endpoint".into()))?;
                let v: usize = fields
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| fmt_err(lineno, "bad edge endpoint".into()))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(fmt_err(
                        lineno,
                        format!("vertex id out of range 1..={n} in edge ({u}, {v})"),
                    ));
                }
                if u == v {
                    return Err(fmt_err(lineno, format!("self-loop at vertex {u}")));
                }
                edges.push((u as u32 - 1, v as u32 - 1));
            }
            Some(other) => {
                return Err(fmt_err(lineno, format!("unknown line type '{other}'")));
            }
            None => unreachable!("empty lines are skipped"),
        }
    }

    let n = n.ok_or_else(|| fmt_err(text.lines().count().max(1), "missing 'p' line".into()))?;
    let partition = match partition {
        Some((lineno, classes)) => {
            if classes.len() != n {
                return Err(fmt_err(
                    lineno,
                    format!("partition has {} entries, expected {n}", classes.len()),
                ));
            }
            Some(classes)
        }
        None => None,
    };

    Graph::new(n, edges, partition).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::Format { line: 0, message: msg },
        other => other,
    })
}

/// Serializes a graph in the DIMACS text format accepted by [`load_dimacs`].
/// Edges are sorted ascending; output is byte-deterministic.
pub fn save_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
    if let Some(part) = g.partition() {
        out.push_str("c partition");
        for &c in part {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
