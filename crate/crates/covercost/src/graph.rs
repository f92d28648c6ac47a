//! Simple undirected connected graphs: validation, edge-list text I/O and
//! deterministic generators.
//!
//! Every [`Graph`] is simple (no loops, no parallel edges), connected and
//! has at least two vertices, so every vertex has positive degree and a
//! random walk can cover the whole graph. Vertices are dense `0..V`
//! indices; paths generated by [`GraphKind::Path`] are indexed `0..=n`
//! along the path so the closed forms in [`crate::closed_forms`] apply to
//! the vertex labels directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::VecDeque;
use thiserror::Error;

/// Rejection cap for the connected G(n,p) generator.
const GNP_MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range (vertex count {vertex_count})")]
    IndexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("invalid parameters for {kind}: {message}")]
    InvalidSize {
        kind: &'static str,
        message: String,
    },
    #[error("no connected G(n={n}, p={p}) sample in {attempts} attempts")]
    RetriesExhausted { n: usize, p: f64, attempts: usize },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    InvalidVertex { vertex: usize, vertex_count: usize },
}

/// A simple undirected connected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Build and validate a graph from an explicit edge list.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if vertex_count < 2 {
            return Err(GraphError::TooFewVertices(vertex_count));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (line, &(u, v)) in edges.iter().enumerate() {
            let line = line + 1;
            for &w in &[u, v] {
                if w >= vertex_count {
                    return Err(GraphError::IndexOutOfRange {
                        line,
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if adjacency[u].contains(&v) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let graph = Graph {
            adjacency,
            edge_count: edges.len(),
        };
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    /// Number of vertices `|V|`.
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges `|E|`.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `n = |V| - 1`, the normalization constant of the cover cost.
    pub fn n(&self) -> usize {
        self.adjacency.len() - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Edges as `(u, v)` pairs with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    fn is_connected(&self) -> bool {
        let v = self.vertex_count();
        let mut seen = vec![false; v];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == v
    }

    /// Edge-counting distances from `source` by breadth-first search.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(source)?;
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// `|E| = |V| - 1`; connectivity is already a construction invariant.
    pub fn is_tree(&self) -> bool {
        self.edge_count == self.vertex_count() - 1
    }

    /// Serialize to the edge-list text format accepted by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.vertex_count()));
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn path(edges: usize) -> Result<Self, GraphError> {
        generate(GraphKind::Path { edges })
    }

    pub fn cycle(vertices: usize) -> Result<Self, GraphError> {
        generate(GraphKind::Cycle { vertices })
    }

    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        generate(GraphKind::Star { leaves })
    }

    pub fn complete(vertices: usize) -> Result<Self, GraphError> {
        generate(GraphKind::Complete { vertices })
    }
}

/// Parse the edge-list text format.
///
/// Lines starting with `#` are comments. The first data line is the vertex
/// count `V`; each following data line is one edge `u v` with
/// `0 <= u, v < V`. Errors carry the 1-based line number.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let data = raw.trim();
        if data.is_empty() || data.starts_with('#') {
            continue;
        }
        match vertex_count {
            None => {
                let v: usize = data.parse().map_err(|_| GraphError::Malformed {
                    line,
                    message: format!("expected vertex count, got {data:?}"),
                })?;
                if v < 2 {
                    return Err(GraphError::TooFewVertices(v));
                }
                vertex_count = Some(v);
            }
            Some(v) => {
                let mut fields = data.split_whitespace();
                let (u_str, w_str) = match (fields.next(), fields.next(), fields.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => {
                        return Err(GraphError::Malformed {
                            line,
                            message: format!("expected \"u v\", got {data:?}"),
                        })
                    }
                };
                let parse = |s: &str| -> Result<usize, GraphError> {
                    s.parse().map_err(|_| GraphError::Malformed {
                        line,
                        message: format!("expected vertex index, got {s:?}"),
                    })
                };
                let (u, w) = (parse(u_str)?, parse(w_str)?);
                for &x in &[u, w] {
                    if x >= v {
                        return Err(GraphError::IndexOutOfRange {
                            line,
                            vertex: x,
                            vertex_count: v,
                        });
                    }
                }
                if u == w {
                    return Err(GraphError::SelfLoop { line, vertex: u });
                }
                if !seen.insert((u.min(w), u.max(w))) {
                    return Err(GraphError::DuplicateEdge { line, u, v: w });
                }
                edges.push((u, w));
            }
        }
    }
    let vertex_count = vertex_count.ok_or(GraphError::Malformed {
        line: 0,
        message: "empty input: missing vertex count".into(),
    })?;
    Graph::from_edges(vertex_count, &edges)
}

/// The built-in graph families. Generation is a pure function of the
/// variant: equal parameters (including seeds) yield equal edge sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// Path with `edges + 1` vertices indexed `0..=edges` along the path.
    Path { edges: usize },
    /// Cycle on `vertices` vertices.
    Cycle { vertices: usize },
    /// Star with center `0` and `leaves` leaves.
    Star { leaves: usize },
    /// Complete graph on `vertices` vertices.
    Complete { vertices: usize },
    /// Uniform random labelled tree on `vertices` vertices.
    RandomTree { vertices: usize, seed: u64 },
    /// Erdos-Renyi G(n, p) resampled until connected.
    Gnp {
        vertices: usize,
        edge_probability: f64,
        seed: u64,
    },
}

pub fn generate(kind: GraphKind) -> Result<Graph, GraphError> {
    match kind {
        GraphKind::Path { edges } => {
            require(edges >= 1, "path", "edge count must be >= 1")?;
            let list: Vec<_> = (0..edges).map(|i| (i, i + 1)).collect();
            Graph::from_edges(edges + 1, &list)
        }
        GraphKind::Cycle { vertices } => {
            require(vertices >= 3, "cycle", "vertex count must be >= 3")?;
            let list: Vec<_> = (0..vertices).map(|i| (i, (i + 1) % vertices)).collect();
            Graph::from_edges(vertices, &list)
        }
        GraphKind::Star { leaves } => {
            require(leaves >= 1, "star", "leaf count must be >= 1")?;
            let list: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
            Graph::from_edges(leaves + 1, &list)
        }
        GraphKind::Complete { vertices } => {
            require(vertices >= 2, "complete", "vertex count must be >= 2")?;
            let mut list = Vec::new();
            for u in 0..vertices {
                for v in u + 1..vertices {
                    list.push((u, v));
                }
            }
            Graph::from_edges(vertices, &list)
        }
        GraphKind::RandomTree { vertices, seed } => {
            require(vertices >= 2, "random_tree", "vertex count must be >= 2")?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let edges = random_tree_edges(vertices, &mut rng);
            Graph::from_edges(vertices, &edges)
        }
        GraphKind::Gnp {
            vertices,
            edge_probability: p,
            seed,
        } => {
            require(vertices >= 2, "gnp", "vertex count must be >= 2")?;
            require(
                (0.0..=1.0).contains(&p),
                "gnp",
                "edge probability must lie in [0, 1]",
            )?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for _ in 0..GNP_MAX_ATTEMPTS {
                let mut edges = Vec::new();
                for u in 0..vertices {
                    for v in u + 1..vertices {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                match Graph::from_edges(vertices, &edges) {
                    Ok(g) => return Ok(g),
                    Err(GraphError::Disconnected) => continue,
                    Err(other) => return Err(other),
                }
            }
            Err(GraphError::RetriesExhausted {
                n: vertices,
                p,
                attempts: GNP_MAX_ATTEMPTS,
            })
        }
    }
}

fn require(cond: bool, kind: &'static str, message: &str) -> Result<(), GraphError> {
    if cond {
        Ok(())
    } else {
        Err(GraphError::InvalidSize {
            kind,
            message: message.into(),
        })
    }
}

/// Uniform labelled tree via a random Prufer sequence.
fn random_tree_edges(vertices: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    if vertices == 2 {
        return vec![(0, 1)];
    }
    let sequence: Vec<usize> = (0..vertices - 2).map(|_| rng.gen_range(0..vertices)).collect();
    let mut remaining_degree = vec![1usize; vertices];
    for &v in &sequence {
        remaining_degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(vertices - 1);
    // Smallest-leaf decoding: repeatedly attach the smallest leaf to the
    // next sequence entry.
    let mut leaf_cursor = 0;
    let mut current_leaf = None;
    for &v in &sequence {
        let leaf = match current_leaf {
            Some(l) => l,
            None => {
                while remaining_degree[leaf_cursor] != 1 {
                    leaf_cursor += 1;
                }
                leaf_cursor
            }
        };
        edges.push((leaf, v));
        remaining_degree[leaf] -= 1;
        remaining_degree[v] -= 1;
        current_leaf = if remaining_degree[v] == 1 && v < leaf_cursor {
            Some(v)
        } else {
            None
        };
    }
    let mut last = remaining_degree
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .map(|(i, _)| i);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    edges.push((u, v));
    edges
}
