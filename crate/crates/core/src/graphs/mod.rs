//! Finite simple graphs: construction, named families, products and
//! symmetry.
//!
//! Vertices are dense indices `0..n`. Labels are metadata carried along for
//! display and never influence adjacency. Product graphs order their vertex
//! pairs row-major, so `(x, y)` has index `x * |V(Y)| + y`.

mod automorphism;
mod families;
pub mod io;
mod iso;
mod products;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

pub use automorphism::{
    automorphisms, automorphisms_with, cycle_rotations, is_automorphism, is_edge_transitive,
    is_edge_transitive_with, is_vertex_transitive, is_vertex_transitive_with, AutomorphismGroup,
    Permutation,
};
pub use families::{
    complete, cycle, empty, kneser, kneser_subsets, omega_graph, omega_graph_with, path,
};
pub(crate) use families::omega_signs;
pub use iso::{find_isomorphism, is_isomorphic};
pub use products::{
    cartesian_product, disjoint_union, homomorphic_product, strong_power, strong_power_with,
    strong_product, strong_product_with,
};

/// Per-vertex metadata recording where a vertex came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Index(usize),
    /// A ±1 vector, as used by Ω_n.
    Signs(Vec<i8>),
    /// A subset of `[n]`, as used by Kneser graphs.
    Subset(Vec<usize>),
    /// A product vertex.
    Pair(Box<VertexLabel>, Box<VertexLabel>),
    /// Free text, e.g. read back from a file.
    Text(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Signs(s) => {
                let body: String = s.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect();
                write!(f, "[{body}]")
            }
            VertexLabel::Subset(s) => {
                let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
            VertexLabel::Text(t) => f.write_str(t),
        }
    }
}

/// Simple undirected loopless graph on vertices `0..n`.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    labels: Option<Vec<VertexLabel>>,
}

impl PartialEq for Graph {
    /// Labels are metadata; two graphs are equal when their edge sets are.
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u},{v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    /// Label of `v`, defaulting to its index.
    pub fn label(&self, v: usize) -> VertexLabel {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => VertexLabel::Index(v),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// `u == v` or `u ~ v`.
    #[inline]
    pub fn adjacent_or_equal(&self, u: usize, v: usize) -> bool {
        u == v || self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degs = (0..self.n()).map(|v| self.degree(v));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for u in 0..n {
            let mut row = self.adj[u].clone();
            row.toggle_range(..);
            row.set(u, false);
            g.adj[u] = row;
        }
        g.labels = self.labels.clone();
        g
    }

    /// Subgraph induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }

    /// Copy with the single edge `(u, v)` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].set(v, false);
        g.adj[v].set(u, false);
        g
    }

    /// Connected components, each as a vertex list in increasing order.
    /// Components are ordered by their smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components as induced subgraphs with their index maps.
    pub fn components(&self) -> Vec<Component> {
        self.component_vertex_sets()
            .into_iter()
            .map(|vertices| Component {
                graph: self.induced(&vertices),
                vertices,
            })
            .collect()
    }

    /// The empty graph on zero vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() <= 1
    }

    /// Length of a shortest odd cycle, or `None` for bipartite graphs.
    ///
    /// BFS from every vertex: an edge `(u, v)` joining two vertices at the
    /// same depth `k` from the root closes an odd closed walk of length
    /// `2k + 1`, and the minimum over all roots is the odd girth.
    pub fn odd_girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let du = dist[u];
                if let Some(b) = best {
                    if 2 * du + 1 >= b {
                        break;
                    }
                }
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = du + 1;
                        queue.push_back(v);
                    } else if dist[v] == du {
                        let len = 2 * du + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Adjacency matrix as row-major `f64`.
    pub fn adjacency_matrix(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for (u, v) in self.edges() {
            m[u * n + v] = 1.0;
            m[v * n + u] = 1.0;
        }
        m
    }
}

/// An induced connected component together with its embedding.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the parent-graph index of component vertex `i`.
    pub vertices: Vec<usize>,
}
