//! Graph file formats: JSON, DIMACS-style edge lists, and DOT output.

use serde::{Deserialize, Serialize};

use super::{Graph, VertexLabel};
use crate::{Error, Result};

/// On-disk graph: `{"n": int, "edges": [[u,v],...], "labels": optional}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|l| l.iter().map(|x| x.to_string()).collect()),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(j.n, &edges)?;
        match j.labels {
            Some(l) => g.with_labels(l.into_iter().map(VertexLabel::Text).collect()),
            None => Ok(g),
        }
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        Graph::try_from(j).map_err(serde::de::Error::custom)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph serializes")
}

pub fn from_json(text: &str) -> Result<Graph> {
    let j: GraphJson = serde_json::from_str(text)?;
    Graph::try_from(j)
}

/// Parses `p edge n m` / `e u v` text with 1-indexed vertices. Lines starting
/// with `c` are comments.
pub fn from_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared_edges = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Parse(format!("line {}: malformed `{line}`", lineno + 1));
        match parts[0] {
            "p" => {
                if parts.len() != 4 || g.is_some() {
                    return Err(bad());
                }
                let n: usize = parts[2].parse().map_err(|_| bad())?;
                declared_edges = parts[3].parse().map_err(|_| bad())?;
                g = Some(Graph::new(n));
            }
            "e" => {
                let graph = g.as_mut().ok_or_else(|| {
                    Error::Parse(format!("line {}: edge before `p` header", lineno + 1))
                })?;
                if parts.len() != 3 {
                    return Err(bad());
                }
                let u: usize = parts[1].parse().map_err(|_| bad())?;
                let v: usize = parts[2].parse().map_err(|_| bad())?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse(format!("line {}: vertices are 1-indexed", lineno + 1)));
                }
                graph.add_edge(u - 1, v - 1)?;
            }
            _ => return Err(bad()),
        }
    }
    let g = g.ok_or_else(|| Error::Parse("missing `p edge n m` header".into()))?;
    if g.edge_count() != declared_edges {
        return Err(Error::Parse(format!(
            "header declares {declared_edges} edges, found {}",
            g.edge_count()
        )));
    }
    Ok(g)
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Reads JSON when the text looks like JSON, DIMACS otherwise.
pub fn parse_any(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_dimacs(text)
    }
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let label = g.label(v).to_string().replace('"', "\\\"");
        out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}
