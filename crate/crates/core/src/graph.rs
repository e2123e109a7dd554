//! Commuting graphs, clique-union detection and graph I/O.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::group::GroupTable;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("group is abelian, so its commuting graph has no vertices")]
    AbelianGroup,
    #[error("malformed graph input: {0}")]
    MalformedInput(String),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
}

/// Simple undirected graph stored as a dense symmetric bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    labels: Vec<String>,
    elements: Vec<usize>,
}

impl CommutingGraph {
    pub fn empty(n: usize, labels: Vec<String>) -> Self {
        let words = n.div_ceil(64).max(1);
        let labels = if labels.len() == n {
            labels
        } else {
            (0..n).map(|i| i.to_string()).collect()
        };
        Self {
            n,
            words,
            adj: vec![0; n * words],
            labels,
            elements: (0..n).collect(),
        }
    }

    /// Graph on the non-central elements of `g`, in element order.
    pub fn from_group(g: &GroupTable) -> Result<Self, GraphError> {
        let center = g.center();
        let vertices: Vec<usize> = (0..g.order()).filter(|&x| !center.contains(x)).collect();
        if vertices.is_empty() {
            return Err(GraphError::AbelianGroup);
        }
        let labels = vertices.iter().map(|&x| g.label(x).to_string()).collect();
        let mut graph = Self::empty(vertices.len(), labels);
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if g.commute(a, b) {
                    graph.add_edge(i, j);
                }
            }
        }
        graph.elements = vertices;
        Ok(graph)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n, Vec::new());
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Disjoint union of complete graphs, parts given as (size, count).
    pub fn clique_union(parts: &[(usize, usize)]) -> Self {
        let n = parts.iter().map(|&(m, l)| m * l).sum();
        let mut g = Self::empty(n, Vec::new());
        let mut base = 0;
        for &(m, l) in parts {
            for _ in 0..l {
                for i in base..base + m {
                    for j in i + 1..base + m {
                        g.add_edge(i, j);
                    }
                }
                base += m;
            }
        }
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Group element index behind each vertex (identity map for ingested graphs).
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adjacent(u, v))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u).filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_edge_list(doc: &EdgeList) -> Result<Self, GraphError> {
        if !doc.labels.is_empty() && doc.labels.len() != doc.n {
            return Err(GraphError::MalformedInput(format!(
                "{} labels for {} vertices",
                doc.labels.len(),
                doc.n
            )));
        }
        let mut g = Self::empty(doc.n, doc.labels.clone());
        for &[u, v] in &doc.edges {
            if u >= doc.n || v >= doc.n {
                return Err(GraphError::MalformedInput(format!(
                    "edge [{u},{v}] out of range for n={}",
                    doc.n
                )));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: EdgeList =
            serde_json::from_str(text).map_err(|e| GraphError::MalformedInput(e.to_string()))?;
        Self::from_edge_list(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge lists always serialize")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph commuting {\n");
        for label in &self.labels {
            let _ = writeln!(out, "  {};", dot_id(label));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(
                out,
                "  {} -- {};",
                dot_id(&self.labels[u]),
                dot_id(&self.labels[v])
            );
        }
        out.push_str("}\n");
        out
    }
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `{"n": int, "edges": [[u, v], ...], "labels": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: Vec<String>,
}

/// A graph written as a disjoint union of complete graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueDecomposition {
    /// (clique size, number of copies), sizes strictly increasing.
    pub parts: Vec<(u64, u64)>,
}

impl CliqueDecomposition {
    /// Normalizes an arbitrary list of (size, count) pairs.
    pub fn from_parts(parts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged = BTreeMap::new();
        for (m, l) in parts {
            if m > 0 && l > 0 {
                *merged.entry(m).or_insert(0) += l;
            }
        }
        Self {
            parts: merged.into_iter().collect(),
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.parts.iter().map(|&(m, l)| m * l).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliqueCheck {
    CliqueUnion(CliqueDecomposition),
    NotCliqueUnion { component: Vec<usize> },
}

pub fn clique_decomposition(g: &CommutingGraph) -> CliqueCheck {
    let mut parts = Vec::new();
    for comp in g.components() {
        let size = comp.len();
        let edges: usize = comp.iter().map(|&u| g.degree(u)).sum::<usize>() / 2;
        if edges != size * (size - 1) / 2 {
            return CliqueCheck::NotCliqueUnion { component: comp };
        }
        parts.push((size as u64, 1));
    }
    CliqueCheck::CliqueUnion(CliqueDecomposition::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ingest_triangle() {
        let g = CommutingGraph::from_json(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(g, CommutingGraph::complete(3));
        assert_eq!(
            clique_decomposition(&g),
            CliqueCheck::CliqueUnion(CliqueDecomposition {
                parts: vec![(3, 1)]
            })
        );
    }

    #[test]
    fn loop_and_range_errors() {
        assert!(matches!(
            CommutingGraph::from_json(r#"{"n":2,"edges":[[0,0]]}"#),
            Err(GraphError::LoopEdge(0))
        ));
        assert!(matches!(
            CommutingGraph::from_json(r#"{"n":2,"edges":[[0,2]]}"#),
            Err(GraphError::MalformedInput(_))
        ));
        assert!(matches!(
            CommutingGraph::from_json("not json"),
            Err(GraphError::MalformedInput(_))
        ));
    }

    #[test]
    fn path_is_not_a_clique_union() {
        let g = CommutingGraph::from_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(
            clique_decomposition(&g),
            CliqueCheck::NotCliqueUnion { .. }
        ));
    }

    #[test]
    fn dot_has_one_line_per_edge() {
        let dot = CommutingGraph::complete(3).to_dot();
        assert!(dot.starts_with("graph "));
        assert_eq!(dot.matches(" -- ").count(), 3);
    }

    #[test]
    fn clique_union_degrees() {
        let g = CommutingGraph::clique_union(&[(2, 3), (5, 2)]);
        assert_eq!(g.vertex_count(), 16);
        for u in 0..6 {
            assert_eq!(g.degree(u), 1);
        }
        for u in 6..16 {
            assert_eq!(g.degree(u), 4);
        }
    }
}
