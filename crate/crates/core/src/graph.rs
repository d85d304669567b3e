//! Directed graph model, edge-list ingestion and degree accounting.
//!
//! Nodes are dense indices `0..N` interned from string labels in
//! first-appearance order. The edge set is simple: a `(tail, head)` pair
//! occurs at most once. Self-loops are allowed.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a node in a [`DirectedGraph`].
pub type Node = usize;

/// An immutable directed graph with out/in adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    labels: Vec<String>,
    index: HashMap<String, Node>,
    edges: Vec<(Node, Node)>,
    out_adj: Vec<Vec<Node>>,
    in_adj: Vec<Vec<Node>>,
}

impl DirectedGraph {
    /// Builds a graph over `node_count` nodes labelled `"0".."N-1"`.
    pub fn from_edges(node_count: usize, edges: Vec<(Node, Node)>) -> Result<Self> {
        let labels = (0..node_count).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph from explicit labels and an edge sequence.
    ///
    /// Rejects empty node sets, out-of-range endpoints, duplicate labels
    /// and duplicate edges.
    pub fn with_labels(labels: Vec<String>, edges: Vec<(Node, Node)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Ingestion("graph has no nodes".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::Ingestion(format!("invalid node label {label:?}")));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Ingestion(format!("duplicate node label {label:?}")));
            }
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Ingestion(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if !seen.insert((u, v)) {
                return Err(Error::Ingestion(format!("duplicate edge ({u}, {v})")));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        Ok(Self {
            labels,
            index,
            edges,
            out_adj,
            in_adj,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    /// Heads of the edges leaving `node`, in insertion order.
    pub fn out_neighbors(&self, node: Node) -> &[Node] {
        &self.out_adj[node]
    }

    /// Tails of the edges entering `node`, in insertion order.
    pub fn in_neighbors(&self, node: Node) -> &[Node] {
        &self.in_adj[node]
    }

    pub fn out_degree(&self, node: Node) -> usize {
        self.out_adj[node].len()
    }

    pub fn in_degree(&self, node: Node) -> usize {
        self.in_adj[node].len()
    }

    /// In-degree plus out-degree. A self-loop contributes one to each.
    pub fn total_degree(&self, node: Node) -> usize {
        self.out_adj[node].len() + self.in_adj[node].len()
    }

    pub fn has_edge(&self, tail: Node, head: Node) -> bool {
        // Scan the shorter side.
        if self.out_adj[tail].len() <= self.in_adj[head].len() {
            self.out_adj[tail].contains(&head)
        } else {
            self.in_adj[head].contains(&tail)
        }
    }

    pub fn label(&self, node: Node) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<Node> {
        self.index.get(label).copied()
    }

    pub fn nodes(&self) -> std::ops::Range<Node> {
        0..self.node_count()
    }

    /// Per-node degree table.
    pub fn degrees(&self) -> DegreeView {
        DegreeView {
            in_degree: self.in_adj.iter().map(Vec::len).collect(),
            out_degree: self.out_adj.iter().map(Vec::len).collect(),
        }
    }

    /// Mean total degree, `2L / N`.
    pub fn average_degree(&self) -> f64 {
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    /// Returns a graph with the same nodes and labels but a new edge sequence.
    pub fn with_edges(&self, edges: Vec<(Node, Node)>) -> Result<Self> {
        Self::with_labels(self.labels.clone(), edges)
    }

    /// Serializes to the edge-list text format, one `tail head` per line.
    ///
    /// Isolated nodes have no representation in this format and are dropped.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        self.write_edge_list(&mut out);
        out
    }

    pub(crate) fn write_edge_list(&self, out: &mut String) {
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
    }
}

/// Exact in/out/total degrees for every node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeView {
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
}

impl DegreeView {
    pub fn total(&self, node: Node) -> usize {
        self.in_degree[node] + self.out_degree[node]
    }

    pub fn totals(&self) -> Vec<usize> {
        self.in_degree
            .iter()
            .zip(&self.out_degree)
            .map(|(i, o)| i + o)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.in_degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.in_degree.is_empty()
    }
}

/// A parsed edge list together with ingestion warnings.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: DirectedGraph,
    /// Number of repeated `(tail, head)` lines that were collapsed.
    pub duplicate_edges: usize,
}

/// Parses whitespace-separated `tail head` lines.
///
/// Lines starting with `#` or `%` are comments and blank lines are skipped.
/// Labels are interned in first-appearance order.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, Node> = HashMap::new();
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    let mut duplicate_edges = 0;

    let mut intern = |label: &str| -> Node {
        if let Some(&i) = index.get(label) {
            return i;
        }
        let i = labels.len();
        labels.push(label.to_owned());
        index.insert(label.to_owned(), i);
        i
    };

    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (tail, head) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(t), Some(h), None) => (t, h),
            _ => {
                return Err(Error::Ingestion(format!(
                    "line {}: expected 2 tokens (tail head), found {}",
                    lineno + 1,
                    trimmed.split_whitespace().count()
                )))
            }
        };
        let u = intern(tail);
        let v = intern(head);
        if seen.insert((u, v)) {
            edges.push((u, v));
        } else {
            duplicate_edges += 1;
        }
    }

    if labels.is_empty() {
        return Err(Error::Ingestion("input contains no edges".into()));
    }
    let graph = DirectedGraph::with_labels(labels, edges)?;
    Ok(EdgeList {
        graph,
        duplicate_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> DirectedGraph {
        parse_edge_list("hub a\nhub b\nhub c\n").unwrap().graph
    }

    #[test]
    fn parses_simple_path() {
        let parsed = parse_edge_list("a b\nb c").unwrap();
        let g = parsed.graph;
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.edges(), [(0, 1), (1, 2)]);
        assert_eq!(parsed.duplicate_edges, 0);
    }

    #[test]
    fn collapses_duplicates() {
        let parsed = parse_edge_list("a b\na b").unwrap();
        assert_eq!(parsed.graph.node_count(), 2);
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.duplicate_edges, 1);
    }

    #[test]
    fn rejects_empty_and_comment_only_input() {
        assert!(matches!(parse_edge_list(""), Err(Error::Ingestion(_))));
        assert!(matches!(
            parse_edge_list("# nothing\n% here\n\n"),
            Err(Error::Ingestion(_))
        ));
    }

    #[test]
    fn malformed_line_names_line_number() {
        let err = parse_edge_list("a b\n# c\nc d e\n").unwrap_err();
        match err {
            Error::Ingestion(msg) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_edge_list("lonely\n").is_err());
    }

    #[test]
    fn keeps_self_loops() {
        let g = parse_edge_list("v v").unwrap().graph;
        let d = g.degrees();
        assert_eq!((d.in_degree[0], d.out_degree[0], d.total(0)), (1, 1, 2));
    }

    #[test]
    fn star_and_cycle_degrees() {
        let g = star();
        let d = g.degrees();
        assert_eq!((d.in_degree[0], d.out_degree[0], d.total(0)), (0, 3, 3));
        for leaf in 1..4 {
            assert_eq!((d.in_degree[leaf], d.out_degree[leaf], d.total(leaf)), (1, 0, 1));
        }
        let cycle = parse_edge_list("1 2\n2 3\n3 1").unwrap().graph;
        let d = cycle.degrees();
        for v in cycle.nodes() {
            assert_eq!((d.in_degree[v], d.out_degree[v], d.total(v)), (1, 1, 2));
        }
    }

    #[test]
    fn average_degree_matches_table_rows() {
        let avg = |n: usize, l: usize| 2.0 * l as f64 / n as f64;
        assert!((avg(7115, 103_689) - 29.15).abs() < 0.01);
        assert!((avg(128, 2106) - 32.91).abs() < 0.01);
        let edgeless = DirectedGraph::from_edges(3, vec![]).unwrap();
        assert_eq!(edgeless.average_degree(), 0.0);
        assert!((star().average_degree() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn constructor_rejects_duplicates_and_bad_indices() {
        assert!(DirectedGraph::from_edges(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(DirectedGraph::from_edges(2, vec![(0, 2)]).is_err());
        assert!(DirectedGraph::from_edges(0, vec![]).is_err());
        assert!(DirectedGraph::with_labels(vec!["a".into(), "a".into()], vec![]).is_err());
    }

    #[test]
    fn has_edge_checks_direction() {
        let g = star();
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(1, 0));
    }
}
