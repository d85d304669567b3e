//! Node rankings that steer matching order.

use rand::seq::SliceRandom;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Node};
use crate::rng::stream_rng;

/// How a [`NodeOrder`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "seed")]
pub enum OrderKey {
    DegreeAscending,
    DegreeDescending,
    Random(u64),
    Explicit,
}

/// A permutation of all nodes; position in the permutation is the node's rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeOrder {
    permutation: Vec<Node>,
    rank: Vec<usize>,
    key: OrderKey,
}

impl NodeOrder {
    /// Total degree ascending, ties by node index.
    pub fn degree_ascending(graph: &DirectedGraph) -> Self {
        let mut perm: Vec<Node> = graph.nodes().collect();
        perm.sort_by_key(|&v| (graph.total_degree(v), v));
        Self::from_parts(perm, OrderKey::DegreeAscending)
    }

    /// Total degree descending, ties by node index.
    pub fn degree_descending(graph: &DirectedGraph) -> Self {
        let mut perm: Vec<Node> = graph.nodes().collect();
        perm.sort_by_key(|&v| (std::cmp::Reverse(graph.total_degree(v)), v));
        Self::from_parts(perm, OrderKey::DegreeDescending)
    }

    /// Uniformly random permutation determined by `seed`.
    pub fn random(graph: &DirectedGraph, seed: u64) -> Self {
        let mut perm: Vec<Node> = graph.nodes().collect();
        perm.shuffle(&mut stream_rng(seed, 0));
        Self::from_parts(perm, OrderKey::Random(seed))
    }

    /// Node indices in order `0..N`.
    pub fn identity(graph: &DirectedGraph) -> Self {
        Self::from_parts(graph.nodes().collect(), OrderKey::Explicit)
    }

    /// A caller-supplied permutation.
    pub fn explicit(graph: &DirectedGraph, permutation: Vec<Node>) -> Result<Self> {
        let n = graph.node_count();
        if permutation.len() != n {
            return Err(Error::Usage(format!(
                "order has {} entries, graph has {n} nodes",
                permutation.len()
            )));
        }
        let mut seen = vec![false; n];
        for &v in &permutation {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Usage(format!(
                    "order is not a permutation (bad or repeated node {v})"
                )));
            }
        }
        Ok(Self::from_parts(permutation, OrderKey::Explicit))
    }

    /// Permutation given by node labels, one per entry.
    pub fn from_labels<S: AsRef<str>>(graph: &DirectedGraph, labels: &[S]) -> Result<Self> {
        let perm = labels
            .iter()
            .map(|l| {
                graph
                    .node_by_label(l.as_ref())
                    .ok_or_else(|| Error::Usage(format!("unknown node label {:?}", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(graph, perm)
    }

    pub(crate) fn from_parts(permutation: Vec<Node>, key: OrderKey) -> Self {
        let mut rank = vec![0; permutation.len()];
        for (r, &v) in permutation.iter().enumerate() {
            rank[v] = r;
        }
        Self {
            permutation,
            rank,
            key,
        }
    }

    pub fn permutation(&self) -> &[Node] {
        &self.permutation
    }

    pub fn rank(&self, node: Node) -> usize {
        self.rank[node]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn key(&self) -> OrderKey {
        self.key
    }

    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }
}
