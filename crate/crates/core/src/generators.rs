//! Synthetic directed networks and the degree-based edge-reversal transform.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Node};
use crate::rng::stream_rng;

/// Parameters of the directed Barabási–Albert model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaParams {
    /// Final node count.
    pub n: usize,
    /// Edges added with each new node.
    pub m_attach: usize,
    /// Size of the seed cycle.
    pub m0: usize,
    /// Probability that a new edge points from the old node to the new one.
    pub p: f64,
    pub seed: u64,
}

impl BaParams {
    /// Seed cycle of `m_attach + 1` nodes.
    pub fn new(n: usize, m_attach: usize, p: f64, seed: u64) -> Self {
        Self {
            n,
            m_attach,
            m0: m_attach + 1,
            p,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_attach < 1 {
            return Err(Error::Usage("m_attach must be at least 1".into()));
        }
        if self.m0 < self.m_attach {
            return Err(Error::Usage(format!(
                "seed size m0={} is smaller than m_attach={}",
                self.m0, self.m_attach
            )));
        }
        if self.n <= self.m0 {
            return Err(Error::Usage(format!(
                "n={} must exceed the seed size m0={}",
                self.n, self.m0
            )));
        }
        check_probability("p", self.p)
    }

    /// Provenance line for edge-list output.
    pub fn header(&self) -> String {
        format!(
            "# ba n={} m={} m0={} p={} seed={}",
            self.n, self.m_attach, self.m0, self.p, self.seed
        )
    }
}

fn check_probability(name: &str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Usage(format!("{name}={value} is not in [0, 1]")))
    }
}

/// Grows a directed preferential-attachment network.
///
/// Starts from a directed cycle over `m0` nodes. Each new node picks
/// `m_attach` distinct existing targets with probability proportional to
/// total degree; each resulting edge points old → new with probability `p`
/// and new → old otherwise.
///
/// Attachment and orientation draw from separate random streams, so for a
/// fixed seed the undirected topology does not depend on `p`.
pub fn gen_directed_ba(params: &BaParams) -> Result<DirectedGraph> {
    params.validate()?;
    let BaParams {
        n,
        m_attach,
        m0,
        p,
        seed,
    } = *params;
    let mut attach_rng = stream_rng(seed, 0);
    let mut orient_rng = stream_rng(seed, 1);

    let edge_total = m0 + (n - m0) * m_attach;
    let mut edges = Vec::with_capacity(edge_total);
    // Every edge endpoint once; a uniform pick is a degree-proportional pick.
    let mut endpoints: Vec<Node> = Vec::with_capacity(2 * edge_total);
    for i in 0..m0 {
        let j = (i + 1) % m0;
        edges.push((i, j));
        endpoints.extend([i, j]);
    }

    let mut targets = Vec::with_capacity(m_attach);
    for new in m0..n {
        targets.clear();
        while targets.len() < m_attach {
            let t = endpoints[attach_rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &old in &targets {
            let edge = if orient_rng.random::<f64>() < p {
                (old, new)
            } else {
                (new, old)
            };
            edges.push(edge);
            endpoints.extend([old, new]);
        }
    }
    DirectedGraph::from_edges(n, edges)
}

/// `l` distinct directed edges without self-loops, sampled uniformly.
pub fn gen_directed_er(n: usize, l: usize, seed: u64) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::Usage("n must be at least 1".into()));
    }
    let capacity = n * (n - 1);
    if l > capacity {
        return Err(Error::Usage(format!(
            "l={l} exceeds the {capacity} possible directed edges on {n} nodes"
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let mut picks = index::sample(&mut rng, capacity, l).into_vec();
    picks.sort_unstable();
    let edges = picks
        .into_iter()
        .map(|i| {
            let u = i / (n - 1);
            let r = i % (n - 1);
            (u, if r >= u { r + 1 } else { r })
        })
        .collect();
    DirectedGraph::from_edges(n, edges)
}

/// Parameters of the edge-reversal transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReversalParams {
    /// Probability of reversing an eligible edge.
    pub r: f64,
    pub seed: u64,
}

/// Outcome of [`reverse_edges`].
#[derive(Debug, Clone)]
pub struct Reversal {
    pub graph: DirectedGraph,
    pub reversed: usize,
    /// Reversals dropped because the opposite edge already existed.
    pub skipped: usize,
}

impl Reversal {
    pub fn header(&self, params: &ReversalParams) -> String {
        format!(
            "# reverse R={} seed={} reversed={} skipped={}",
            params.r, params.seed, self.reversed, self.skipped
        )
    }
}

/// Reverses each edge `u -> v` with `k_u < k_v` with probability `r`.
///
/// Total degrees are snapshotted before the pass. A reversal that would
/// duplicate an existing edge is skipped, so `L` is preserved. Edge positions
/// in the sequence are kept.
pub fn reverse_edges(graph: &DirectedGraph, params: &ReversalParams) -> Result<Reversal> {
    check_probability("R", params.r)?;
    let degree: Vec<usize> = graph.nodes().map(|v| graph.total_degree(v)).collect();
    let mut present: HashSet<(Node, Node)> = graph.edges().iter().copied().collect();
    let mut edges = graph.edges().to_vec();
    let mut rng = stream_rng(params.seed, 0);
    let (mut reversed, mut skipped) = (0, 0);

    for edge in &mut edges {
        let (u, v) = *edge;
        if degree[u] >= degree[v] || !flip(&mut rng, params.r) {
            continue;
        }
        if present.contains(&(v, u)) {
            skipped += 1;
            continue;
        }
        present.remove(&(u, v));
        present.insert((v, u));
        *edge = (v, u);
        reversed += 1;
    }
    Ok(Reversal {
        graph: graph.with_edges(edges)?,
        reversed,
        skipped,
    })
}

fn flip<R: Rng>(rng: &mut R, probability: f64) -> bool {
    rng.random::<f64>() < probability
}

/// Edge-list text preceded by a provenance comment.
pub fn edge_list_with_header(graph: &DirectedGraph, header: &str) -> String {
    let mut out = String::with_capacity(header.len() + 1 + graph.edge_count() * 12);
    out.push_str(header);
    out.push('\n');
    graph.write_edge_list(&mut out);
    out
}
