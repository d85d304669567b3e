//! Shared inputs for the benchmarks.

use netctrl_core::{gen_directed_ba, gen_directed_er, BaParams, DirectedGraph};

/// Directed BA graphs at the sizes used in the direction experiments.
pub fn ba_graphs(p: f64) -> Vec<(usize, DirectedGraph)> {
    [500, 2000, 10_000]
        .into_iter()
        .map(|n| (n, gen_directed_ba(&BaParams::new(n, 2, p, 42)).unwrap()))
        .collect()
}

/// Sparse directed ER graph with mean total degree 8.
pub fn er_graph(n: usize) -> DirectedGraph {
    gen_directed_er(n, 4 * n, 42).unwrap()
}
