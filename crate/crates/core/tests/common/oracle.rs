//! Brute-force references for small graphs, independent of the library's
//! augmenting-path code. Only graph construction is borrowed.

#![allow(dead_code)]

use netctrl_core::{DirectedGraph, Node};

/// Size of a maximum matching, by exhaustive search over every way of
/// giving each out-role either no head or an unused out-neighbour.
pub fn max_matching_size(g: &DirectedGraph) -> usize {
    let n = g.node_count();
    let mut used = vec![false; n];
    let mut best = 0;
    fn go(g: &DirectedGraph, tail: usize, size: usize, used: &mut [bool], best: &mut usize) {
        let n = g.node_count();
        if size + (n - tail) <= *best || *best == n {
            return;
        }
        if tail == n {
            *best = size;
            return;
        }
        for &h in g.out_neighbors(tail) {
            if !used[h] {
                used[h] = true;
                go(g, tail + 1, size + 1, used, best);
                used[h] = false;
            }
        }
        go(g, tail + 1, size, used, best);
    }
    go(g, 0, 0, &mut used, &mut best);
    best
}

/// Every maximum matching, each as sorted `(tail, head)` pairs.
pub fn all_maximum_matchings(g: &DirectedGraph) -> Vec<Vec<(Node, Node)>> {
    let n = g.node_count();
    let mut all = Vec::new();
    let mut used = vec![false; n];
    let mut cur = Vec::new();
    fn go(
        g: &DirectedGraph,
        tail: usize,
        used: &mut [bool],
        cur: &mut Vec<(Node, Node)>,
        all: &mut Vec<Vec<(Node, Node)>>,
    ) {
        if tail == g.node_count() {
            all.push(cur.clone());
            return;
        }
        for &h in g.out_neighbors(tail) {
            if !used[h] {
                used[h] = true;
                cur.push((tail, h));
                go(g, tail + 1, used, cur, all);
                cur.pop();
                used[h] = false;
            }
        }
        go(g, tail + 1, used, cur, all);
    }
    go(g, 0, &mut used, &mut cur, &mut all);
    let best = all.iter().map(Vec::len).max().unwrap_or(0);
    all.retain(|m| m.len() == best);
    all
}

/// `max(N - |M*|, 1)`.
pub fn driver_count(g: &DirectedGraph) -> usize {
    (g.node_count() - max_matching_size(g)).max(1)
}

/// Every possible non-perfect driver set, as sorted node lists.
pub fn possible_driver_sets(g: &DirectedGraph) -> Vec<Vec<Node>> {
    let n = g.node_count();
    let mut sets: Vec<Vec<Node>> = all_maximum_matchings(g)
        .into_iter()
        .map(|m| {
            let mut matched = vec![false; n];
            for (_, h) in m {
                matched[h] = true;
            }
            (0..n).filter(|&v| !matched[v]).collect()
        })
        .collect();
    sets.sort();
    sets.dedup();
    sets
}

fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

/// Random digraph on `n` nodes: each ordered pair (optionally including
/// self-pairs) is kept with probability `permille / 1000`.
pub fn random_digraph(n: usize, permille: u64, loops: bool, seed: u64) -> DirectedGraph {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v && !loops {
                continue;
            }
            if xorshift(&mut s) % 1000 < permille {
                edges.push((u, v));
            }
        }
    }
    DirectedGraph::from_edges(n, edges).unwrap()
}

fn build(n: usize, edges: impl IntoIterator<Item = (Node, Node)>) -> DirectedGraph {
    DirectedGraph::from_edges(n, edges.into_iter().collect()).unwrap()
}

/// Small graphs (N <= 8): stars, paths, cycles, complete digraphs and
/// random draws with and without self-loops.
pub fn small_corpus() -> Vec<(String, DirectedGraph)> {
    let mut out = Vec::new();
    for leaves in 1..=7 {
        out.push((format!("out-star-{leaves}"), build(leaves + 1, (1..=leaves).map(|l| (0, l)))));
        out.push((format!("in-star-{leaves}"), build(leaves + 1, (1..=leaves).map(|l| (l, 0)))));
    }
    for n in 1..=8 {
        out.push((format!("path-{n}"), build(n, (1..n).map(|i| (i - 1, i)))));
        out.push((format!("cycle-{n}"), build(n, (0..n).map(|i| (i, (i + 1) % n)))));
        out.push((
            format!("bipath-{n}"),
            build(n, (1..n).flat_map(|i| [(i - 1, i), (i, i - 1)])),
        ));
        out.push((format!("edgeless-{n}"), build(n, [])));
    }
    for n in 2..=6 {
        out.push((
            format!("complete-{n}"),
            build(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))),
        ));
    }
    let mut seed = 1;
    for n in 2..=8 {
        for permille in [100, 200, 300, 450, 600] {
            for loops in [false, true] {
                for _ in 0..3 {
                    seed += 1;
                    out.push((
                        format!("random-{n}-{permille}-{loops}-{seed}"),
                        random_digraph(n, permille, loops, seed),
                    ));
                }
            }
        }
    }
    out
}
