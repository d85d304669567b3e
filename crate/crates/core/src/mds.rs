//! Minimum driver node sets.
//!
//! By the minimum input theorem the driver nodes of a directed network are
//! the nodes whose in-role is left unmatched by a maximum matching, with a
//! single driver when the matching is perfect: `n_D = max(N - |M*|, 1)`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Node};
use crate::matching::{verify_maximum, Matching, MatchingState};
use crate::order::{NodeOrder, OrderKey};
use crate::rng::stream_rng;

/// A minimum driver node set together with the matching that witnesses it.
#[derive(Debug, Clone, PartialEq)]
pub struct MdsResult {
    /// Driver nodes in ascending index order.
    pub drivers: Vec<Node>,
    pub n_d: usize,
    /// `n_d / N`.
    pub lambda_d: f64,
    /// Mean total degree over the drivers.
    pub avg_degree_d: f64,
    /// Every in-role is matched; `drivers` then holds one designated node.
    pub perfect_matching: bool,
    pub witness: Matching,
}

/// Extracts the driver set of a maximum matching.
///
/// When the matching is perfect the first node of `order` is designated as
/// the single driver.
pub fn drivers(graph: &DirectedGraph, matching: Matching, order: &NodeOrder) -> Result<MdsResult> {
    if !verify_maximum(graph, &matching, None)? {
        return Err(Error::Validation(
            "matching is not maximum: an augmenting path exists".into(),
        ));
    }
    Ok(drivers_unchecked(graph, matching, order))
}

fn drivers_unchecked(graph: &DirectedGraph, matching: Matching, order: &NodeOrder) -> MdsResult {
    let n = graph.node_count();
    let perfect_matching = matching.size() == n;
    let drivers: Vec<Node> = if perfect_matching {
        vec![order.permutation()[0]]
    } else {
        matching.unmatched_heads().collect()
    };
    let n_d = drivers.len();
    MdsResult {
        avg_degree_d: mean_total_degree(graph, &drivers),
        lambda_d: n_d as f64 / n as f64,
        n_d,
        drivers,
        perfect_matching,
        witness: matching,
    }
}

fn mean_total_degree(graph: &DirectedGraph, nodes: &[Node]) -> f64 {
    let sum: usize = nodes.iter().map(|&v| graph.total_degree(v)).sum();
    sum as f64 / nodes.len() as f64
}

/// Preferential matching.
///
/// The first `m` nodes of `order` are admitted one at a time, keeping the
/// matching maximum on the admitted subgraph after each step. Any remaining
/// nodes are then admitted together and the matching is completed over the
/// whole graph. Nodes late in the order are the ones left unmatched, so an
/// ascending-degree order pushes the driver set towards high-degree nodes
/// and a descending one towards low-degree nodes.
pub fn preferential_mds(graph: &DirectedGraph, order: &NodeOrder, m: usize) -> Result<MdsResult> {
    let n = graph.node_count();
    if m > n {
        return Err(Error::Usage(format!(
            "preferential node count m={m} exceeds N={n}"
        )));
    }
    let mut state = MatchingState::new(graph, order);
    for &v in &order.permutation()[..m] {
        state.extend_with_node(v)?;
    }
    if m < n {
        state.activate_all();
        state.complete();
    }
    drivers(graph, state.into_matching(), order)
}

/// One randomized MDS: random node order plus shuffled neighbour scans,
/// drawn from stream `index` of `seed`.
pub fn random_mds(graph: &DirectedGraph, seed: u64, index: u64) -> MdsResult {
    let mut rng = stream_rng(seed, index.wrapping_add(1));
    let mut perm: Vec<Node> = graph.nodes().collect();
    perm.shuffle(&mut rng);
    let order = NodeOrder::from_parts(perm, OrderKey::Random(seed));
    let scan = graph
        .nodes()
        .map(|u| {
            let mut heads = graph.out_neighbors(u).to_vec();
            heads.shuffle(&mut rng);
            heads
        })
        .collect();
    let mut state = MatchingState::with_scan(graph, &order, scan);
    state.activate_all();
    state.complete();
    drivers_unchecked(graph, state.into_matching(), &order)
}

/// The part of a sampled MDS kept in an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriverSample {
    pub drivers: Vec<Node>,
    pub avg_degree_d: f64,
    pub perfect_matching: bool,
    /// Index of the first earlier sample with the same driver set, when
    /// deduplication is on.
    pub duplicate_of: Option<usize>,
}

/// Ensemble statistics over sampled MDSs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub sample_count: usize,
    pub n_d: usize,
    pub mean_kd: f64,
    pub min_kd: f64,
    pub max_kd: f64,
    pub distinct_driver_sets: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub summary: SampleSummary,
    pub samples: Vec<DriverSample>,
}

/// Draws `count` independent randomized MDSs and summarizes them.
///
/// Sample `i` uses random stream `i` of `seed`, so the ensemble does not
/// depend on how samples are scheduled across threads.
pub fn sample_mds(graph: &DirectedGraph, count: usize, seed: u64, dedupe: bool) -> Result<Sampling> {
    if count == 0 {
        return Err(Error::Usage("sample count must be at least 1".into()));
    }
    let mut samples: Vec<DriverSample> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let r = random_mds(graph, seed, i);
            DriverSample {
                drivers: r.drivers,
                avg_degree_d: r.avg_degree_d,
                perfect_matching: r.perfect_matching,
                duplicate_of: None,
            }
        })
        .collect();

    let n_d = samples[0].drivers.len();
    if let Some(bad) = samples.iter().find(|s| s.drivers.len() != n_d) {
        return Err(Error::Validation(format!(
            "sampled driver set sizes disagree ({} vs {n_d})",
            bad.drivers.len()
        )));
    }

    let distinct_driver_sets = dedupe.then(|| {
        let mut first: HashMap<&[Node], usize> = HashMap::new();
        let mut dup = vec![None; samples.len()];
        for (i, s) in samples.iter().enumerate() {
            let j = *first.entry(s.drivers.as_slice()).or_insert(i);
            if j != i {
                dup[i] = Some(j);
            }
        }
        let distinct = first.len();
        for (s, d) in samples.iter_mut().zip(dup) {
            s.duplicate_of = d;
        }
        distinct
    });

    let summary = summarize(n_d, &samples, distinct_driver_sets);
    Ok(Sampling { summary, samples })
}

pub(crate) fn summarize(
    n_d: usize,
    samples: &[DriverSample],
    distinct_driver_sets: Option<usize>,
) -> SampleSummary {
    let kds = samples.iter().map(|s| s.avg_degree_d);
    let sum: f64 = kds.clone().sum();
    SampleSummary {
        sample_count: samples.len(),
        n_d,
        mean_kd: sum / samples.len() as f64,
        min_kd: kds.clone().fold(f64::INFINITY, f64::min),
        max_kd: kds.fold(f64::NEG_INFINITY, f64::max),
        distinct_driver_sets,
    }
}
