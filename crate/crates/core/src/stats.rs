//! Degree statistics over graphs and driver sets, and the edge-direction
//! sweeps over the BA orientation probability and the reversal probability.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{gen_directed_ba, reverse_edges, BaParams, ReversalParams};
use crate::graph::{DirectedGraph, Node};
use crate::mds::{sample_mds, MdsResult};

/// Fraction of edges whose tail has strictly larger total degree than its head.
pub fn f_hi_lo(graph: &DirectedGraph) -> Result<f64> {
    let (hi_lo, _, total) = direction_counts(graph)?;
    Ok(hi_lo as f64 / total as f64)
}

/// Fraction of edges whose endpoints have equal total degree.
pub fn tie_fraction(graph: &DirectedGraph) -> Result<f64> {
    let (_, ties, total) = direction_counts(graph)?;
    Ok(ties as f64 / total as f64)
}

fn direction_counts(graph: &DirectedGraph) -> Result<(usize, usize, usize)> {
    if graph.edge_count() == 0 {
        return Err(Error::Undefined(
            "edge-direction fractions need at least one edge".into(),
        ));
    }
    let k = |v: Node| graph.total_degree(v);
    let (mut hi_lo, mut ties) = (0, 0);
    for &(u, v) in graph.edges() {
        match k(u).cmp(&k(v)) {
            std::cmp::Ordering::Greater => hi_lo += 1,
            std::cmp::Ordering::Equal => ties += 1,
            std::cmp::Ordering::Less => {}
        }
    }
    Ok((hi_lo, ties, graph.edge_count()))
}

/// Mean total degree over `nodes`.
pub fn avg_degree_of(graph: &DirectedGraph, nodes: &[Node]) -> Result<f64> {
    if nodes.is_empty() {
        return Err(Error::Usage("cannot average over an empty node set".into()));
    }
    let sum: usize = nodes.iter().map(|&v| graph.total_degree(v)).sum();
    Ok(sum as f64 / nodes.len() as f64)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HistogramBin {
    pub population: usize,
    pub drivers: usize,
}

/// Population and driver counts per total degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DegreeHistogram {
    pub bins: BTreeMap<usize, HistogramBin>,
}

impl DegreeHistogram {
    pub fn total_drivers(&self) -> usize {
        self.bins.values().map(|b| b.drivers).sum()
    }

    /// Share of drivers among nodes with degree above `threshold`, or `None`
    /// if there are no such nodes.
    pub fn driver_share_above(&self, threshold: usize) -> Option<f64> {
        let (pop, drv) = self
            .bins
            .range(threshold + 1..)
            .fold((0, 0), |(p, d), (_, b)| (p + b.population, d + b.drivers));
        (pop > 0).then(|| drv as f64 / pop as f64)
    }

    /// Number of drivers with degree at most `threshold`.
    pub fn drivers_at_most(&self, threshold: usize) -> usize {
        self.bins.range(..=threshold).map(|(_, b)| b.drivers).sum()
    }
}

pub fn driver_degree_histogram(graph: &DirectedGraph, mds: &MdsResult) -> Result<DegreeHistogram> {
    let mut bins: BTreeMap<usize, HistogramBin> = BTreeMap::new();
    for v in graph.nodes() {
        bins.entry(graph.total_degree(v)).or_default().population += 1;
    }
    for &d in &mds.drivers {
        if d >= graph.node_count() {
            return Err(Error::Validation(format!("driver {d} is not a graph node")));
        }
        bins.entry(graph.total_degree(d)).or_default().drivers += 1;
    }
    Ok(DegreeHistogram { bins })
}

/// One point of a direction sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    /// The swept value, `p` or `R`.
    pub knob: f64,
    pub f_hi_lo: f64,
    pub mean_kd: f64,
    pub avg_degree: f64,
    /// `mean_kd / avg_degree`.
    pub ratio: f64,
    #[serde(rename = "samples")]
    pub sample_count: usize,
    pub seed: u64,
}

impl SweepRow {
    fn measure(knob: f64, graph: &DirectedGraph, samples: usize, seed: u64) -> Result<Self> {
        let summary = sample_mds(graph, samples, seed, false)?.summary;
        let avg_degree = graph.average_degree();
        Ok(Self {
            knob,
            f_hi_lo: f_hi_lo(graph)?,
            mean_kd: summary.mean_kd,
            avg_degree,
            ratio: summary.mean_kd / avg_degree,
            sample_count: samples,
            seed,
        })
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    match grid.iter().find(|x| !(0.0..=1.0).contains(*x)) {
        Some(x) => Err(Error::Usage(format!("grid value {x} is not in [0, 1]"))),
        None => Ok(()),
    }
}

/// For each `p` in `grid`, grows a directed BA graph from `ba_base` with that
/// orientation probability and samples its MDSs.
///
/// Every grid point reuses `ba_base.seed`, so all points share one
/// undirected topology and differ only in edge orientation.
pub fn sweep_p(grid: &[f64], ba_base: &BaParams, samples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    check_grid(grid)?;
    grid.iter()
        .map(|&p| {
            let graph = gen_directed_ba(&BaParams { p, ..*ba_base })?;
            SweepRow::measure(p, &graph, samples, seed)
        })
        .collect()
}

/// For each `R` in `grid`, reverses low→high edges of `graph` with
/// probability `R` and samples MDSs of the result.
///
/// The reversal draws and the sampling streams both come from `seed`, so the
/// `R = 0` row is exactly `sample_mds(graph, samples, seed)`.
pub fn sweep_r(graph: &DirectedGraph, grid: &[f64], samples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    check_grid(grid)?;
    grid.iter()
        .map(|&r| {
            let reversed = reverse_edges(graph, &ReversalParams { r, seed })?;
            SweepRow::measure(r, &reversed.graph, samples, seed)
        })
        .collect()
}

/// Pearson correlation coefficient; `None` for fewer than two points or a
/// constant series.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}
