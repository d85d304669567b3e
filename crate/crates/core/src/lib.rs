//! Structural controllability of directed networks.
//!
//! The driver nodes of a network are read off a maximum matching of its
//! out-role/in-role bipartite view. This crate computes such matchings,
//! steers which nodes end up as drivers by admitting nodes in a chosen rank
//! order (preferential matching), samples random minimum driver sets, and
//! provides the generators and statistics used to study how edge direction
//! shapes the degree of driver nodes.

pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod mds;
pub mod order;
mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use generators::{
    edge_list_with_header, gen_directed_ba, gen_directed_er, reverse_edges, BaParams, Reversal,
    ReversalParams,
};
pub use graph::{parse_edge_list, DegreeView, DirectedGraph, EdgeList, Node};
pub use matching::{max_matching, verify_maximum, Matching, MatchingState};
pub use mds::{
    drivers, preferential_mds, random_mds, sample_mds, DriverSample, MdsResult, SampleSummary,
    Sampling,
};
pub use order::{NodeOrder, OrderKey};
pub use stats::{
    avg_degree_of, driver_degree_histogram, f_hi_lo, pearson, sweep_p, sweep_r, tie_fraction,
    DegreeHistogram, HistogramBin, SweepRow,
};
