use std::fs;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use netctrl_core::{
    driver_degree_histogram, edge_list_with_header, f_hi_lo, gen_directed_ba, gen_directed_er,
    max_matching, parse_edge_list, preferential_mds, reverse_edges, sample_mds, sweep_p, sweep_r,
    DegreeHistogram, DirectedGraph, MdsResult, NodeOrder, ReversalParams, SampleSummary,
    SweepRow,
};

use crate::config::{Command, Format, GenSpec, OrderSpec, Source};

pub const TOOL: &str = "netctrl";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Input {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] netctrl_core::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input { .. } => 3,
            CliError::Core(e) => match e {
                netctrl_core::Error::Usage(_) => 2,
                netctrl_core::Error::Ingestion(_) => 4,
                netctrl_core::Error::Validation(_) => 5,
                netctrl_core::Error::Undefined(_) => 6,
            },
            CliError::Output { .. } => 7,
        }
    }
}

/// Everything that determines a run's output, echoed into every report.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub input: Option<String>,
    pub gen: Option<String>,
    pub order: Option<String>,
    pub m: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub format: Option<Format>,
    pub dedupe: Option<bool>,
    pub grid: Option<Vec<f64>>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub avg_degree: f64,
    pub duplicate_edges: usize,
}

#[derive(Debug, Serialize)]
pub struct MdsReport {
    pub n_d: usize,
    pub lambda_d: f64,
    pub avg_degree_d: f64,
    pub perfect_matching: bool,
    pub matching_size: usize,
    pub drivers: Vec<String>,
    pub matching: Vec<[String; 2]>,
}

impl MdsReport {
    fn new(graph: &DirectedGraph, mds: &MdsResult) -> Self {
        let label = |v| graph.label(v).to_owned();
        Self {
            n_d: mds.n_d,
            lambda_d: mds.lambda_d,
            avg_degree_d: mds.avg_degree_d,
            perfect_matching: mds.perfect_matching,
            matching_size: mds.witness.size(),
            drivers: mds.drivers.iter().map(|&v| label(v)).collect(),
            matching: mds
                .witness
                .pairs()
                .into_iter()
                .map(|(u, v)| [label(u), label(v)])
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Analysis {
        f_hi_lo: Option<f64>,
        mds: MdsReport,
        histogram: DegreeHistogram,
    },
    Preferential {
        m: usize,
        mds: MdsReport,
        histogram: DegreeHistogram,
    },
    Sampling {
        summary: SampleSummary,
    },
    Sweep {
        rows: Vec<SweepRow>,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub graph: GraphSummary,
    pub result: Payload,
}

struct Loaded {
    graph: DirectedGraph,
    duplicate_edges: usize,
}

impl Loaded {
    fn summary(&self) -> GraphSummary {
        GraphSummary {
            nodes: self.graph.node_count(),
            edges: self.graph.edge_count(),
            avg_degree: self.graph.average_degree(),
            duplicate_edges: self.duplicate_edges,
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn generate(spec: &GenSpec, fallback_seed: u64) -> Result<DirectedGraph, CliError> {
    Ok(match *spec {
        GenSpec::Ba { .. } => gen_directed_ba(&spec.ba_params(fallback_seed).unwrap())?,
        GenSpec::Er { n, l, seed } => gen_directed_er(n, l, seed.unwrap_or(fallback_seed))?,
    })
}

fn generator_header(spec: &GenSpec, fallback_seed: u64) -> String {
    match *spec {
        GenSpec::Ba { .. } => spec.ba_params(fallback_seed).unwrap().header(),
        GenSpec::Er { n, l, seed } => {
            format!("# er n={n} l={l} seed={}", seed.unwrap_or(fallback_seed))
        }
    }
}

fn load(source: &Source, seed: u64) -> Result<Loaded, CliError> {
    match (&source.input, &source.gen) {
        (Some(path), None) => {
            let parsed = parse_edge_list(&read_text(path)?)?;
            Ok(Loaded {
                graph: parsed.graph,
                duplicate_edges: parsed.duplicate_edges,
            })
        }
        (None, Some(spec)) => Ok(Loaded {
            graph: generate(spec, seed)?,
            duplicate_edges: 0,
        }),
        _ => Err(CliError::Usage(
            "exactly one of --input or --gen is required".into(),
        )),
    }
}

fn node_order(spec: &OrderSpec, graph: &DirectedGraph, seed: u64) -> Result<NodeOrder, CliError> {
    Ok(match spec {
        OrderSpec::Ascending => NodeOrder::degree_ascending(graph),
        OrderSpec::Descending => NodeOrder::degree_descending(graph),
        OrderSpec::Random => NodeOrder::random(graph, seed),
        OrderSpec::File(path) => {
            let text = read_text(path)?;
            let labels: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'))
                .collect();
            NodeOrder::from_labels(graph, &labels)?
        }
    })
}

fn base_config(command: &str, source: Option<&Source>, seed: u64) -> RunConfig {
    RunConfig {
        command: command.into(),
        input: source.and_then(|s| s.input.as_ref().map(|p| p.display().to_string())),
        gen: source.and_then(|s| s.gen.as_ref().map(GenSpec::to_string)),
        seed,
        ..RunConfig::default()
    }
}

fn json_only(format: Format, command: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Usage(format!(
            "{command} reports are JSON; csv is available for sweep-p and sweep-r"
        ))),
    }
}

fn render_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

fn render_rows(rows: &[SweepRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("sweep row serializes");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
}

/// Executes one command and returns the text to emit.
pub fn run(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Analyze(a) => {
            json_only(a.format, "analyze")?;
            let seed = a.common.seed;
            let loaded = load(&a.source, seed)?;
            let g = &loaded.graph;
            let order = node_order(&a.order, g, seed)?;
            let mds = netctrl_core::drivers(g, max_matching(g, &order), &order)?;
            let histogram = driver_degree_histogram(g, &mds)?;
            let config = RunConfig {
                order: Some(a.order.to_string()),
                format: Some(a.format),
                ..base_config("analyze", Some(&a.source), seed)
            };
            Ok(render_json(&Report {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                config,
                graph: loaded.summary(),
                result: Payload::Analysis {
                    f_hi_lo: f_hi_lo(g).ok(),
                    mds: MdsReport::new(g, &mds),
                    histogram,
                },
            }))
        }
        Command::Preferential(a) => {
            json_only(a.format, "preferential")?;
            let seed = a.common.seed;
            let loaded = load(&a.source, seed)?;
            let g = &loaded.graph;
            let order = node_order(&a.order, g, seed)?;
            let m = a.m.unwrap_or(g.node_count());
            let mds = preferential_mds(g, &order, m)?;
            let histogram = driver_degree_histogram(g, &mds)?;
            let config = RunConfig {
                order: Some(a.order.to_string()),
                m: Some(m),
                format: Some(a.format),
                ..base_config("preferential", Some(&a.source), seed)
            };
            Ok(render_json(&Report {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                config,
                graph: loaded.summary(),
                result: Payload::Preferential {
                    m,
                    mds: MdsReport::new(g, &mds),
                    histogram,
                },
            }))
        }
        Command::Sample(a) => {
            json_only(a.format, "sample")?;
            let seed = a.common.seed;
            let loaded = load(&a.source, seed)?;
            let sampling = sample_mds(&loaded.graph, a.samples, seed, a.dedupe)?;
            let config = RunConfig {
                samples: Some(a.samples),
                dedupe: Some(a.dedupe),
                format: Some(a.format),
                ..base_config("sample", Some(&a.source), seed)
            };
            Ok(render_json(&Report {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                config,
                graph: loaded.summary(),
                result: Payload::Sampling {
                    summary: sampling.summary,
                },
            }))
        }
        Command::Generate(a) => {
            let seed = a.common.seed;
            let graph = generate(&a.gen, seed)?;
            Ok(edge_list_with_header(&graph, &generator_header(&a.gen, seed)))
        }
        Command::Reverse(a) => {
            let seed = a.common.seed;
            let loaded = load(&a.source, seed)?;
            let params = ReversalParams { r: a.r, seed };
            let reversal = reverse_edges(&loaded.graph, &params)?;
            Ok(edge_list_with_header(&reversal.graph, &reversal.header(&params)))
        }
        Command::SweepP(a) => {
            let seed = a.common.seed;
            let base = a.gen.ba_params(seed).ok_or_else(|| {
                CliError::Usage("sweep-p needs a ba generator spec".into())
            })?;
            base.validate()?;
            let rows = sweep_p(&a.grid.0, &base, a.samples, seed)?;
            if a.format == Format::Csv {
                return Ok(render_rows(&rows));
            }
            let edges = base.m0 + (base.n - base.m0) * base.m_attach;
            let config = RunConfig {
                gen: Some(a.gen.to_string()),
                samples: Some(a.samples),
                format: Some(a.format),
                grid: Some(a.grid.0.clone()),
                ..base_config("sweep-p", None, seed)
            };
            Ok(render_json(&Report {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                config,
                graph: GraphSummary {
                    nodes: base.n,
                    edges,
                    avg_degree: 2.0 * edges as f64 / base.n as f64,
                    duplicate_edges: 0,
                },
                result: Payload::Sweep { rows },
            }))
        }
        Command::SweepR(a) => {
            let seed = a.common.seed;
            let loaded = load(&a.source, seed)?;
            let rows = sweep_r(&loaded.graph, &a.grid.0, a.samples, seed)?;
            if a.format == Format::Csv {
                return Ok(render_rows(&rows));
            }
            let config = RunConfig {
                samples: Some(a.samples),
                format: Some(a.format),
                grid: Some(a.grid.0.clone()),
                ..base_config("sweep-r", Some(&a.source), seed)
            };
            Ok(render_json(&Report {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                config,
                graph: loaded.summary(),
                result: Payload::Sweep { rows },
            }))
        }
    }
}

/// Runs `command` and writes its output to `--out` or standard output.
pub fn execute(command: &Command) -> Result<(), CliError> {
    let text = run(command)?;
    let out = match command {
        Command::Analyze(a) => &a.common.out,
        Command::Preferential(a) => &a.common.out,
        Command::Sample(a) => &a.common.out,
        Command::Generate(a) => &a.common.out,
        Command::Reverse(a) => &a.common.out,
        Command::SweepP(a) => &a.common.out,
        Command::SweepR(a) => &a.common.out,
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Output {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
