use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netctrl_core::BaParams;

/// Structural controllability analysis of directed networks.
#[derive(Debug, Parser)]
#[command(name = "netctrl", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum matching, driver nodes and degree histogram of one graph.
    Analyze(AnalyzeArgs),
    /// Driver set from preferential matching.
    Preferential(PreferentialArgs),
    /// Randomly sampled driver sets and their degree statistics.
    Sample(SampleArgs),
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Reverse low-to-high degree edges with probability R; writes an edge list.
    Reverse(ReverseArgs),
    /// Orientation-probability sweep over directed BA graphs.
    #[command(name = "sweep-p")]
    SweepP(SweepPArgs),
    /// Reversal-probability sweep over one graph.
    #[command(name = "sweep-r")]
    SweepR(SweepRArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    pub input: Option<PathBuf>,
    /// Generator spec: `ba:n=..,m=..,p=..[,m0=..][,seed=..]` or `er:n=..,l=..[,seed=..]`.
    #[arg(long)]
    pub gen: Option<GenSpec>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, env = "NETCTRL_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: Source,
    /// Node order: `asc`, `desc`, `random` or `file:PATH` (one label per line).
    #[arg(long, default_value = "asc")]
    pub order: OrderSpec,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct PreferentialArgs {
    #[command(flatten)]
    pub source: Source,
    /// Node order: `asc`, `desc`, `random` or `file:PATH` (one label per line).
    #[arg(long, default_value = "asc")]
    pub order: OrderSpec,
    /// Number of preferentially admitted nodes; defaults to N.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Count distinct driver sets.
    #[arg(long)]
    pub dedupe: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Generator spec, as for `--gen` elsewhere.
    #[arg(long)]
    pub gen: GenSpec,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ReverseArgs {
    #[command(flatten)]
    pub source: Source,
    /// Reversal probability.
    #[arg(long = "R", id = "r")]
    pub r: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepPArgs {
    /// Base BA parameters; `p` is replaced by each grid value.
    #[arg(long)]
    pub gen: GenSpec,
    #[arg(long, value_parser = parse_grid, default_value = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1")]
    pub grid: Grid,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SweepRArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, value_parser = parse_grid, default_value = "0,0.25,0.5,0.75,1")]
    pub grid: Grid,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Comma-separated list of reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Grid(pub Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad grid value {t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("grid is empty".into());
    }
    Ok(Grid(values))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSpec {
    Ascending,
    Descending,
    Random,
    File(PathBuf),
}

impl FromStr for OrderSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "asc" => Ok(Self::Ascending),
            "desc" => Ok(Self::Descending),
            "random" => Ok(Self::Random),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(Self::File(path.into())),
                _ => Err(format!("unknown order {s:?}; expected asc, desc, random or file:PATH")),
            },
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ascending => f.write_str("asc"),
            Self::Descending => f.write_str("desc"),
            Self::Random => f.write_str("random"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// A generator request from the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Ba {
        n: usize,
        m: usize,
        p: f64,
        m0: Option<usize>,
        seed: Option<u64>,
    },
    Er {
        n: usize,
        l: usize,
        seed: Option<u64>,
    },
}

impl GenSpec {
    /// BA parameters with `fallback_seed` used when the spec carries none.
    pub fn ba_params(&self, fallback_seed: u64) -> Option<BaParams> {
        match *self {
            GenSpec::Ba { n, m, p, m0, seed } => Some(BaParams {
                n,
                m_attach: m,
                m0: m0.unwrap_or(m + 1),
                p,
                seed: seed.unwrap_or(fallback_seed),
            }),
            GenSpec::Er { .. } => None,
        }
    }
}

impl FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("generator spec {s:?} lacks a `kind:` prefix"))?;
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for item in rest.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("generator field {item:?} is not key=value"))?;
            fields.push((k.trim(), v.trim()));
        }
        let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        fn num<T: FromStr>(key: &str, v: Option<&str>) -> Result<Option<T>, String> {
            v.map(|v| v.parse::<T>().map_err(|_| format!("bad value {v:?} for {key}")))
                .transpose()
        }
        fn need<T>(key: &str, v: Option<T>) -> Result<T, String> {
            v.ok_or_else(|| format!("generator spec is missing {key}"))
        }
        let allowed: &[&str] = match kind {
            "ba" => &["n", "m", "p", "m0", "seed"],
            "er" => &["n", "l", "seed"],
            other => return Err(format!("unknown generator {other:?}; expected ba or er")),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(format!("unknown field {k:?} for generator {kind}"));
        }
        let seed = num::<u64>("seed", get("seed"))?;
        match kind {
            "ba" => Ok(GenSpec::Ba {
                n: need("n", num("n", get("n"))?)?,
                m: need("m", num("m", get("m"))?)?,
                p: need("p", num("p", get("p"))?)?,
                m0: num("m0", get("m0"))?,
                seed,
            }),
            _ => Ok(GenSpec::Er {
                n: need("n", num("n", get("n"))?)?,
                l: need("l", num("l", get("l"))?)?,
                seed,
            }),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Ba { n, m, p, m0, seed } => {
                write!(f, "ba:n={n},m={m},p={p}")?;
                if let Some(m0) = m0 {
                    write!(f, ",m0={m0}")?;
                }
                if let Some(seed) = seed {
                    write!(f, ",seed={seed}")?;
                }
                Ok(())
            }
            GenSpec::Er { n, l, seed } => {
                write!(f, "er:n={n},l={l}")?;
                if let Some(seed) = seed {
                    write!(f, ",seed={seed}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_spec_round_trip() {
        for s in ["ba:n=100,m=2,p=0.5", "ba:n=10,m=1,p=1,m0=3,seed=4", "er:n=10,l=5,seed=2"] {
            let spec: GenSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spec: GenSpec = "ba:p=0.25,n=50,m=3".parse().unwrap();
        let params = spec.ba_params(9).unwrap();
        assert_eq!((params.n, params.m_attach, params.m0, params.seed), (50, 3, 4, 9));
    }

    #[test]
    fn gen_spec_errors() {
        for bad in ["ba", "ba:n=10,m=2", "xx:n=1", "er:n=10,l=x", "er:n=10,l=2,p=0.5", "ba:n"] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn order_and_grid_parsing() {
        assert_eq!("asc".parse::<OrderSpec>().unwrap(), OrderSpec::Ascending);
        assert_eq!(
            "file:x.txt".parse::<OrderSpec>().unwrap(),
            OrderSpec::File("x.txt".into())
        );
        assert!("file:".parse::<OrderSpec>().is_err());
        assert!("sideways".parse::<OrderSpec>().is_err());
        assert_eq!(parse_grid("0, 0.5,1").unwrap(), Grid(vec![0.0, 0.5, 1.0]));
        assert!(parse_grid("0,,1").is_err());
    }
}
