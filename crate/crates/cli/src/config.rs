use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::Deserialize;
use walkzeta::coin_models::ModelConfig;
use walkzeta::graph_zeta::{GraphSpec, RegularGraph};
use walkzeta::{Complex, WalkModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    ClosedForms,
    KonnoSato,
    Factorization,
    All,
}

/// A `u` entry: a number or a complex literal such as `"0.2+0.1i"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum UValue {
    Real(f64),
    Text(String),
}

/// Contents of a `--config` file. Every field is optional; flags win.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<ModelConfig>,
    graph: Option<GraphSpec>,
    u: Option<Vec<UValue>>,
    #[serde(rename = "N")]
    side: Option<usize>,
    n_quad: Option<usize>,
    r_max: Option<u32>,
    a: Option<Vec<f64>>,
    steps: Option<usize>,
    p: Option<u32>,
    suite: Option<Suite>,
    out: Option<PathBuf>,
    format: Option<Format>,
    serial: Option<bool>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct CommonArgs {
    /// JSON run configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Model as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub model: Option<String>,
    /// Graph as inline JSON or a path to a JSON file.
    #[arg(long)]
    pub graph: Option<String>,
    /// Comma-separated values of u; complex values as `0.2+0.1i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub u: Vec<String>,
    /// Torus side length.
    #[arg(long = "N")]
    pub side: Option<usize>,
    /// Quadrature points per axis for the infinite-torus limit.
    #[arg(long)]
    pub n_quad: Option<usize>,
    /// Highest series coefficient.
    #[arg(long)]
    pub r_max: Option<u32>,
    /// Comma-separated interpolation parameters a.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Single-threaded evaluation.
    #[arg(long)]
    pub serial: bool,
}

/// Flags merged over the config file.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: Option<WalkModel>,
    pub graph: Option<RegularGraph>,
    pub u: Vec<Complex>,
    pub side: Option<usize>,
    pub n_quad: Option<usize>,
    pub r_max: Option<u32>,
    pub a: Vec<f64>,
    pub steps: Option<usize>,
    pub p: Option<u32>,
    pub suite: Option<Suite>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub serial: bool,
}

fn inline_or_file(text: &str) -> Result<String> {
    if text.trim_start().starts_with('{') {
        return Ok(text.to_string());
    }
    fs::read_to_string(text).with_context(|| format!("reading {text}"))
}

fn parse_u(text: &str) -> Result<Complex> {
    let t = text.trim();
    t.parse::<Complex>()
        .map_err(|_| anyhow::anyhow!("cannot parse u value {t:?}"))
}

impl RunConfig {
    pub fn load(args: &CommonArgs, steps: Option<usize>, p: Option<u32>, suite: Option<Suite>) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_file_config(path)?,
            None => FileConfig::default(),
        };
        let model = match &args.model {
            Some(text) => Some(WalkModel::from_json(&inline_or_file(text)?).context("model")?),
            None => file.model.as_ref().map(|m| m.build()).transpose().context("model")?,
        };
        let graph = match &args.graph {
            Some(text) => Some(GraphSpec::from_json(&inline_or_file(text)?).context("graph")?),
            None => file.graph.as_ref().map(|g| g.build()).transpose().context("graph")?,
        };
        let u = if !args.u.is_empty() {
            args.u.iter().map(|s| parse_u(s)).collect::<Result<Vec<_>>>()?
        } else {
            file.u
                .unwrap_or_default()
                .iter()
                .map(|v| match v {
                    UValue::Real(x) => Ok(Complex::new(*x, 0.0)),
                    UValue::Text(s) => parse_u(s),
                })
                .collect::<Result<Vec<_>>>()?
        };
        let cfg = RunConfig {
            model,
            graph,
            u,
            side: args.side.or(file.side),
            n_quad: args.n_quad.or(file.n_quad),
            r_max: args.r_max.or(file.r_max),
            a: if args.a.is_empty() { file.a.unwrap_or_default() } else { args.a.clone() },
            steps: steps.or(file.steps),
            p: p.or(file.p),
            suite: suite.or(file.suite),
            out: args.out.clone().or(file.out),
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            serial: args.serial || file.serial.unwrap_or(false),
        };
        if let Some(p) = cfg.p {
            if p != 1 && p != 2 {
                bail!("p must be 1 or 2, got {p}");
            }
        }
        if cfg.a.iter().any(|a| !(0.0..=1.0).contains(a)) {
            bail!("a values must lie in [0, 1]");
        }
        Ok(cfg)
    }

    pub fn require_model(&self) -> Result<&WalkModel> {
        self.model
            .as_ref()
            .context("a model is required (--model or \"model\" in --config)")
    }
}

fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
