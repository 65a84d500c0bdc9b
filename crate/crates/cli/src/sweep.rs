//! Sweep experiments: generate instances over an n range and emit one CSV
//! row per (n, seed) with the size sums, the weighted sum split at
//! ceil(sqrt n), and the ratio against n^2.
//!
//! Rows are computed on a worker pool but always written in configuration
//! order, and every row is a pure function of its (config, n, seed)
//! triple, so identical configs produce byte-identical CSV.

use anyhow::{bail, Context, Result};
use berge_core::constructions::{
    greedy_maximal_with_factor, kr_construction, single_edge, DEFAULT_CANDIDATE_FACTOR,
};
use berge_core::expr::Expr;
use berge_core::graph::Graph;
use berge_core::hypergraph::Hypergraph;
use berge_core::weight::{ceil_sqrt, weigh, WeightFunction};
use rayon::prelude::*;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::Path;

use crate::pattern::parse_pattern;

pub const CSV_HEADER: &str = "n,generator,seed,pattern,weight,s_min,s_max,edges,sum_size,sum_size_sq,sum_size_cu,sum_w,w_below,w_above,threshold,n_sq,ratio,status";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// catalog name or graph file path
    pub pattern: String,
    /// `kr:<r>`, `single`, or `greedy`
    pub generator: String,
    /// weight spec; defaults to plain size
    #[serde(default = "default_weight")]
    pub weight: String,
    /// integer expressions in `n`; required by the greedy generator
    pub s_min: Option<String>,
    pub s_max: Option<String>,
    pub n: NSpec,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default = "default_factor")]
    pub candidate_factor: usize,
    /// default output path; the command-line flag wins
    pub output: Option<String>,
}

fn default_weight() -> String {
    "size".to_string()
}

fn default_factor() -> usize {
    DEFAULT_CANDIDATE_FACTOR
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NSpec {
    List(Vec<usize>),
    Range { from: usize, to: usize, step: usize },
}

impl NSpec {
    pub fn values(&self) -> Result<Vec<usize>> {
        let values = match self {
            NSpec::List(values) => values.clone(),
            NSpec::Range { from, to, step } => {
                if *step == 0 {
                    bail!("n range step must be positive");
                }
                (*from..=*to).step_by(*step).collect()
            }
        };
        if values.is_empty() {
            bail!("n sweep is empty");
        }
        if !values.windows(2).all(|w| w[0] < w[1]) {
            bail!("n sweep must be strictly increasing: {:?}", values);
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Generator {
    Kr(usize),
    Single,
    Greedy,
}

impl Generator {
    fn parse(spec: &str) -> Result<Self> {
        if let Some(r) = spec.strip_prefix("kr:") {
            let r: usize = r.parse().context("bad r in kr:<r>")?;
            return Ok(Generator::Kr(r));
        }
        match spec {
            "single" => Ok(Generator::Single),
            "greedy" => Ok(Generator::Greedy),
            other => bail!(
                "unknown generator {:?} (expected kr:<r>, single, greedy)",
                other
            ),
        }
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path.as_ref())
        .with_context(|| format!("reading sweep config {:?}", path.as_ref()))?;
    let config: SweepConfig = toml::from_str(&text).context("parsing sweep config")?;
    Ok(config)
}

struct ResolvedRow {
    n: usize,
    seed: u64,
}

/// Runs the sweep and renders the full CSV (header plus one line per
/// (n, seed) in configuration order).
pub fn run_sweep(config: &SweepConfig) -> Result<String> {
    let pattern = parse_pattern(&config.pattern)?;
    let generator = Generator::parse(&config.generator)?;
    let weight = WeightFunction::parse(&config.weight)
        .map_err(|e| anyhow::anyhow!("bad weight spec: {e}"))?;
    let ns = config.n.values()?;
    let seeds: Vec<u64> = if config.seeds.is_empty() {
        if generator == Generator::Greedy {
            bail!("greedy generator needs a non-empty seeds list");
        }
        vec![0]
    } else {
        config.seeds.clone()
    };
    let s_min_expr = config
        .s_min
        .as_deref()
        .map(|s| Expr::parse(s, "n"))
        .transpose()
        .map_err(|e| anyhow::anyhow!("bad s_min: {e}"))?;
    let s_max_expr = config
        .s_max
        .as_deref()
        .map(|s| Expr::parse(s, "n"))
        .transpose()
        .map_err(|e| anyhow::anyhow!("bad s_max: {e}"))?;
    if generator == Generator::Greedy && (s_min_expr.is_none() || s_max_expr.is_none()) {
        bail!("greedy generator needs s_min and s_max");
    }

    let mut rows = Vec::new();
    for &n in &ns {
        for &seed in &seeds {
            rows.push(ResolvedRow { n, seed });
        }
    }

    let lines: Vec<String> = rows
        .par_iter()
        .map(|row| {
            render_row(
                row,
                config,
                &generator,
                &pattern,
                &weight,
                s_min_expr.as_ref(),
                s_max_expr.as_ref(),
            )
        })
        .collect::<Result<_>>()?;

    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

fn eval_size(expr: &Expr, n: usize) -> Result<usize> {
    let value = expr
        .eval(n as i128)
        .map_err(|e| anyhow::anyhow!("size expression failed at n = {n}: {e}"))?;
    if value < 0 {
        bail!("size expression negative at n = {n}");
    }
    Ok(value as usize)
}

fn render_row(
    row: &ResolvedRow,
    config: &SweepConfig,
    generator: &Generator,
    pattern: &Graph,
    weight: &WeightFunction,
    s_min: Option<&Expr>,
    s_max: Option<&Expr>,
) -> Result<String> {
    let n = row.n;
    let (bounds, built): ((usize, usize), Result<Hypergraph>) = match generator {
        Generator::Kr(r) => ((*r, *r), kr_construction(n, *r).map_err(Into::into)),
        Generator::Single => ((n, n), single_edge(n).map_err(Into::into)),
        Generator::Greedy => {
            let lo = eval_size(s_min.expect("validated"), n)?;
            let hi = eval_size(s_max.expect("validated"), n)?;
            (
                (lo, hi),
                greedy_maximal_with_factor(n, pattern, lo, hi, row.seed, config.candidate_factor)
                    .map_err(Into::into),
            )
        }
    };

    let (s_lo, s_hi) = bounds;
    match built {
        Ok(h) => {
            let threshold = ceil_sqrt(n);
            let report = weigh(&h, weight, threshold)
                .map_err(|e| anyhow::anyhow!("weight failed at n = {n}: {e}"))?;
            let mut sum_size: u64 = 0;
            let mut sum_sq: u64 = 0;
            let mut sum_cu: u64 = 0;
            for s in h.edge_sizes() {
                let s = s as u64;
                sum_size += s;
                sum_sq += s * s;
                sum_cu += s * s * s;
            }
            let n_sq = (n * n) as u64;
            let ratio = report.total as f64 / n_sq as f64;
            let mut line = String::new();
            let _ = write!(
                line,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.6},ok",
                n,
                config.generator,
                row.seed,
                config.pattern,
                weight,
                s_lo,
                s_hi,
                h.edge_count(),
                sum_size,
                sum_sq,
                sum_cu,
                report.total,
                report.below_threshold,
                report.above_threshold,
                threshold,
                n_sq,
                ratio,
            );
            Ok(line)
        }
        Err(e) => {
            // a row that cannot be generated is reported, never dropped
            let mut line = String::new();
            let _ = write!(
                line,
                "{},{},{},{},{},{},{},0,0,0,0,0,0,0,{},{},0.000000,error:{}",
                n,
                config.generator,
                row.seed,
                config.pattern,
                weight,
                s_lo,
                s_hi,
                ceil_sqrt(n),
                (n * n) as u64,
                compact(&e.to_string()),
            );
            Ok(line)
        }
    }
}

fn compact(message: &str) -> String {
    message.replace([',', '\n'], ";")
}
