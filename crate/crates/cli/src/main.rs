//! `berge`: analysis of Berge-F-free hypergraphs from the command line.
//!
//! Exit codes are uniform across subcommands: 0 found/ok, 1 free or
//! negative, 2 usage or input error, 3 budget or cap exhausted. Every
//! long flag can also be set through a `BERGE_*` environment variable.

use anyhow::{Context, Result};
use berge_cli::pattern::parse_pattern;
use berge_cli::sweep;
use berge_core::berge::{contains_berge, oracle, BergeWitness};
use berge_core::classify::{
    blue_density_report, counting_bound, verify_blue_in_every_copy,
    verify_nonblue_within_edge_f_free, ClaimCheck,
};
use berge_core::constructions::{
    greedy_maximal_with_factor, kr_construction, single_edge, DEFAULT_CANDIDATE_FACTOR,
};
use berge_core::hypergraph::Hypergraph;
use berge_core::io;
use berge_core::ramsey::{edge_size_threshold, RamseyError, RamseyResult};
use berge_core::search::{
    max_f_free_edges, max_weight_berge_free, verify_lemma1_margin, SearchOptions,
};
use berge_core::weight::{ceil_sqrt, weigh, WeightFunction};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FOUND: u8 = 0;
const EXIT_FREE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "berge", version, about = "Berge-F-free hypergraph analysis")]
struct Cli {
    /// worker threads for sweeps (default: all cores)
    #[arg(long, global = true, env = "BERGE_THREADS")]
    threads: Option<usize>,

    /// search-tree node budget for the search subcommand
    #[arg(
        long,
        global = true,
        env = "BERGE_BUDGET_NODES",
        default_value_t = 100_000_000
    )]
    budget_nodes: u64,

    /// seed for randomized generators
    #[arg(long, global = true, env = "BERGE_SEED", default_value_t = 0)]
    seed: u64,

    /// machine-readable JSON output where applicable
    #[arg(long, global = true, env = "BERGE_JSON")]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Berge-F containment; prints a witness when one exists
    Detect {
        /// hypergraph file
        hypergraph: PathBuf,
        /// pattern: catalog name (K3, C4, P4) or graph file
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        /// use the brute-force reference oracle instead of the detector
        #[arg(long, env = "BERGE_ORACLE")]
        oracle: bool,
        /// also write the witness JSON here
        #[arg(long, env = "BERGE_WITNESS_OUT")]
        witness_out: Option<PathBuf>,
    },
    /// Classify shadow edges as blue or not; emits CSV
    Classify {
        hypergraph: PathBuf,
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        /// count duplicate hyperedges once
        #[arg(long, env = "BERGE_SET_SEMANTICS")]
        set_semantics: bool,
        /// output CSV path (stdout when absent)
        #[arg(long, short, env = "BERGE_OUT")]
        out: Option<PathBuf>,
    },
    /// Run the blue-edge claim checks on a Berge-F-free input
    Verify {
        hypergraph: PathBuf,
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        /// copy-enumeration cap before reporting truncation
        #[arg(long, env = "BERGE_COPY_CAP", default_value_t = 10_000_000)]
        copy_cap: u64,
    },
    /// Ramsey thresholds R(F, F - e) per deletable edge
    Ramsey {
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        /// a single edge "a,b" (default: every edge)
        #[arg(long, env = "BERGE_EDGE", conflicts_with = "all_edges")]
        edge: Option<String>,
        /// compute for every edge of the pattern (the default)
        #[arg(long, env = "BERGE_ALL_EDGES")]
        all_edges: bool,
        #[arg(long, env = "BERGE_CAP", default_value_t = 10)]
        cap: usize,
        /// write the extremal coloring of the minimum threshold here
        #[arg(long, env = "BERGE_WITNESS_OUT")]
        witness_out: Option<PathBuf>,
    },
    /// Generate one of the bundled constructions
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Exact extremal searches
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Run a sweep config and emit plot-ready CSV
    Sweep {
        /// TOML sweep configuration
        config: PathBuf,
        /// output CSV path (overrides the config's `output`; stdout if neither)
        #[arg(long, short, env = "BERGE_OUT")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Singleton-block construction: r-uniform, (n/r)^2 hyperedges
    Kr {
        #[arg(long, env = "BERGE_N")]
        n: usize,
        #[arg(long, env = "BERGE_R")]
        r: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
    /// One hyperedge covering all n vertices
    Single {
        #[arg(long, env = "BERGE_N")]
        n: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
    /// Seeded random maximal Berge-F-free hypergraph
    Greedy {
        #[arg(long, env = "BERGE_N")]
        n: usize,
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        #[arg(long, env = "BERGE_S_MIN")]
        s_min: usize,
        #[arg(long, env = "BERGE_S_MAX")]
        s_max: usize,
        /// candidate budget multiplier (about factor * n^2 draws)
        #[arg(long, env = "BERGE_FACTOR", default_value_t = DEFAULT_CANDIDATE_FACTOR)]
        factor: usize,
        #[command(flatten)]
        common: ConstructCommon,
    },
}

#[derive(Args)]
struct ConstructCommon {
    /// weight function used in the predicted/measured report
    #[arg(long, env = "BERGE_WEIGHT", default_value = "size")]
    weight: String,
    /// write the hypergraph here (stdout when absent)
    #[arg(long, short, env = "BERGE_OUT")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchKind {
    /// Maximum total weight of a Berge-F-free hypergraph
    Hyper {
        #[arg(long, env = "BERGE_N")]
        n: usize,
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        #[arg(long, env = "BERGE_WEIGHT", default_value = "size")]
        weight: String,
        #[arg(long, env = "BERGE_S_MIN")]
        s_min: usize,
        #[arg(long, env = "BERGE_S_MAX")]
        s_max: usize,
        /// simple hypergraphs only (each hyperedge at most once)
        #[arg(long, env = "BERGE_SET_SEMANTICS")]
        set_semantics: bool,
    },
    /// Maximum edges of an F-free graph
    Graph {
        #[arg(long, env = "BERGE_N")]
        n: usize,
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
    },
    /// Extremal-margin table over an n range
    Lemma1 {
        #[arg(long, env = "BERGE_PATTERN")]
        pattern: String,
        #[arg(long, env = "BERGE_N_FROM")]
        n_from: usize,
        #[arg(long, env = "BERGE_N_TO")]
        n_to: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // a failed rebuild only means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Detect {
            hypergraph,
            pattern,
            oracle: use_oracle,
            witness_out,
        } => cmd_detect(
            cli,
            hypergraph,
            pattern,
            *use_oracle,
            witness_out.as_deref(),
        ),
        Command::Classify {
            hypergraph,
            pattern,
            set_semantics,
            out,
        } => cmd_classify(hypergraph, pattern, *set_semantics, out.as_deref()),
        Command::Verify {
            hypergraph,
            pattern,
            copy_cap,
        } => cmd_verify(cli, hypergraph, pattern, *copy_cap),
        Command::Ramsey {
            pattern,
            edge,
            all_edges: _,
            cap,
            witness_out,
        } => cmd_ramsey(cli, pattern, edge.as_deref(), *cap, witness_out.as_deref()),
        Command::Construct { kind } => cmd_construct(cli, kind),
        Command::Search { kind } => cmd_search(cli, kind),
        Command::Sweep { config, out } => cmd_sweep(config, out.as_deref()),
    }
}

fn load_hypergraph(path: &std::path::Path) -> Result<Hypergraph> {
    io::load_hypergraph(path).with_context(|| format!("reading hypergraph from {:?}", path))
}

fn cmd_detect(
    cli: &Cli,
    path: &std::path::Path,
    pattern: &str,
    use_oracle: bool,
    witness_out: Option<&std::path::Path>,
) -> Result<u8> {
    let h = load_hypergraph(path)?;
    let f = parse_pattern(pattern)?;
    let witness: Option<BergeWitness> = if use_oracle {
        // reference path: boolean only, no certificate
        if oracle::contains_berge_naive(&h, &f) {
            Some(contains_berge(&h, &f).expect("oracle and detector agree"))
        } else {
            None
        }
    } else {
        contains_berge(&h, &f)
    };
    match witness {
        Some(w) => {
            let json = w.to_json();
            if let Some(out) = witness_out {
                std::fs::write(out, &json)?;
            }
            println!("{}", json);
            Ok(EXIT_FOUND)
        }
        None => {
            if cli.json {
                println!("{}", serde_json::json!({ "berge_free": true }));
            } else {
                println!("Berge-free");
            }
            Ok(EXIT_FREE)
        }
    }
}

fn cmd_classify(
    path: &std::path::Path,
    pattern: &str,
    set_semantics: bool,
    out: Option<&std::path::Path>,
) -> Result<u8> {
    use berge_core::classify::{classify_edges_with, CountMode};
    let h = load_hypergraph(path)?;
    let f = parse_pattern(pattern)?;
    let mode = if set_semantics {
        CountMode::DistinctSets
    } else {
        CountMode::Multiset
    };
    let classification = classify_edges_with(&h, &f, mode)?;
    let csv = classification.to_csv();
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{}", csv),
    }
    Ok(EXIT_FOUND)
}

fn cmd_verify(cli: &Cli, path: &std::path::Path, pattern: &str, copy_cap: u64) -> Result<u8> {
    let h = load_hypergraph(path)?;
    let f = parse_pattern(pattern)?;
    if let Some(w) = contains_berge(&h, &f) {
        eprintln!(
            "precondition violation: input contains a Berge copy of the pattern: {}",
            w.to_json()
        );
        return Ok(EXIT_INPUT);
    }

    let claim1 = verify_blue_in_every_copy(&h, &f, copy_cap)?;
    let mut claim2_ok = true;
    let mut claim2_skipped = 0usize;
    for idx in 0..h.edge_count() {
        if h.edge_size(idx) < f.n() {
            claim2_skipped += 1;
            continue;
        }
        if !verify_nonblue_within_edge_f_free(&h, &f, idx)?.is_ok() {
            claim2_ok = false;
            break;
        }
    }
    let bound = counting_bound(&h, &f)?;
    let density = blue_density_report(&h, &f).ok();

    let claim1_ok = claim1.is_ok();
    let all_ok = claim1_ok && claim2_ok && bound.holds();
    if cli.json {
        println!(
            "{}",
            serde_json::json!({
                "blue_in_every_copy": describe_check(&claim1),
                "nonblue_inside_edges_f_free": claim2_ok,
                "nonblue_checks_skipped_small_edges": claim2_skipped,
                "counting_bound_lhs": bound.lhs_sum_blue_inside,
                "counting_bound_rhs": bound.rhs_bound,
                "counting_bound_holds": bound.holds(),
                "min_blue_density": density.and_then(|d| d.min_ratio),
                "all_ok": all_ok,
            })
        );
    } else {
        println!("blue edge in every copy: {}", describe_check(&claim1));
        println!(
            "non-blue pairs inside hyperedges are pattern-free: {} ({} small hyperedges skipped)",
            if claim2_ok { "ok" } else { "FAILED" },
            claim2_skipped
        );
        println!(
            "counting bound: {} <= {} : {}",
            bound.lhs_sum_blue_inside,
            bound.rhs_bound,
            if bound.holds() { "ok" } else { "FAILED" }
        );
        if let Some(d) = density {
            if let Some(min) = d.min_ratio {
                println!("minimum blue density inside a hyperedge: {:.6}", min);
            }
        }
    }
    Ok(if all_ok { EXIT_FOUND } else { EXIT_FREE })
}

fn describe_check(check: &ClaimCheck) -> String {
    match check {
        ClaimCheck::Verified { copies_checked } => format!("ok ({} copies)", copies_checked),
        ClaimCheck::Counterexample { copy } => format!("FAILED (copy {:?})", copy),
        ClaimCheck::Truncated { copies_checked } => {
            format!("TRUNCATED after {} copies", copies_checked)
        }
    }
}

fn cmd_ramsey(
    cli: &Cli,
    pattern: &str,
    edge: Option<&str>,
    cap: usize,
    witness_out: Option<&std::path::Path>,
) -> Result<u8> {
    let f = parse_pattern(pattern)?;
    let edges: Vec<(usize, usize)> = match edge {
        Some(spec) => {
            let (a, b) = spec.split_once(',').context("edge must be given as a,b")?;
            vec![(a.trim().parse()?, b.trim().parse()?)]
        }
        None => f.edges().to_vec(),
    };
    if edges.is_empty() {
        anyhow::bail!("pattern has no edges to delete");
    }

    let mut rows: Vec<(usize, usize, Option<RamseyResult>)> = Vec::new();
    let mut exceeded = false;
    for (a, b) in edges {
        match edge_size_threshold(&f, (a, b), cap) {
            Ok(result) => rows.push((a, b, Some(result))),
            Err(RamseyError::ExceedsCap { .. }) => {
                exceeded = true;
                rows.push((a, b, None));
            }
            Err(e) => return Err(e.into()),
        }
    }

    let minimum = rows
        .iter()
        .filter_map(|(_, _, r)| r.as_ref().map(|r| r.value))
        .min();
    if cli.json {
        let json_rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(a, b, r)| match r {
                Some(r) => serde_json::json!({ "edge": [a, b], "threshold": r.value }),
                None => serde_json::json!({ "edge": [a, b], "exceeds_cap": cap }),
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({ "rows": json_rows, "minimum": minimum, "cap": cap })
        );
    } else {
        for (a, b, r) in &rows {
            match r {
                Some(r) => println!("edge ({}, {}): threshold {}", a, b, r.value),
                None => println!("edge ({}, {}): exceeds cap {} (value > {})", a, b, cap, cap),
            }
        }
        match minimum {
            Some(min) => println!("minimum threshold: {}", min),
            None => println!("minimum threshold: > {} (cap)", cap),
        }
    }

    if let Some(out) = witness_out {
        let best = rows
            .iter()
            .filter_map(|(_, _, r)| r.as_ref())
            .min_by_key(|r| r.value);
        if let Some(result) = best {
            std::fs::write(out, result.witness.to_text())?;
        }
    }
    Ok(if exceeded { EXIT_BUDGET } else { EXIT_FOUND })
}

fn cmd_construct(cli: &Cli, kind: &ConstructKind) -> Result<u8> {
    let common = match kind {
        ConstructKind::Kr { common, .. }
        | ConstructKind::Single { common, .. }
        | ConstructKind::Greedy { common, .. } => common,
    };
    let w =
        WeightFunction::parse(&common.weight).map_err(|e| anyhow::anyhow!("bad weight: {e}"))?;
    let (h, predicted): (Hypergraph, Option<u64>) = match kind {
        ConstructKind::Kr { n, r, .. } => {
            let h = kr_construction(*n, *r)?;
            // (n/r)^2 hyperedges of size r each
            let predicted = ((n / r) * (n / r)) as u64 * w.eval(*r)?;
            (h, Some(predicted))
        }
        ConstructKind::Single { n, .. } => (single_edge(*n)?, Some(w.eval(*n)?)),
        ConstructKind::Greedy {
            n,
            pattern,
            s_min,
            s_max,
            factor,
            ..
        } => {
            let f = parse_pattern(pattern)?;
            let h = greedy_maximal_with_factor(*n, &f, *s_min, *s_max, cli.seed, *factor)?;
            (h, None)
        }
    };

    let measured = weigh(&h, &w, ceil_sqrt(h.n()))?.total;
    match &common.out {
        Some(path) => std::fs::write(path, io::hypergraph_to_string(&h))?,
        None => print!("{}", io::hypergraph_to_string(&h)),
    }
    match predicted {
        Some(p) => eprintln!(
            "predicted total weight ({}): {}, measured: {}",
            w, p, measured
        ),
        None => eprintln!("measured total weight ({}): {}", w, measured),
    }
    Ok(EXIT_FOUND)
}

fn cmd_search(cli: &Cli, kind: &SearchKind) -> Result<u8> {
    let opts = SearchOptions {
        node_budget: cli.budget_nodes,
        ..SearchOptions::default()
    };
    match kind {
        SearchKind::Hyper {
            n,
            pattern,
            weight,
            s_min,
            s_max,
            set_semantics,
        } => {
            let f = parse_pattern(pattern)?;
            let w =
                WeightFunction::parse(weight).map_err(|e| anyhow::anyhow!("bad weight: {e}"))?;
            let opts = SearchOptions {
                set_semantics: *set_semantics,
                ..opts
            };
            let report = max_weight_berge_free(*n, &f, &w, *s_min, *s_max, &opts)?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "optimum {} ({}), {} nodes, {:.3}s",
                    report.optimum,
                    if report.exhaustive {
                        "exact"
                    } else {
                        "lower bound, budget hit"
                    },
                    report.nodes_explored,
                    report.wall_time.as_secs_f64()
                );
                print!("{}", io::hypergraph_to_string(&report.witness));
            }
            Ok(if report.exhaustive {
                EXIT_FOUND
            } else {
                EXIT_BUDGET
            })
        }
        SearchKind::Graph { n, pattern } => {
            let f = parse_pattern(pattern)?;
            let report = max_f_free_edges(*n, &f, &opts)?;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "optimum {} ({}), {} nodes, {:.3}s",
                    report.optimum,
                    if report.exhaustive {
                        "exact"
                    } else {
                        "lower bound, budget hit"
                    },
                    report.nodes_explored,
                    report.wall_time.as_secs_f64()
                );
                print!("{}", io::graph_to_string(&report.witness));
            }
            Ok(if report.exhaustive {
                EXIT_FOUND
            } else {
                EXIT_BUDGET
            })
        }
        SearchKind::Lemma1 {
            pattern,
            n_from,
            n_to,
        } => {
            let f = parse_pattern(pattern)?;
            let rows = verify_lemma1_margin(&f, *n_from, *n_to, &opts)?;
            if cli.json {
                let json_rows: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "n": r.n,
                            "extremal_edges": r.extremal_edges,
                            "total_pairs": r.total_pairs,
                            "ratio": r.ratio,
                            "margin_ok": r.margin_ok,
                        })
                    })
                    .collect();
                println!("{}", serde_json::Value::Array(json_rows));
            } else {
                println!("n,extremal_edges,total_pairs,ratio,margin_ok");
                for r in rows.iter() {
                    println!(
                        "{},{},{},{:.6},{}",
                        r.n, r.extremal_edges, r.total_pairs, r.ratio, r.margin_ok
                    );
                }
            }
            Ok(if rows.iter().all(|r| r.margin_ok) {
                EXIT_FOUND
            } else {
                EXIT_FREE
            })
        }
    }
}

fn cmd_sweep(config_path: &std::path::Path, out: Option<&std::path::Path>) -> Result<u8> {
    let config = sweep::load_config(config_path)?;
    let csv = sweep::run_sweep(&config)?;
    let target = out
        .map(|p| p.to_path_buf())
        .or_else(|| config.output.as_ref().map(PathBuf::from));
    match target {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{}", csv),
    }
    Ok(EXIT_FOUND)
}
