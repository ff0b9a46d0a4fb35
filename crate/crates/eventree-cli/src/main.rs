//! `eventree`: build, check, and explore certified spanning even trees of
//! regular nonbipartite graphs.

use clap::{Args, Parser, Subcommand, ValueEnum};
use eventree::{
    brute_force_even_spanning_tree, brute_force_two_factor_exists, count_spanning_trees,
    random_regular, solve, verify_spanning_even_tree, GenSpec, Graph, SolveOptions,
};
use eventree_cli::{
    parse_graph, parse_tree_edges, render_dot, render_edgelist, resolve_graph_arg, CliError,
    InputFormat, RunReport, DEFAULT_GEN_BUDGET, DEFAULT_ORACLE_BUDGET,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "eventree",
    version,
    about = "Certified spanning even trees of regular nonbipartite graphs",
    after_help = "Exit codes: 0 ok, 10 parse, 11 not regular, 12 bipartite, 13 disconnected,\n\
                  14 infeasible parameters, 15 budget exhausted, 16 verification failed,\n\
                  17 internal invariant, 18 i/o error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a certified spanning even tree of a graph
    Solve(SolveArgs),
    /// Check that a proposed edge set is a spanning even tree of a graph
    Verify(VerifyArgs),
    /// Sample a random regular graph (connected and nonbipartite by default)
    Gen(GenArgs),
    /// Run exhaustive-search oracles on a small graph
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Graph file path, `fixture:NAME`, or a bare fixture name
    #[arg(value_name = "GRAPH")]
    graph: Option<String>,
    /// Read the graph from this file
    #[arg(long, value_name = "PATH", conflicts_with = "graph")]
    input: Option<PathBuf>,
    /// Use a named fixture graph
    #[arg(long, value_name = "NAME", conflicts_with_all = ["graph", "input"])]
    fixture: Option<String>,
    /// Input syntax
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

impl GraphArg {
    fn load(&self) -> Result<Graph, CliError> {
        if let Some(name) = &self.fixture {
            return Ok(eventree::fixture(name)?);
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)?;
            return parse_graph(&text, self.format);
        }
        match &self.graph {
            Some(arg) => resolve_graph_arg(arg, self.format),
            None => Err(CliError::Io(
                "no graph given: pass a path, `fixture:NAME`, --input, or --fixture".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Print the report as JSON (byte-identical across repeated runs)
    #[arg(long)]
    json: bool,
    /// Write the tree as Graphviz DOT to this path
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Certify the factor and every intermediate tree, not just the result
    #[arg(long)]
    verify_all: bool,
    /// Solve every file in a directory (sorted by name) instead of one graph
    #[arg(long, value_name = "DIR", conflicts_with_all = ["graph", "input", "fixture"])]
    batch: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// File with one `u v` tree edge per line
    #[arg(long, value_name = "PATH")]
    tree: PathBuf,
    /// Print the certificate as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count
    #[arg(long, required_unless_present = "fixture")]
    n: Option<usize>,
    /// Degree
    #[arg(long, required_unless_present = "fixture")]
    r: Option<usize>,
    /// Emit a named fixture graph instead of sampling
    #[arg(long, value_name = "NAME", conflicts_with_all = ["n", "r", "seed"])]
    fixture: Option<String>,
    /// Random seed (same seed, same graph)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep disconnected samples
    #[arg(long)]
    allow_disconnected: bool,
    /// Keep bipartite samples
    #[arg(long)]
    allow_bipartite: bool,
    /// Attempt budget (overrides EVENTREE_REJECTION_BUDGET)
    #[arg(long)]
    budget: Option<usize>,
    /// Write the graph here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleCheck {
    /// Decide even-spanning-tree and 2-factor existence together (default)
    All,
    /// Search for an even spanning tree exhaustively
    EvenTree,
    /// Decide whether a 2-factor exists
    TwoFactor,
    /// Count spanning trees and even spanning trees
    Count,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Which exhaustive check to run
    #[arg(long, value_enum, default_value_t = OracleCheck::All)]
    check: OracleCheck,
    /// Search node budget
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: usize,
    /// Print the verdict as JSON
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Solve(args) => run_solve(args),
        Cmd::Verify(args) => run_verify(args),
        Cmd::Gen(args) => run_gen(args),
        Cmd::Oracle(args) => run_oracle(args),
    };
    match outcome {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn solve_one(g: &Graph, verify_all: bool) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let solution = solve(g, &SolveOptions { verify_all })?;
    eprintln!(
        "solved n={} in {:.1}ms",
        g.n(),
        started.elapsed().as_secs_f64() * 1e3
    );
    Ok(RunReport::new(g, solution))
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    if let Some(dir) = &args.batch {
        return run_batch(dir, &args);
    }
    let g = args.graph.load()?;
    let report = solve_one(&g, args.verify_all)?;
    if let Some(path) = &args.dot {
        std::fs::write(path, render_dot(g.n(), &report.tree_edges)?)?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    } else {
        print!("{}", report.render_human());
    }
    Ok(())
}

#[derive(Serialize)]
struct BatchEntry {
    file: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<RunReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn run_batch(dir: &Path, args: &SolveArgs) -> Result<(), CliError> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Io(format!("no files in {}", dir.display())));
    }
    let mut entries = Vec::new();
    let mut first_failure: Option<i32> = None;
    for path in &files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let result = std::fs::read_to_string(path)
            .map_err(CliError::from)
            .and_then(|text| parse_graph(&text, args.format_of()))
            .and_then(|g| solve_one(&g, args.verify_all));
        match result {
            Ok(report) => {
                if !args.json {
                    println!(
                        "{name}: ok n={} r={} tree={} rounds={}",
                        report.n,
                        report.r,
                        report.tree_edges.len(),
                        report.steps.len()
                    );
                }
                entries.push(BatchEntry {
                    file: name,
                    ok: true,
                    report: Some(report),
                    error: None,
                });
            }
            Err(e) => {
                if !args.json {
                    println!("{name}: error: {e}");
                }
                first_failure.get_or_insert(e.exit_code());
                entries.push(BatchEntry {
                    file: name,
                    ok: false,
                    report: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&entries).expect("serializable batch"));
    }
    if let Some(code) = first_failure {
        eprintln!("error: {} of {} inputs failed", entries.iter().filter(|e| !e.ok).count(), entries.len());
        std::process::exit(code);
    }
    Ok(())
}

impl SolveArgs {
    fn format_of(&self) -> InputFormat {
        self.graph.format
    }
}

fn run_verify(args: VerifyArgs) -> Result<(), CliError> {
    let g = args.graph.load()?;
    let text = std::fs::read_to_string(&args.tree)?;
    let tree = parse_tree_edges(&text)?;
    let cert = verify_spanning_even_tree(&g, &tree);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&cert).expect("serializable certificate"));
    } else {
        println!("{cert}");
    }
    if cert.is_pass() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(
            cert.first_failure()
                .map(|c| c.name.clone())
                .unwrap_or_else(|| "unknown check".into()),
        ))
    }
}

fn gen_budget(flag: Option<usize>) -> usize {
    if let Some(b) = flag {
        return b;
    }
    std::env::var("EVENTREE_REJECTION_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GEN_BUDGET)
}

fn run_gen(args: GenArgs) -> Result<(), CliError> {
    let (g, comment) = match &args.fixture {
        Some(name) => (eventree::fixture(name)?, format!("fixture {name}")),
        None => {
            let (n, r) = (args.n.expect("required"), args.r.expect("required"));
            let spec = GenSpec {
                n,
                r,
                connected: !args.allow_disconnected,
                nonbipartite: !args.allow_bipartite,
            };
            let g = random_regular(&spec, args.seed, gen_budget(args.budget))?;
            (g, format!("random {r}-regular graph, n={n}, seed={}", args.seed))
        }
    };
    let text = render_edgelist(&g, Some(&comment));
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
enum OracleReport {
    All {
        even_spanning_tree: bool,
        two_factor: bool,
    },
    EvenTree {
        found: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        tree_edges: Option<Vec<eventree::Edge>>,
    },
    TwoFactor {
        exists: bool,
    },
    Count {
        total: usize,
        even: usize,
    },
}

fn run_oracle(args: OracleArgs) -> Result<(), CliError> {
    let g = args.graph.load()?;
    let report = match args.check {
        OracleCheck::All => OracleReport::All {
            even_spanning_tree: brute_force_even_spanning_tree(&g, args.budget)?.is_some(),
            two_factor: brute_force_two_factor_exists(&g, args.budget)?,
        },
        OracleCheck::EvenTree => {
            let found = brute_force_even_spanning_tree(&g, args.budget)?;
            OracleReport::EvenTree {
                found: found.is_some(),
                tree_edges: found,
            }
        }
        OracleCheck::TwoFactor => OracleReport::TwoFactor {
            exists: brute_force_two_factor_exists(&g, args.budget)?,
        },
        OracleCheck::Count => {
            let counts = count_spanning_trees(&g, args.budget)?;
            OracleReport::Count {
                total: counts.total,
                even: counts.even,
            }
        }
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable verdict"));
        return Ok(());
    }
    match &report {
        OracleReport::All {
            even_spanning_tree,
            two_factor,
        } => {
            println!("even spanning tree exists: {even_spanning_tree}");
            println!("2-factor exists: {two_factor}");
        }
        OracleReport::EvenTree { found, tree_edges } => match tree_edges {
            Some(edges) => {
                println!("even spanning tree found ({} edges):", edges.len());
                for e in edges {
                    let (u, v) = e.endpoints();
                    println!("{u} {v}");
                }
            }
            None => {
                assert!(!found);
                println!("no even spanning tree exists");
            }
        },
        OracleReport::TwoFactor { exists } => {
            println!(
                "{}",
                if *exists {
                    "a 2-factor exists"
                } else {
                    "no 2-factor exists"
                }
            );
        }
        OracleReport::Count { total, even } => {
            println!("spanning trees: {total} total, {even} even");
        }
    }
    Ok(())
}
