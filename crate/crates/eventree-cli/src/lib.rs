//! Plumbing for the `eventree` binary: graph file parsing, report
//! rendering, and the exit-code contract.
//!
//! Exit codes are stable so scripts can branch on the rejection reason:
//!
//! | code | meaning                                    |
//! |------|--------------------------------------------|
//! | 0    | success                                    |
//! | 2    | command-line usage error                   |
//! | 10   | input could not be parsed                  |
//! | 11   | graph is not regular                       |
//! | 12   | graph is bipartite                         |
//! | 13   | graph is disconnected                      |
//! | 14   | generator parameters are infeasible        |
//! | 15   | a sampling or search budget was exhausted  |
//! | 16   | verification failed                        |
//! | 17   | internal invariant violated                |
//! | 18   | file could not be read or written          |

use clap::ValueEnum;
use eventree::{
    fixture, fixture_names, AugmentationStep, Certificate, Edge, FactorCensus, GenError, Graph,
    SolveError, Solution,
};
use serde::Serialize;

/// Default attempt budget for random graph sampling; override with
/// `--budget` or the `EVENTREE_REJECTION_BUDGET` environment variable.
pub const DEFAULT_GEN_BUDGET: usize = 10_000;
/// Default node budget for the exhaustive oracles.
pub const DEFAULT_ORACLE_BUDGET: usize = 10_000_000;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    NotRegular,
    Bipartite,
    Disconnected,
    Infeasible(String),
    Budget(String),
    VerificationFailed(String),
    Internal(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::NotRegular => write!(f, "graph is not regular"),
            CliError::Bipartite => write!(
                f,
                "graph is bipartite; its spanning trees always have leaves in both classes"
            ),
            CliError::Disconnected => write!(f, "graph is disconnected"),
            CliError::Infeasible(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "{m}"),
            CliError::VerificationFailed(m) => write!(f, "verification failed: {m}"),
            CliError::Internal(m) => write!(f, "internal invariant violated: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 10,
            CliError::NotRegular => 11,
            CliError::Bipartite => 12,
            CliError::Disconnected => 13,
            CliError::Infeasible(_) => 14,
            CliError::Budget(_) => 15,
            CliError::VerificationFailed(_) => 16,
            CliError::Internal(_) => 17,
            CliError::Io(_) => 18,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> CliError {
        match e {
            SolveError::NotRegular => CliError::NotRegular,
            SolveError::Disconnected => CliError::Disconnected,
            SolveError::Bipartite => CliError::Bipartite,
            SolveError::VerificationFailed(m) => CliError::VerificationFailed(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> CliError {
        match e {
            GenError::InfeasibleSpec { .. } => CliError::Infeasible(e.to_string()),
            GenError::BudgetExhausted(_) => CliError::Budget(e.to_string()),
            GenError::UnknownFixture(_) => CliError::Parse(format!(
                "{e}; known fixtures: {}",
                fixture_names().join(", ")
            )),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e.to_string())
    }
}

/// Accepted graph file syntaxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Detect: a `p edge` header means `dimacs`, anything else `edgelist`.
    Auto,
    /// `n m` header then one `u v` line per edge, 0-indexed, `#` comments.
    Edgelist,
    /// DIMACS-like: `c` comments, `p edge n m`, `e u v` 1-indexed.
    Dimacs,
}

fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, CliError> {
    Graph::build(n, edges).map_err(|e| CliError::Parse(format!("invalid graph: {e}")))
}

fn parse_edgelist(text: &str) -> Result<Graph, CliError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CliError::Parse(format!(
                "line {line_no}: expected two integers, got `{line}`"
            )));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| CliError::Parse(format!("line {line_no}: `{}` is not a number", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| CliError::Parse(format!("line {line_no}: `{}` is not a number", fields[1])))?;
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or_else(|| CliError::Parse("empty input: missing `n m` header".into()))?;
    if edges.len() != m {
        return Err(CliError::Parse(format!(
            "header promises {m} edges but {} were given",
            edges.len()
        )));
    }
    build_graph(n, &edges)
}

fn parse_dimacs(text: &str) -> Result<Graph, CliError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(CliError::Parse(format!("line {line_no}: second `p` line")));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(CliError::Parse(format!(
                        "line {line_no}: expected `p edge N M`"
                    )));
                }
                let n = fields[2].parse().map_err(|_| {
                    CliError::Parse(format!("line {line_no}: bad vertex count `{}`", fields[2]))
                })?;
                let m = fields[3].parse().map_err(|_| {
                    CliError::Parse(format!("line {line_no}: bad edge count `{}`", fields[3]))
                })?;
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(CliError::Parse(format!(
                        "line {line_no}: `e` before the `p edge` header"
                    )));
                }
                if fields.len() != 3 {
                    return Err(CliError::Parse(format!("line {line_no}: expected `e U V`")));
                }
                let u: usize = fields[1].parse().map_err(|_| {
                    CliError::Parse(format!("line {line_no}: `{}` is not a number", fields[1]))
                })?;
                let v: usize = fields[2].parse().map_err(|_| {
                    CliError::Parse(format!("line {line_no}: `{}` is not a number", fields[2]))
                })?;
                if u == 0 || v == 0 {
                    return Err(CliError::Parse(format!(
                        "line {line_no}: vertices are 1-indexed"
                    )));
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(CliError::Parse(format!(
                    "line {line_no}: unknown record `{other}`"
                )))
            }
        }
    }
    let (n, m) =
        header.ok_or_else(|| CliError::Parse("missing `p edge N M` header".into()))?;
    if edges.len() != m {
        return Err(CliError::Parse(format!(
            "header promises {m} edges but {} were given",
            edges.len()
        )));
    }
    build_graph(n, &edges)
}

/// Parses a graph file in the requested (or detected) format.
pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph, CliError> {
    let detected = match format {
        InputFormat::Auto => {
            let dimacs = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .is_some_and(|l| l.starts_with("p ") || l.starts_with("c ") || l == "c");
            if dimacs {
                InputFormat::Dimacs
            } else {
                InputFormat::Edgelist
            }
        }
        other => other,
    };
    match detected {
        InputFormat::Edgelist => parse_edgelist(text),
        InputFormat::Dimacs => parse_dimacs(text),
        InputFormat::Auto => unreachable!("auto resolves above"),
    }
}

/// Resolves a graph argument: `fixture:NAME`, a readable path, or a bare
/// fixture name (tried when no such file exists).
pub fn resolve_graph_arg(arg: &str, format: InputFormat) -> Result<Graph, CliError> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        return Ok(fixture(name)?);
    }
    let path = std::path::Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return parse_graph(&text, format);
    }
    if fixture_names().contains(&arg) {
        return Ok(fixture(arg)?);
    }
    Err(CliError::Io(format!(
        "`{arg}` is neither a readable file nor a fixture name (known fixtures: {})",
        fixture_names().join(", ")
    )))
}

/// Parses a tree file: one `u v` edge per line, `#` comments allowed.
pub fn parse_tree_edges(text: &str) -> Result<Vec<Edge>, CliError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CliError::Parse(format!(
                "line {}: expected `u v`, got `{line}`",
                i + 1
            )));
        }
        let u: usize = fields[0].parse().map_err(|_| {
            CliError::Parse(format!("line {}: `{}` is not a number", i + 1, fields[0]))
        })?;
        let v: usize = fields[1].parse().map_err(|_| {
            CliError::Parse(format!("line {}: `{}` is not a number", i + 1, fields[1]))
        })?;
        if u == v {
            return Err(CliError::Parse(format!("line {}: loop edge", i + 1)));
        }
        edges.push(Edge::new(u, v));
    }
    edges.sort();
    Ok(edges)
}

/// The machine-readable result of `solve`. Contains no timing data, so
/// repeated runs on the same input serialize to identical bytes.
#[derive(Serialize)]
pub struct RunReport {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub connected: bool,
    pub nonbipartite: bool,
    pub bridges: Vec<Edge>,
    pub factor: FactorCensus,
    pub initial_tree_edges: usize,
    pub steps: Vec<AugmentationStep>,
    pub tree_edges: Vec<Edge>,
    pub certificate: Certificate,
}

impl RunReport {
    pub fn new(g: &Graph, s: Solution) -> RunReport {
        let connected = g.is_connected();
        let nonbipartite = connected
            && g.two_color()
                .map(|c| !c.is_bipartite())
                .unwrap_or(false);
        RunReport {
            n: g.n(),
            m: g.m(),
            r: s.r,
            connected,
            nonbipartite,
            bridges: g.bridges(),
            factor: s.factor_census,
            initial_tree_edges: s.initial_tree_edges,
            steps: s.steps,
            tree_edges: s.tree_edges,
            certificate: s.certificate,
        }
    }

    /// Multi-line human-readable summary.
    pub fn render_human(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(
            out,
            "graph: n={} m={} r={} connected={} nonbipartite={} bridges={}",
            self.n,
            self.m,
            self.r,
            self.connected,
            self.nonbipartite,
            self.bridges.len()
        )
        .unwrap();
        writeln!(
            out,
            "factor: {} single edges, {} even cycles, {} odd cycles",
            self.factor.single_edges, self.factor.even_cycles, self.factor.odd_cycles
        )
        .unwrap();
        writeln!(
            out,
            "initial tree: {} edges; augmentation rounds: {}",
            self.initial_tree_edges,
            self.steps.len()
        )
        .unwrap();
        writeln!(out, "spanning even tree ({} edges):", self.tree_edges.len()).unwrap();
        let mut line = String::from(" ");
        for e in &self.tree_edges {
            let piece = format!(" {e}");
            if line.len() + piece.len() > 78 {
                writeln!(out, "{line}").unwrap();
                line = String::from(" ");
            }
            line.push_str(&piece);
        }
        if line.trim().is_empty() {
            line.clear();
        }
        if !line.is_empty() {
            writeln!(out, "{line}").unwrap();
        }
        let n_checks = self.certificate.checks.len();
        if self.certificate.is_pass() {
            writeln!(out, "certificate: PASS ({n_checks} checks)").unwrap();
        } else {
            writeln!(out, "certificate: FAIL").unwrap();
            write!(out, "{}", self.certificate).unwrap();
        }
        out
    }
}

/// Serializes a graph in edgelist syntax, with an optional comment header.
pub fn render_edgelist(g: &Graph, comment: Option<&str>) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    if let Some(c) = comment {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Renders a tree as Graphviz DOT, coloring the leaf-side class.
pub fn render_dot(n: usize, tree_edges: &[Edge]) -> Result<String, CliError> {
    use std::fmt::Write;
    let sides = eventree::leaf_sides(n, tree_edges)
        .map_err(|e| CliError::Internal(format!("tree is not even: {e}")))?;
    let mut out = String::new();
    writeln!(out, "graph eventree {{").unwrap();
    writeln!(out, "  node [style=filled];").unwrap();
    for (v, side) in sides.iter().enumerate() {
        match side {
            Some(eventree::Side::X) => {
                writeln!(out, "  {v} [fillcolor=gold, tooltip=\"leaf side\"];").unwrap()
            }
            Some(eventree::Side::Y) => {
                writeln!(out, "  {v} [fillcolor=lightgray, tooltip=\"inner side\"];").unwrap()
            }
            None => {}
        }
    }
    for e in tree_edges {
        let (u, v) = e.endpoints();
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
