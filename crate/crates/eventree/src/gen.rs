//! Random regular graphs, a catalog of named fixture graphs, and
//! brute-force oracles that certify the constructive pipeline on small
//! instances by exhaustive search.

use crate::graph::{Edge, Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no graph matches the requested parameters (n={n}, r={r})")]
    InfeasibleSpec { n: usize, r: usize },
    #[error("sampling budget of {0} attempts exhausted")]
    BudgetExhausted(usize),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

/// What the random generator must produce.
#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub n: usize,
    pub r: usize,
    /// Require a connected sample.
    pub connected: bool,
    /// Require a nonbipartite sample (some odd cycle).
    pub nonbipartite: bool,
}

/// Whether every connected component admits a proper 2-coloring.
fn all_components_bipartite(g: &Graph) -> bool {
    let mut color: Vec<Option<u8>> = vec![None; g.n()];
    for s in 0..g.n() {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(0);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                match color[w] {
                    None => {
                        color[w] = Some(1 - color[v].unwrap());
                        stack.push(w);
                    }
                    Some(c) => {
                        if c == color[v].unwrap() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn pairing_attempt(n: usize, r: usize, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(r)).collect();
    stubs.shuffle(rng);
    let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
    Graph::build(n, &edges).ok()
}

/// Samples an `r`-regular simple graph on `n` vertices by repeatedly
/// pairing degree stubs uniformly and rejecting samples with loops or
/// parallel edges (and samples missing the connectivity or nonbipartiteness
/// requirement). The same seed always yields the same graph.
pub fn random_regular(spec: &GenSpec, seed: u64, budget: usize) -> Result<Graph, GenError> {
    let GenSpec {
        n,
        r,
        connected,
        nonbipartite,
    } = *spec;
    let infeasible = Err(GenError::InfeasibleSpec { n, r });
    if n == 0 || r >= n || (n * r) % 2 == 1 {
        return infeasible;
    }
    // Structurally impossible requirement combinations for tiny degrees:
    // without edges nothing is connected or odd; a perfect matching is
    // connected only as a single edge and never has a cycle; a connected
    // 2-regular graph is one cycle, odd only for odd n.
    if r == 0 && (nonbipartite || (connected && n > 1)) {
        return infeasible;
    }
    if r == 1 && (nonbipartite || (connected && n > 2)) {
        return infeasible;
    }
    if r == 2 && connected && nonbipartite && n % 2 == 0 {
        return infeasible;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let Some(g) = pairing_attempt(n, r, &mut rng) else {
            continue;
        };
        if connected && !g.is_connected() {
            continue;
        }
        if nonbipartite && all_components_bipartite(&g) {
            continue;
        }
        return Ok(g);
    }
    Err(GenError::BudgetExhausted(budget))
}

/// Generalized Petersen graph: outer ring, spokes, and an inner ring that
/// advances by `k`. Requires `1 <= k < n/2` for simplicity.
fn generalized_petersen(n: usize, k: usize) -> Graph {
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    Graph::build(2 * n, &edges).expect("generalized Petersen parameters are valid")
}

/// Cubic graph with three bridges and no 2-factor: a hub vertex joined by
/// a bridge to each of three 5-vertex gadgets. Every gadget has an odd
/// number of vertices, so no disjoint cycle cover can absorb all three.
fn three_bridges_graph() -> Graph {
    let mut edges = vec![(0usize, 1usize), (0, 6), (0, 11)];
    for b in [1usize, 6, 11] {
        let (b1, b2, b3, b4, b5) = (b, b + 1, b + 2, b + 3, b + 4);
        edges.extend([
            (b1, b2),
            (b2, b3),
            (b3, b4),
            (b4, b1),
            (b2, b5),
            (b3, b5),
            (b4, b5),
        ]);
    }
    Graph::build(16, &edges).expect("fixture is a valid graph")
}

/// Names accepted by [`fixture`], in the order they are listed to users.
pub fn fixture_names() -> &'static [&'static str] {
    &[
        "c4",
        "c5",
        "cube",
        "gp7_2",
        "k4",
        "k5",
        "mobius_kantor",
        "petersen",
        "prism",
        "three_bridges",
    ]
}

/// A named fixture graph. The catalog covers the interesting regimes:
/// bipartite (`c4`, `cube`, `mobius_kantor`), odd and even rings (`c5`,
/// `c4`), dense odd/even degree (`k4`, `k5`), cubic with and without
/// 2-factors (`petersen`, `prism`, `gp7_2`, `three_bridges`).
pub fn fixture(name: &str) -> Result<Graph, GenError> {
    let cycle = |n: usize| {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).expect("cycle is a valid graph")
    };
    let complete = |n: usize| {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).expect("complete graph is valid")
    };
    match name {
        "c4" => Ok(cycle(4)),
        "c5" => Ok(cycle(5)),
        "cube" => Ok(generalized_petersen(4, 1)),
        "gp7_2" => Ok(generalized_petersen(7, 2)),
        "k4" => Ok(complete(4)),
        "k5" => Ok(complete(5)),
        "mobius_kantor" => Ok(generalized_petersen(8, 3)),
        "petersen" => Ok(generalized_petersen(5, 2)),
        "prism" => Ok(Graph::build(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .expect("fixture is a valid graph")),
        "three_bridges" => Ok(three_bridges_graph()),
        other => Err(GenError::UnknownFixture(other.to_string())),
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// True when the tree given by `edges` (assumed acyclic and spanning) has
/// all leaves in one class of its 2-coloring. Self-contained so oracle
/// verdicts do not depend on library tree code.
pub fn edges_form_even_tree(n: usize, edges: &[Edge]) -> bool {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        let (u, v) = e.endpoints();
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut color = vec![usize::MAX; n];
    color[0] = 0;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if color[w] == usize::MAX {
                color[w] = 1 - color[v];
                stack.push(w);
            }
        }
    }
    let mut leaf_color = None;
    for v in 0..n {
        if adj[v].len() == 1 {
            match leaf_color {
                None => leaf_color = Some(color[v]),
                Some(c) => {
                    if color[v] != c {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Enumerates spanning trees by including or excluding each edge in index
/// order, pruning branches that cannot reach `n - 1` edges or that close a
/// cycle. Calls `found` for each spanning tree; stops early when it
/// returns `true`. Each visited search node costs one unit of budget.
fn for_each_spanning_tree(
    g: &Graph,
    budget: usize,
    found: &mut dyn FnMut(&[Edge]) -> bool,
) -> Result<(), GenError> {
    struct Search<'a> {
        g: &'a Graph,
        nodes: usize,
        budget: usize,
        chosen: Vec<Edge>,
        stop: bool,
    }
    fn recurse(
        s: &mut Search,
        idx: usize,
        dsu: &Dsu,
        found: &mut dyn FnMut(&[Edge]) -> bool,
    ) -> Result<(), GenError> {
        if s.stop {
            return Ok(());
        }
        s.nodes += 1;
        if s.nodes > s.budget {
            return Err(GenError::BudgetExhausted(s.budget));
        }
        let need = s.g.n() - 1;
        if s.chosen.len() == need {
            if found(&s.chosen) {
                s.stop = true;
            }
            return Ok(());
        }
        if idx == s.g.m() || s.chosen.len() + (s.g.m() - idx) < need {
            return Ok(());
        }
        let e = s.g.edges()[idx];
        let (u, v) = e.endpoints();
        let mut with = Dsu {
            parent: dsu.parent.clone(),
        };
        if with.union(u, v) {
            s.chosen.push(e);
            recurse(s, idx + 1, &with, found)?;
            s.chosen.pop();
        }
        recurse(s, idx + 1, dsu, found)
    }
    if g.n() == 0 {
        return Ok(());
    }
    let mut s = Search {
        g,
        nodes: 0,
        budget,
        chosen: Vec::new(),
        stop: false,
    };
    recurse(&mut s, 0, &Dsu::new(g.n()), found)
}

/// First even spanning tree found by exhaustive search, or `None` when no
/// spanning tree is even (in particular when the graph is disconnected).
pub fn brute_force_even_spanning_tree(
    g: &Graph,
    budget: usize,
) -> Result<Option<Vec<Edge>>, GenError> {
    let mut answer = None;
    let n = g.n();
    for_each_spanning_tree(g, budget, &mut |edges| {
        if edges_form_even_tree(n, edges) {
            answer = Some(edges.to_vec());
            true
        } else {
            false
        }
    })?;
    Ok(answer)
}

/// Exhaustive spanning tree counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanningTreeCounts {
    pub total: usize,
    pub even: usize,
}

/// Counts all spanning trees and how many of them are even.
pub fn count_spanning_trees(g: &Graph, budget: usize) -> Result<SpanningTreeCounts, GenError> {
    let mut counts = SpanningTreeCounts { total: 0, even: 0 };
    let n = g.n();
    for_each_spanning_tree(g, budget, &mut |edges| {
        counts.total += 1;
        if edges_form_even_tree(n, edges) {
            counts.even += 1;
        }
        false
    })?;
    Ok(counts)
}

/// Whether the graph has a 2-factor (a spanning disjoint union of cycles),
/// decided by backtracking over edges with exact degree bookkeeping.
pub fn brute_force_two_factor_exists(g: &Graph, budget: usize) -> Result<bool, GenError> {
    // last_touch[v]: index of the final edge incident to v, after which
    // v's degree must be exactly 2.
    let mut last_touch = vec![0usize; g.n()];
    for (i, e) in g.edges().iter().enumerate() {
        let (u, v) = e.endpoints();
        last_touch[u] = i;
        last_touch[v] = i;
    }
    fn recurse(
        g: &Graph,
        last_touch: &[usize],
        idx: usize,
        deg: &mut [usize],
        nodes: &mut usize,
        budget: usize,
    ) -> Result<bool, GenError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(GenError::BudgetExhausted(budget));
        }
        if idx == g.m() {
            return Ok(deg.iter().all(|&d| d == 2));
        }
        let (u, v) = g.edges()[idx].endpoints();
        // take the edge
        if deg[u] < 2 && deg[v] < 2 {
            deg[u] += 1;
            deg[v] += 1;
            let complete_u = last_touch[u] != idx || deg[u] == 2;
            let complete_v = last_touch[v] != idx || deg[v] == 2;
            if complete_u && complete_v && recurse(g, last_touch, idx + 1, deg, nodes, budget)? {
                deg[u] -= 1;
                deg[v] -= 1;
                return Ok(true);
            }
            deg[u] -= 1;
            deg[v] -= 1;
        }
        // skip the edge: only legal if neither endpoint needed it
        if (last_touch[u] != idx || deg[u] == 2) && (last_touch[v] != idx || deg[v] == 2) {
            return recurse(g, last_touch, idx + 1, deg, nodes, budget);
        }
        Ok(false)
    }
    if g.n() == 0 {
        return Ok(true);
    }
    let mut deg = vec![0usize; g.n()];
    let mut nodes = 0usize;
    recurse(g, &last_touch, 0, &mut deg, &mut nodes, budget)
}

/// Whether the graph has a proper 2-coloring, by trying all assignments.
/// Only sensible for small n; used to validate the witness-producing check.
pub fn brute_force_bipartite(g: &Graph) -> bool {
    assert!(g.n() <= 20, "exponential search");
    'outer: for mask in 0..(1u32 << g.n()) {
        for e in g.edges() {
            let (u, v) = e.endpoints();
            if (mask >> u) & 1 == (mask >> v) & 1 {
                continue 'outer;
            }
        }
        return true;
    }
    g.m() == 0
}

/// Bridges found by removing each edge in turn and testing connectivity of
/// the remaining graph (restricted to the removed edge's component).
pub fn brute_force_bridges(g: &Graph) -> Vec<Edge> {
    let mut bridges = Vec::new();
    for &e in g.edges() {
        let (u, v) = e.endpoints();
        // DFS from u avoiding e; e is a bridge iff v becomes unreachable.
        let mut seen = vec![false; g.n()];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &w in g.neighbors(x) {
                if (x == u && w == v) || (x == v && w == u) {
                    continue;
                }
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if !seen[v] {
            bridges.push(e);
        }
    }
    bridges
}

/// Whether some spanning subgraph has every component a single edge or a
/// cycle, by trying all edge subsets. Exponential in m.
pub fn brute_force_good_factor_exists(g: &Graph) -> bool {
    assert!(g.m() <= 22, "exponential search");
    'outer: for mask in 0u64..(1u64 << g.m()) {
        let mut deg = vec![0usize; g.n()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, e) in g.edges().iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                let (u, v) = e.endpoints();
                deg[u] += 1;
                deg[v] += 1;
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        if deg.iter().any(|&d| d == 0 || d > 2) {
            continue;
        }
        // components must be single edges (two deg-1 ends) or cycles (all
        // deg 2); equivalently no path on 3+ vertices: a deg-1 vertex's
        // neighbor must also have deg 1.
        for v in 0..g.n() {
            if deg[v] == 1 && deg[adj[v][0]] != 1 {
                continue 'outer;
            }
        }
        return true;
    }
    false
}
