//! Independent verification of trees, evenness, factors and the combined
//! certificates the solver must satisfy.
//!
//! Nothing here reuses construction-side bookkeeping: every check recomputes
//! from the graph and the candidate object alone, so a bug in the builder
//! cannot silently certify itself. A failing check always carries a concrete
//! witness (an offending edge, vertex, or leaf pair).

use crate::factor::{Factor, FactorComponent};
use crate::graph::{Edge, Graph};
use serde::Serialize;

/// One named pass/fail check; `witness` is present exactly on failure.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: &str) -> Check {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    fn fail(name: &str, witness: String) -> Check {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness),
        }
    }
}

/// A verification report: all checks, plus their conjunction.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl Certificate {
    fn new(checks: Vec<Check>) -> Certificate {
        let overall = checks.iter().all(|c| c.pass);
        Certificate { checks, overall }
    }

    pub fn is_pass(&self) -> bool {
        self.overall
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            match &c.witness {
                Some(w) => writeln!(f, "FAIL {}: {}", c.name, w)?,
                None => writeln!(f, "PASS {}", c.name)?,
            }
        }
        write!(f, "overall: {}", if self.overall { "PASS" } else { "FAIL" })
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

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both endpoints were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn tree_checks(g: &Graph, edges: &[Edge]) -> Vec<Check> {
    let mut checks = Vec::new();

    let mut bad_edge = None;
    for e in edges {
        let (u, v) = e.endpoints();
        if v >= g.n() || !g.has_edge(u, v) {
            bad_edge = Some(*e);
            break;
        }
    }
    checks.push(match bad_edge {
        None => Check::pass("edges-in-graph"),
        Some(e) => Check::fail("edges-in-graph", format!("{e} is not a graph edge")),
    });
    if bad_edge.is_some() {
        return checks;
    }

    let mut dsu = Dsu::new(g.n());
    let mut cycle_edge = None;
    for e in edges {
        let (u, v) = e.endpoints();
        if !dsu.union(u, v) {
            cycle_edge = Some(*e);
            break;
        }
    }
    checks.push(match cycle_edge {
        None => Check::pass("acyclic"),
        Some(e) => Check::fail("acyclic", format!("edge {e} closes a cycle")),
    });

    let incident = incident_vertices(edges);
    let mut split = None;
    if let Some(&v0) = incident.first() {
        let root = dsu.find(v0);
        for &v in &incident {
            if dsu.find(v) != root {
                split = Some((v0, v));
                break;
            }
        }
    }
    checks.push(match split {
        None => Check::pass("connected"),
        Some((a, b)) => Check::fail("connected", format!("vertices {a} and {b} are not joined")),
    });
    checks
}

fn incident_vertices(edges: &[Edge]) -> Vec<usize> {
    let mut vs: Vec<usize> = edges
        .iter()
        .flat_map(|e| {
            let (u, v) = e.endpoints();
            [u, v]
        })
        .collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Certifies that `edges` forms a tree inside `g`: real edges, acyclic,
/// and connected on the vertices the edges touch.
pub fn verify_tree(g: &Graph, edges: &[Edge]) -> Certificate {
    Certificate::new(tree_checks(g, edges))
}

/// The 2-coloring of a connected acyclic edge set; colors indexed by vertex,
/// `None` off the tree. Color 0 is the class of the smallest incident vertex.
fn tree_coloring(n: usize, edges: &[Edge]) -> Vec<Option<u8>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        let (u, v) = e.endpoints();
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut color: Vec<Option<u8>> = vec![None; n];
    if let Some(&start) = incident_vertices(edges).first() {
        color[start] = Some(0);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if color[w].is_none() {
                    color[w] = Some(1 - color[v].unwrap());
                    stack.push(w);
                }
            }
        }
    }
    color
}

fn path_length(n: usize, edges: &[Edge], from: usize, to: usize) -> usize {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        let (u, v) = e.endpoints();
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut dist = vec![usize::MAX; n];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist[to]
}

fn even_checks(g: &Graph, edges: &[Edge]) -> Vec<Check> {
    let mut checks = tree_checks(g, edges);
    if checks.iter().any(|c| !c.pass) {
        return checks;
    }
    // In a tree, all leaf-to-leaf distances are even iff every leaf falls in
    // the same class of the unique 2-coloring.
    let color = tree_coloring(g.n(), edges);
    let mut degree = vec![0usize; g.n()];
    for e in edges {
        let (u, v) = e.endpoints();
        degree[u] += 1;
        degree[v] += 1;
    }
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| degree[v] == 1).collect();
    let offender = leaves
        .iter()
        .find(|&&v| color[v] != color[leaves[0]])
        .copied();
    checks.push(match offender {
        None => Check::pass("leaves-one-class"),
        Some(v) => {
            let d = path_length(g.n(), edges, leaves[0], v);
            Check::fail(
                "leaves-one-class",
                format!("leaves {} and {v} are {d} apart (odd)", leaves[0]),
            )
        }
    });
    checks
}

/// Certifies an even tree: a tree all of whose leaf pairs lie at even
/// distance. A single vertex or an empty edge set passes vacuously.
pub fn verify_even(g: &Graph, edges: &[Edge]) -> Certificate {
    Certificate::new(even_checks(g, edges))
}

fn factor_checks(g: &Graph, vertex_set: &[usize], f: &Factor, prefix: &str) -> Vec<Check> {
    let name = |s: &str| format!("{prefix}{s}");
    let mut checks = Vec::new();

    let mut expected = vertex_set.to_vec();
    expected.sort_unstable();
    expected.dedup();
    let covered = f.covered();
    let dup = covered.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
    let cover_check = if let Some(v) = dup {
        Check::fail(&name("cover-exact"), format!("vertex {v} covered twice"))
    } else if covered != expected {
        let missing = expected.iter().find(|v| covered.binary_search(v).is_err());
        let extra = covered.iter().find(|v| expected.binary_search(v).is_err());
        let w = match (missing, extra) {
            (Some(v), _) => format!("vertex {v} is uncovered"),
            (_, Some(v)) => format!("vertex {v} is outside the target set"),
            _ => "cover mismatch".into(),
        };
        Check::fail(&name("cover-exact"), w)
    } else {
        Check::pass(&name("cover-exact"))
    };
    checks.push(cover_check);

    let mut witness = None;
    'comps: for c in f.components() {
        match c {
            FactorComponent::SingleEdge(u, v) => {
                if !g.has_edge(*u, *v) {
                    witness = Some(format!("({u},{v}) is not a graph edge"));
                    break 'comps;
                }
            }
            FactorComponent::Cycle(ring) => {
                if ring.len() < 3 {
                    witness = Some(format!("cycle of length {}", ring.len()));
                    break 'comps;
                }
                let mut sorted = ring.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    witness = Some(format!("ring {ring:?} repeats a vertex"));
                    break 'comps;
                }
                for i in 0..ring.len() {
                    let (u, v) = (ring[i], ring[(i + 1) % ring.len()]);
                    if !g.has_edge(u, v) {
                        witness = Some(format!("ring edge ({u},{v}) is not a graph edge"));
                        break 'comps;
                    }
                }
            }
        }
    }
    checks.push(match witness {
        None => Check::pass(&name("components-valid")),
        Some(w) => Check::fail(&name("components-valid"), w),
    });
    checks
}

/// Certifies that `f` is a good {1,2}-factor of `g` covering exactly
/// `vertex_set`: disjoint single-edge/cycle components, each one a real
/// subgraph of `g`, together covering every target vertex once.
pub fn verify_good_factor(g: &Graph, vertex_set: &[usize], f: &Factor) -> Certificate {
    Certificate::new(factor_checks(g, vertex_set, f, ""))
}

/// Certifies a good even tree: an even tree whose complement is covered by a
/// good {1,2}-factor (the residual).
pub fn verify_good_even_tree(g: &Graph, tree_edges: &[Edge], residual: &Factor) -> Certificate {
    let mut checks = even_checks(g, tree_edges);
    let tree_ok = checks.iter().all(|c| c.pass);
    let incident = incident_vertices(tree_edges);
    let complement: Vec<usize> = (0..g.n())
        .filter(|v| incident.binary_search(v).is_err())
        .collect();
    if tree_ok {
        checks.extend(factor_checks(g, &complement, residual, "residual-"));
    }
    Certificate::new(checks)
}

/// Certifies a spanning even tree of `g`.
pub fn verify_spanning_even_tree(g: &Graph, edges: &[Edge]) -> Certificate {
    let mut checks = even_checks(g, edges);
    if checks.iter().all(|c| c.pass) {
        let incident = incident_vertices(edges);
        let missing = (0..g.n()).find(|v| incident.binary_search(v).is_err());
        checks.push(match missing {
            None => Check::pass("spans-graph"),
            Some(v) => Check::fail("spans-graph", format!("vertex {v} is not in the tree")),
        });
    }
    Certificate::new(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn edges(list: &[(usize, usize)]) -> Vec<Edge> {
        list.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }

    #[test]
    fn path_in_c5_is_a_tree() {
        let g = cycle(5);
        let t = edges(&[(1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(verify_tree(&g, &t).is_pass());
    }

    #[test]
    fn cycle_is_not_a_tree() {
        let g = cycle(4);
        let cert = verify_tree(&g, &g.edges().to_vec());
        assert!(!cert.is_pass());
        assert_eq!(cert.first_failure().unwrap().name, "acyclic");
    }

    #[test]
    fn foreign_edge_fails_with_witness() {
        let g = cycle(4);
        let cert = verify_tree(&g, &edges(&[(0, 2)]));
        let fail = cert.first_failure().unwrap();
        assert_eq!(fail.name, "edges-in-graph");
        assert!(fail.witness.as_ref().unwrap().contains("(0,2)"));
    }

    #[test]
    fn disconnected_forest_fails() {
        let g = cycle(6);
        let cert = verify_tree(&g, &edges(&[(0, 1), (3, 4)]));
        assert_eq!(cert.first_failure().unwrap().name, "connected");
    }

    #[test]
    fn even_path_passes() {
        let g = cycle(5);
        let t = edges(&[(1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(verify_even(&g, &t).is_pass());
    }

    #[test]
    fn odd_path_fails_with_leaf_pair() {
        // 3-edge path inside C4: leaves at distance 3
        let g = cycle(4);
        let t = edges(&[(0, 1), (1, 2), (2, 3)]);
        let cert = verify_even(&g, &t);
        let fail = cert.first_failure().unwrap();
        assert_eq!(fail.name, "leaves-one-class");
        assert!(fail.witness.as_ref().unwrap().contains("3 apart"));
    }

    #[test]
    fn star_is_even() {
        let g = Graph::build(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        assert!(verify_even(&g, &g.edges().to_vec()).is_pass());
    }

    #[test]
    fn empty_tree_is_vacuously_even() {
        let g = cycle(4);
        assert!(verify_even(&g, &[]).is_pass());
    }

    #[test]
    fn factor_cover_mismatch_is_caught() {
        use crate::factor::FactorComponent::*;
        let g = cycle(6);
        let f = Factor::new(vec![SingleEdge(0, 1)]);
        let cert = verify_good_factor(&g, &[0, 1, 2], &f);
        assert!(!cert.is_pass());
        assert!(cert
            .first_failure()
            .unwrap()
            .witness
            .as_ref()
            .unwrap()
            .contains("2"));
    }

    #[test]
    fn factor_with_fake_ring_edge_is_caught() {
        use crate::factor::FactorComponent::*;
        let g = cycle(6);
        let f = Factor::new(vec![Cycle(vec![0, 1, 3])]);
        let cert = verify_good_factor(&g, &[0, 1, 3], &f);
        assert_eq!(cert.first_failure().unwrap().name, "components-valid");
    }

    #[test]
    fn spanning_check_reports_missing_vertex() {
        let g = cycle(5);
        let t = edges(&[(1, 2), (2, 3)]);
        let cert = verify_spanning_even_tree(&g, &t);
        let fail = cert.first_failure().unwrap();
        assert_eq!(fail.name, "spans-graph");
    }

    #[test]
    fn good_even_tree_certificate_combines_tree_and_residual() {
        use crate::factor::FactorComponent::*;
        let g = Graph::build(
            8,
            &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 7), (3, 7), (2, 3)],
        )
        .unwrap();
        let t = edges(&[(0, 1), (1, 2)]);
        let residual = Factor::new(vec![Cycle(vec![3, 4, 5, 6, 7])]);
        let cert = verify_good_even_tree(&g, &t, &residual);
        assert!(cert.is_pass(), "{cert}");
        // wrong residual: misses vertex 7
        let bad = Factor::new(vec![Cycle(vec![3, 4, 5, 6])]);
        assert!(!verify_good_even_tree(&g, &t, &bad).is_pass());
    }

    #[test]
    fn certificate_serializes_with_witnesses() {
        let g = cycle(4);
        let cert = verify_tree(&g, &edges(&[(0, 2)]));
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"witness\""));
        assert!(json.contains("\"overall\":false"));
    }
}
