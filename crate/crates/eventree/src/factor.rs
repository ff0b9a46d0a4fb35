//! Spanning {1,2}-factors: subgraphs in which every vertex has degree 1 or 2
//! and every component is regular, i.e. a lone edge or a simple cycle.
//!
//! Extraction works through the bipartite double cover: a perfect matching
//! up there picks, for every vertex, one neighbor as successor, and the
//! successor permutation's orbits project straight down to components
//! (2-orbits give a single edge chosen "in both copies", longer orbits give
//! cycles). Regular graphs always admit such a matching, so extraction never
//! fails on regular input.
//!
//! For even-regular graphs a spanning union of cycles (a 2-factor) is built
//! the classical way: orient an Euler circuit of each component, match
//! out-copies to in-copies, and read the successor permutation off the
//! matching. The orientation uses every undirected edge once, so no 2-orbit
//! can occur and all components are genuine cycles.

use crate::graph::{Edge, Graph};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("vertex {0} has odd degree")]
    OddDegree(usize),
    #[error("graph is not 2k-regular with k >= 1")]
    NotEvenRegular,
    #[error("graph is not r-regular with odd r >= 3")]
    NotOddRegular,
    #[error("not a valid {{1,2}}-factor: {0}")]
    BadFactor(String),
}

/// One component of a {1,2}-factor.
///
/// Canonical form: a `SingleEdge` stores its endpoints ascending; a `Cycle`
/// ring starts at its smallest vertex and runs toward the smaller of that
/// vertex's two ring neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorComponent {
    SingleEdge(usize, usize),
    Cycle(Vec<usize>),
}

impl FactorComponent {
    pub fn len(&self) -> usize {
        match self {
            FactorComponent::SingleEdge(..) => 2,
            FactorComponent::Cycle(ring) => ring.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, FactorComponent::Cycle(_))
    }

    pub fn is_odd_cycle(&self) -> bool {
        matches!(self, FactorComponent::Cycle(ring) if ring.len() % 2 == 1)
    }

    /// True for the components that admit a balanced bipartition:
    /// single edges and even cycles.
    pub fn is_balanced(&self) -> bool {
        !self.is_odd_cycle()
    }

    pub fn vertex_iter(&self) -> impl Iterator<Item = usize> + '_ {
        match self {
            FactorComponent::SingleEdge(u, v) => Pair::Two(*u, *v),
            FactorComponent::Cycle(ring) => Pair::Many(ring.iter()),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        match self {
            FactorComponent::SingleEdge(u, v) => vec![Edge::new(*u, *v)],
            FactorComponent::Cycle(ring) => (0..ring.len())
                .map(|i| Edge::new(ring[i], ring[(i + 1) % ring.len()]))
                .collect(),
        }
    }

    /// Ring neighbors of the vertex at `pos` (cycles only).
    pub fn ring_neighbors(&self, pos: usize) -> (usize, usize) {
        match self {
            FactorComponent::Cycle(ring) => {
                let k = ring.len();
                (ring[(pos + k - 1) % k], ring[(pos + 1) % k])
            }
            FactorComponent::SingleEdge(..) => panic!("ring_neighbors on a single edge"),
        }
    }

    pub fn min_vertex(&self) -> usize {
        match self {
            FactorComponent::SingleEdge(u, _) => *u,
            FactorComponent::Cycle(ring) => ring[0],
        }
    }
}

enum Pair<'a> {
    Two(usize, usize),
    Many(std::slice::Iter<'a, usize>),
}

impl Iterator for Pair<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        match self {
            Pair::Two(u, v) => {
                let (a, b) = (*u, *v);
                if a == usize::MAX && b == usize::MAX {
                    None
                } else if a != usize::MAX {
                    *self = Pair::Two(usize::MAX, b);
                    Some(a)
                } else {
                    *self = Pair::Two(usize::MAX, usize::MAX);
                    Some(b)
                }
            }
            Pair::Many(it) => it.next().copied(),
        }
    }
}

/// Disjoint factor components, sorted by smallest contained vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    components: Vec<FactorComponent>,
}

/// Component counts by shape, as reported by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCensus {
    pub single_edges: usize,
    pub even_cycles: usize,
    pub odd_cycles: usize,
}

impl Factor {
    pub fn new(mut components: Vec<FactorComponent>) -> Factor {
        components.sort_by_key(|c| c.min_vertex());
        Factor { components }
    }

    pub fn components(&self) -> &[FactorComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// All covered vertices, ascending.
    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .components
            .iter()
            .flat_map(|c| c.vertex_iter())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn census(&self) -> FactorCensus {
        let mut census = FactorCensus {
            single_edges: 0,
            even_cycles: 0,
            odd_cycles: 0,
        };
        for c in &self.components {
            match c {
                FactorComponent::SingleEdge(..) => census.single_edges += 1,
                FactorComponent::Cycle(ring) if ring.len() % 2 == 0 => census.even_cycles += 1,
                FactorComponent::Cycle(_) => census.odd_cycles += 1,
            }
        }
        census
    }

    /// Builds the factor induced by a successor permutation with
    /// `successor[v]` adjacent to `v` and no fixed points. 2-orbits become
    /// single edges, longer orbits become cycles.
    pub fn from_successor(successor: &[usize]) -> Factor {
        let n = successor.len();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut v = successor[start];
            while v != start {
                seen[v] = true;
                orbit.push(v);
                v = successor[v];
            }
            assert!(orbit.len() >= 2, "successor permutation has a fixed point");
            if orbit.len() == 2 {
                components.push(FactorComponent::SingleEdge(
                    orbit[0].min(orbit[1]),
                    orbit[0].max(orbit[1]),
                ));
            } else {
                components.push(FactorComponent::Cycle(canonical_ring(orbit)));
            }
        }
        Factor::new(components)
    }
}

/// Rotate/reflect a ring so it starts at its smallest vertex and runs toward
/// the smaller of that vertex's two neighbors.
fn canonical_ring(mut ring: Vec<usize>) -> Vec<usize> {
    let k = ring.len();
    let start = (0..k).min_by_key(|&i| ring[i]).unwrap();
    ring.rotate_left(start);
    if ring[k - 1] < ring[1] {
        ring[1..].reverse();
    }
    ring
}

/// The bipartite double cover: one left and one right copy per vertex, with
/// `left(u) ~ right(v)` for every edge `uv` (in both orientations).
#[derive(Clone, Debug)]
pub struct BipartiteCover {
    n: usize,
    left_adj: Vec<Vec<usize>>,
}

impl BipartiteCover {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Right-copy neighbors of `left(v)`; identical to the host adjacency.
    pub fn left_neighbors(&self, v: usize) -> &[usize] {
        &self.left_adj[v]
    }

    /// The host edge a cover edge `(left(u), right(v))` projects onto.
    pub fn original_edge(&self, left: usize, right: usize) -> Edge {
        Edge::new(left, right)
    }
}

pub fn bipartite_double_cover(g: &Graph) -> BipartiteCover {
    BipartiteCover {
        n: g.n(),
        left_adj: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
    }
}

/// Maximum matching of the cover as `(left, right)` pairs sorted by left
/// vertex. For a regular host graph the matching is perfect.
pub fn max_bipartite_matching(cover: &BipartiteCover) -> Vec<(usize, usize)> {
    let match_of_left = hopcroft_karp(cover.n, cover.n, &cover.left_adj);
    match_of_left
        .iter()
        .enumerate()
        .filter_map(|(l, r)| r.map(|r| (l, r)))
        .collect()
}

/// Hopcroft-Karp maximum bipartite matching: repeated BFS layering plus
/// layered DFS augmentation. Deterministic given sorted adjacency.
pub(crate) fn hopcroft_karp(nl: usize, nr: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let mut match_l: Vec<Option<usize>> = vec![None; nl];
    let mut match_r: Vec<Option<usize>> = vec![None; nr];
    let mut dist = vec![INF; nl];
    let mut queue = std::collections::VecDeque::new();

    loop {
        // BFS from free left vertices to find shortest augmenting distance.
        queue.clear();
        for l in 0..nl {
            if match_l[l].is_none() {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                match match_r[r] {
                    None => found = true,
                    Some(l2) => {
                        if dist[l2] == INF {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                    }
                }
            }
        }
        if !found {
            break;
        }
        // DFS phase along the layering.
        fn try_augment(
            l: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_l: &mut [Option<usize>],
            match_r: &mut [Option<usize>],
        ) -> bool {
            for i in 0..adj[l].len() {
                let r = adj[l][i];
                let ok = match match_r[r] {
                    None => true,
                    Some(l2) => {
                        dist[l2] == dist[l] + 1
                            && try_augment(l2, adj, dist, match_l, match_r)
                    }
                };
                if ok {
                    match_l[l] = Some(r);
                    match_r[r] = Some(l);
                    return true;
                }
            }
            dist[l] = usize::MAX;
            false
        }
        for l in 0..nl {
            if match_l[l].is_none() {
                try_augment(l, adj, &mut dist, &mut match_l, &mut match_r);
            }
        }
    }
    let _ = nr;
    match_l
}

/// Spanning {1,2}-factor of a regular graph with every component regular,
/// via a perfect matching of the bipartite double cover.
pub fn good_12_factor(g: &Graph) -> Result<Factor, FactorError> {
    let r = g.degree_profile().ok_or(FactorError::NotRegular)?;
    if r == 0 {
        return Err(FactorError::NotRegular);
    }
    let cover = bipartite_double_cover(g);
    let matching = max_bipartite_matching(&cover);
    assert_eq!(
        matching.len(),
        g.n(),
        "double cover of a regular graph must have a perfect matching"
    );
    let mut successor = vec![usize::MAX; g.n()];
    for (l, r) in matching {
        successor[l] = r;
    }
    Ok(Factor::from_successor(&successor))
}

/// Closed Euler walks, one per component that has edges. Each walk is a
/// vertex sequence starting and ending at the component's smallest vertex
/// and traverses every component edge exactly once.
pub fn euler_circuit(g: &Graph) -> Result<Vec<Vec<usize>>, FactorError> {
    for v in 0..g.n() {
        if g.degree(v) % 2 != 0 {
            return Err(FactorError::OddDegree(v));
        }
    }
    // Adjacency with edge ids so each undirected edge is consumed once.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    for (eid, e) in g.edges().iter().enumerate() {
        let (u, v) = e.endpoints();
        adj[u].push((v, eid));
        adj[v].push((u, eid));
    }
    let mut used = vec![false; g.m()];
    let mut cursor = vec![0usize; g.n()];
    let mut walks = Vec::new();
    let mut visited = vec![false; g.n()];
    for start in 0..g.n() {
        if visited[start] || g.degree(start) == 0 {
            continue;
        }
        // Hierholzer, iteratively: walk forward greedily, pop exhausted
        // vertices onto the circuit.
        let mut stack = vec![start];
        let mut circuit = Vec::new();
        while let Some(&v) = stack.last() {
            visited[v] = true;
            let mut advanced = false;
            while cursor[v] < adj[v].len() {
                let (w, eid) = adj[v][cursor[v]];
                if used[eid] {
                    cursor[v] += 1;
                    continue;
                }
                used[eid] = true;
                cursor[v] += 1;
                stack.push(w);
                advanced = true;
                break;
            }
            if !advanced {
                circuit.push(v);
                stack.pop();
            }
        }
        circuit.reverse();
        debug_assert_eq!(circuit.first(), circuit.last());
        walks.push(circuit);
    }
    Ok(walks)
}

/// Spanning 2-factor of a 2k-regular graph (k >= 1): orient Euler circuits,
/// then perfectly match out-copies to in-copies.
pub fn petersen_two_factor(g: &Graph) -> Result<Factor, FactorError> {
    let r = g.degree_profile().ok_or(FactorError::NotEvenRegular)?;
    if r == 0 || r % 2 != 0 {
        return Err(FactorError::NotEvenRegular);
    }
    let walks = euler_circuit(g)?;
    let mut out_adj: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for walk in &walks {
        for w in walk.windows(2) {
            out_adj[w[0]].push(w[1]);
        }
    }
    for nbrs in &mut out_adj {
        nbrs.sort_unstable();
    }
    let match_of = hopcroft_karp(g.n(), g.n(), &out_adj);
    let mut successor = vec![usize::MAX; g.n()];
    for (v, m) in match_of.iter().enumerate() {
        successor[v] = m.expect("k-regular bipartite out/in graph must match perfectly");
    }
    let f = Factor::from_successor(&successor);
    debug_assert!(f.components().iter().all(|c| c.is_cycle()));
    Ok(f)
}

/// Validates that `f` is a good {1,2}-factor covering all of `g`.
fn validate_spanning_factor(g: &Graph, f: &Factor) -> Result<(), FactorError> {
    let covered = f.covered();
    if covered.len() != g.n() || covered.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FactorError::BadFactor(
            "components do not partition the vertex set".into(),
        ));
    }
    if covered.last().map(|&v| v >= g.n()).unwrap_or(false) {
        return Err(FactorError::BadFactor("vertex out of range".into()));
    }
    for c in f.components() {
        if let FactorComponent::Cycle(ring) = c {
            if ring.len() < 3 {
                return Err(FactorError::BadFactor(format!(
                    "cycle of length {} is too short",
                    ring.len()
                )));
            }
        }
        for e in c.edges() {
            let (u, v) = e.endpoints();
            if !g.has_edge(u, v) {
                return Err(FactorError::BadFactor(format!(
                    "({u},{v}) is not an edge of the graph"
                )));
            }
        }
    }
    Ok(())
}

/// Guarantees a cycle component in a {1,2}-factor of an odd-regular graph.
///
/// If `f` already has a cycle it is returned unchanged. Otherwise `f` is a
/// perfect matching; removing it leaves an even-regular graph whose
/// 2-factor (all cycles) is returned instead.
pub fn ensure_cycle_component(g: &Graph, f: Factor) -> Result<Factor, FactorError> {
    let r = g.degree_profile().ok_or(FactorError::NotOddRegular)?;
    if r % 2 == 0 || r < 3 {
        return Err(FactorError::NotOddRegular);
    }
    validate_spanning_factor(g, &f)?;
    if f.components().iter().any(|c| c.is_cycle()) {
        return Ok(f);
    }
    // f is a perfect matching; drop it and take a 2-factor of the rest.
    let matched: std::collections::HashSet<Edge> = f
        .components()
        .iter()
        .flat_map(|c| c.edges())
        .collect();
    let rest: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !matched.contains(e))
        .map(|e| e.endpoints())
        .collect();
    let g2 = Graph::build(g.n(), &rest).expect("edge subset of a simple graph is simple");
    debug_assert_eq!(g2.degree_profile(), Some(r - 1));
    petersen_two_factor(&g2)
}

/// Spanning {1,2}-factor guaranteed to contain at least one cycle component,
/// for any regular graph with r >= 2.
pub fn factor_with_cycle(g: &Graph) -> Result<Factor, FactorError> {
    let r = g.degree_profile().ok_or(FactorError::NotRegular)?;
    if r % 2 == 0 {
        petersen_two_factor(g)
    } else {
        let f = good_12_factor(g)?;
        ensure_cycle_component(g, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges).unwrap()
    }

    fn k2() -> Graph {
        Graph::build(2, &[(0, 1)]).unwrap()
    }

    fn prism() -> Graph {
        Graph::build(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::build(10, &edges).unwrap()
    }

    // -- double cover --

    /// Connected components of a cover, for structural assertions.
    fn cover_components(c: &BipartiteCover) -> Vec<usize> {
        // vertices 0..n are left copies, n..2n right copies
        let n = c.n();
        let mut comp = vec![usize::MAX; 2 * n];
        let mut next = 0;
        for s in 0..2 * n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(x) = stack.pop() {
                let nbrs: Vec<usize> = if x < n {
                    c.left_neighbors(x).iter().map(|&r| n + r).collect()
                } else {
                    (0..n)
                        .filter(|&l| c.left_neighbors(l).contains(&(x - n)))
                        .collect()
                };
                for y in nbrs {
                    if comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    #[test]
    fn cover_of_k2_is_two_disjoint_edges() {
        let c = bipartite_double_cover(&k2());
        let comp = cover_components(&c);
        assert_eq!(comp.iter().max(), Some(&1));
        assert_eq!(c.left_neighbors(0), &[1]);
    }

    #[test]
    fn cover_of_triangle_is_a_six_cycle() {
        let c = bipartite_double_cover(&cycle(3));
        let comp = cover_components(&c);
        assert!(comp.iter().all(|&x| x == 0));
        assert!((0..3).all(|v| c.left_neighbors(v).len() == 2));
    }

    #[test]
    fn cover_of_c4_splits_into_two_cycles() {
        let comp = cover_components(&bipartite_double_cover(&cycle(4)));
        assert_eq!(comp.iter().max(), Some(&1));
    }

    // -- matching --

    #[test]
    fn matching_on_k2_cover_is_perfect() {
        let c = bipartite_double_cover(&k2());
        assert_eq!(max_bipartite_matching(&c).len(), 2);
    }

    #[test]
    fn matching_on_petersen_cover_is_perfect() {
        let c = bipartite_double_cover(&petersen());
        let m = max_bipartite_matching(&c);
        assert_eq!(m.len(), 10);
        // matched pairs must be cover edges
        for (l, r) in m {
            assert!(petersen().has_edge(l, r));
        }
    }

    #[test]
    fn matching_respects_structure_on_path() {
        // Path 0-1-2: left/right copies; maximum matching of its cover is 2
        // per side at best but the cover of an irregular graph needn't be
        // perfect; just check matching validity.
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let c = bipartite_double_cover(&g);
        let m = max_bipartite_matching(&c);
        let mut rights: Vec<usize> = m.iter().map(|&(_, r)| r).collect();
        rights.sort_unstable();
        rights.dedup();
        assert_eq!(rights.len(), m.len());
    }

    // -- good {1,2}-factor --

    #[test]
    fn c5_factor_is_the_cycle_itself() {
        let f = good_12_factor(&cycle(5)).unwrap();
        assert_eq!(
            f.components(),
            &[FactorComponent::Cycle(vec![0, 1, 2, 3, 4])]
        );
    }

    #[test]
    fn k2_factor_is_the_edge() {
        let f = good_12_factor(&k2()).unwrap();
        assert_eq!(f.components(), &[FactorComponent::SingleEdge(0, 1)]);
    }

    #[test]
    fn good_factor_rejects_irregular() {
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(good_12_factor(&g).unwrap_err(), FactorError::NotRegular);
    }

    #[test]
    fn good_factor_covers_and_validates_on_fixtures() {
        for g in [complete(4), complete(5), prism(), petersen()] {
            let f = good_12_factor(&g).unwrap();
            validate_spanning_factor(&g, &f).unwrap();
        }
    }

    // -- euler --

    #[test]
    fn euler_rejects_odd_degrees() {
        assert_eq!(
            euler_circuit(&complete(4)).unwrap_err(),
            FactorError::OddDegree(0)
        );
    }

    #[test]
    fn euler_on_c4_uses_every_edge_once() {
        let walks = euler_circuit(&cycle(4)).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].len(), 5);
    }

    #[test]
    fn euler_on_k5_uses_all_ten_edges() {
        let g = complete(5);
        let walks = euler_circuit(&g).unwrap();
        assert_eq!(walks.len(), 1);
        let walk = &walks[0];
        assert_eq!(walk.len(), 11);
        let mut seen = std::collections::HashSet::new();
        for w in walk.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
            assert!(seen.insert(Edge::new(w[0], w[1])), "edge reused");
        }
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn euler_handles_disconnected_components() {
        // two triangles
        let g = Graph::build(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let walks = euler_circuit(&g).unwrap();
        assert_eq!(walks.len(), 2);
    }

    // -- petersen 2-factor --

    #[test]
    fn two_factor_of_k5_is_a_five_cycle() {
        let f = petersen_two_factor(&complete(5)).unwrap();
        assert_eq!(f.len(), 1);
        match &f.components()[0] {
            FactorComponent::Cycle(ring) => assert_eq!(ring.len(), 5),
            other => panic!("expected cycle, got {other:?}"),
        }
        validate_spanning_factor(&complete(5), &f).unwrap();
    }

    #[test]
    fn two_factor_rejects_odd_regular() {
        assert_eq!(
            petersen_two_factor(&petersen()).unwrap_err(),
            FactorError::NotEvenRegular
        );
    }

    #[test]
    fn two_factor_of_c4_is_c4() {
        let f = petersen_two_factor(&cycle(4)).unwrap();
        assert_eq!(f.components(), &[FactorComponent::Cycle(vec![0, 1, 2, 3])]);
    }

    // -- ensure_cycle_component --

    #[test]
    fn k4_matching_upgrades_to_four_cycle() {
        let g = complete(4);
        let pm = Factor::new(vec![
            FactorComponent::SingleEdge(0, 1),
            FactorComponent::SingleEdge(2, 3),
        ]);
        let f = ensure_cycle_component(&g, pm).unwrap();
        assert_eq!(f.len(), 1);
        let FactorComponent::Cycle(ring) = &f.components()[0] else {
            panic!("expected cycle");
        };
        assert_eq!(ring.len(), 4);
        // must avoid the removed matching edges
        for e in f.components()[0].edges() {
            let (u, v) = e.endpoints();
            assert!(!matches!((u, v), (0, 1) | (2, 3)));
        }
    }

    #[test]
    fn prism_matching_upgrades_to_two_triangles() {
        let g = prism();
        let pm = Factor::new(vec![
            FactorComponent::SingleEdge(0, 3),
            FactorComponent::SingleEdge(1, 4),
            FactorComponent::SingleEdge(2, 5),
        ]);
        let f = ensure_cycle_component(&g, pm).unwrap();
        assert_eq!(
            f.components(),
            &[
                FactorComponent::Cycle(vec![0, 1, 2]),
                FactorComponent::Cycle(vec![3, 4, 5])
            ]
        );
    }

    #[test]
    fn factor_with_existing_cycle_passes_through() {
        let g = cycle(5);
        let f = good_12_factor(&g).unwrap();
        let f2 = ensure_cycle_component(&g, f.clone()).unwrap_err();
        // C5 is 2-regular: not odd-regular
        assert_eq!(f2, FactorError::NotOddRegular);
        let g = petersen();
        let f = good_12_factor(&g).unwrap();
        let out = ensure_cycle_component(&g, f).unwrap();
        assert!(out.components().iter().any(|c| c.is_cycle()));
        validate_spanning_factor(&g, &out).unwrap();
    }

    #[test]
    fn ensure_cycle_rejects_bad_factor() {
        let g = complete(4);
        let bad = Factor::new(vec![FactorComponent::SingleEdge(0, 1)]);
        assert!(matches!(
            ensure_cycle_component(&g, bad),
            Err(FactorError::BadFactor(_))
        ));
    }

    // -- canonical form --

    #[test]
    fn rings_are_canonical() {
        assert_eq!(canonical_ring(vec![3, 1, 2, 4]), vec![1, 2, 4, 3]);
        assert_eq!(canonical_ring(vec![2, 5, 0, 9]), vec![0, 5, 2, 9]);
        assert_eq!(canonical_ring(vec![0, 2, 1]), vec![0, 1, 2]);
    }

    #[test]
    fn successor_projection_splits_orbits() {
        // 0<->1 transposition, 2->3->4->2 triangle
        let f = Factor::from_successor(&[1, 0, 3, 4, 2]);
        assert_eq!(
            f.components(),
            &[
                FactorComponent::SingleEdge(0, 1),
                FactorComponent::Cycle(vec![2, 3, 4])
            ]
        );
    }
}
