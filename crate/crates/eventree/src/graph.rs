//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Everything downstream (factor extraction, tree surgery, verification)
//! assumes simple graphs: no loops, no parallel edges. The constructor
//! rejects offending input instead of deduplicating silently, so a caller
//! that feeds us a multigraph finds out immediately.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An undirected edge, stored with `u < v` so edges compare and hash
/// independently of the order the endpoints were supplied in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalized edge; panics on a loop (loops are rejected at graph
    /// construction, so an `Edge` loop is always a programming error).
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "loop edge ({a},{a}) cannot be represented");
        Edge {
            u: a.min(b),
            v: a.max(b),
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else if x == self.v {
            self.u
        } else {
            panic!("vertex {x} is not an endpoint of ({},{})", self.u, self.v)
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl std::fmt::Debug for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("parallel edge ({0},{1})")]
    ParallelEdge(usize, usize),
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Immutable simple graph with sorted adjacency lists.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, parallel edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            list.push(Edge::new(a, b));
        }
        list.sort();
        for w in list.windows(2) {
            if w[0] == w[1] {
                let (u, v) = w[0].endpoints();
                return Err(GraphError::ParallelEdge(u, v));
            }
        }
        for e in &list {
            let (u, v) = e.endpoints();
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted ascending by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    /// `Some(r)` iff every vertex has degree exactly `r`.
    pub fn degree_profile(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let r = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == r) {
            Some(r)
        } else {
            None
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Proper 2-coloring attempt by BFS from vertex 0.
    ///
    /// On bipartite input the coloring is proper and carries no witness.
    /// Otherwise `odd_walk` holds a closed walk of odd length certifying
    /// nonbipartiteness. Requires a connected graph.
    pub fn two_color(&self) -> Result<TwoColoring, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let mut color = vec![0u8; self.n];
        if self.n == 0 {
            return Ok(TwoColoring {
                color,
                odd_walk: None,
            });
        }
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = std::collections::VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    color[w] = 1 - color[v];
                    parent[w] = v;
                    queue.push_back(w);
                } else if color[w] == color[v] && w != parent[v] {
                    // Same-color edge: stitch root->v, edge vw, w->root into
                    // a closed odd walk.
                    let path_to_root = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let mut walk: Vec<usize> = path_to_root(v);
                    walk.reverse(); // root .. v
                    walk.push(w);
                    walk.extend(path_to_root(w).into_iter().skip(1)); // w .. root
                    return Ok(TwoColoring {
                        color,
                        odd_walk: Some(walk),
                    });
                }
            }
        }
        Ok(TwoColoring {
            color,
            odd_walk: None,
        })
    }

    /// Bridges (cut edges) via iterative lowlink DFS, sorted ascending.
    pub fn bridges(&self) -> Vec<Edge> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        // Stack frames: (vertex, parent edge endpoint, adjacency cursor).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adj[v].len() {
                    let w = self.adj[v][*cursor];
                    *cursor += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else if w != pe {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push(Edge::new(p, v));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Result of a 2-coloring attempt.
#[derive(Clone, Debug)]
pub struct TwoColoring {
    /// Color (0/1) per vertex. Proper iff `odd_walk` is `None`.
    pub color: Vec<u8>,
    /// Closed walk `v0, v1, .., vk = v0` traversing an odd number of edges,
    /// present exactly when the graph has an odd cycle.
    pub odd_walk: Option<Vec<usize>>,
}

impl TwoColoring {
    pub fn is_bipartite(&self) -> bool {
        self.odd_walk.is_none()
    }
}
