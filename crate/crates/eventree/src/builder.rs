//! Construction of a good even tree: an even tree (all leaf pairs at even
//! distance) whose complement is still covered by a good {1,2}-factor.
//!
//! Starting from a factor with at least one cycle component, there are two
//! routes:
//!
//! * some component is an odd cycle — deleting one of its edges already
//!   yields an even path, and every other component stays in the residual;
//! * otherwise all components are single edges or even cycles, each with a
//!   balanced X/Y bipartition. A fixpoint then grows a set of components
//!   linked by Y-to-X "entry" edges (flipping each new component so it is
//!   entered on its X side) until some edge joins two Y vertices of the
//!   set. Splicing the chains of entry edges leading to that Y-Y edge, with
//!   each component opened up at its exit vertex, produces the tree.
//!
//! The fixpoint cannot stall: while the Y sides of the set are mutually
//! non-adjacent, a counting argument on a regular nonbipartite graph
//! guarantees an edge from those Y vertices to the rest of the graph
//! (`find_escape_edge`). A failed escape search therefore signals a broken
//! precondition or a bug, never a legal input.

use crate::factor::{factor_with_cycle, Factor, FactorComponent};
use crate::graph::{Edge, Graph};
use crate::verify;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuilderError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is bipartite; every spanning tree has an odd leaf pair")]
    Bipartite,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("component is not an odd cycle")]
    NotOddCycle,
    #[error("vertex {0} is not in the component")]
    VertexNotInComponent(usize),
    #[error("escape-edge search failed: {0}")]
    LemmaViolation(String),
    #[error("spliced tree failed verification: {0}")]
    SpliceInvariantViolation(String),
    #[error("factor extraction failed: {0}")]
    Factor(#[from] crate::factor::FactorError),
}

/// Which side of a component bipartition (or tree 2-coloring) a vertex is
/// on. By convention `X` is the side that ends up holding every leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Per-component X/Y assignment over the balanced components of a factor
/// (single edges and even cycles). Component 0's assignment is fixed by
/// canonical order; any other component may be flipped wholesale, which is
/// how the fixpoint orients a component so that it is entered on its X side.
#[derive(Clone, Debug)]
pub struct ComponentBipartition {
    comp_of: Vec<Option<usize>>,
    parity: Vec<u8>,
    flipped: Vec<bool>,
}

impl ComponentBipartition {
    /// Initial assignment: in every balanced component the smallest vertex
    /// sits on side X and sides alternate along the component.
    pub fn new(n: usize, f: &Factor) -> ComponentBipartition {
        let mut comp_of = vec![None; n];
        let mut parity = vec![0u8; n];
        for (ci, c) in f.components().iter().enumerate() {
            for (pos, v) in c.vertex_iter().enumerate() {
                comp_of[v] = Some(ci);
                parity[v] = (pos % 2) as u8;
            }
        }
        ComponentBipartition {
            comp_of,
            parity,
            flipped: vec![false; f.len()],
        }
    }

    pub fn comp_of(&self, v: usize) -> Option<usize> {
        self.comp_of[v]
    }

    /// Side of `v`, or `None` when `v` is not covered by the factor.
    /// Only meaningful for balanced components.
    pub fn side(&self, v: usize) -> Option<Side> {
        let c = self.comp_of[v]?;
        let bit = self.parity[v] ^ (self.flipped[c] as u8);
        Some(if bit == 0 { Side::X } else { Side::Y })
    }

    /// Swap the X and Y sides of component `i`.
    pub fn flip(&mut self, i: usize) {
        self.flipped[i] = !self.flipped[i];
    }
}

/// A Y-to-X edge recording how a component joined the growing set: `from`
/// lies on the Y side of an earlier component (or of the tree, during the
/// spanning phase), `to` on this component's X side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryEdge {
    pub from: usize,
    pub to: usize,
}

/// The growing set of linked components, with one entry edge per member
/// (none for the root). Entry edges form an in-forest, so every member has
/// a unique chain back to a root; splicing reconstructs those chains.
#[derive(Clone, Debug)]
pub struct GoodState {
    in_set: Vec<bool>,
    order: Vec<usize>,
    entry: Vec<Option<EntryEdge>>,
}

impl GoodState {
    pub fn new(num_components: usize, root: usize) -> GoodState {
        let mut state = GoodState::empty(num_components);
        state.in_set[root] = true;
        state.order.push(root);
        state
    }

    /// A state with no members yet: the spanning phase roots every seeded
    /// component at the tree instead of at a distinguished member.
    pub fn empty(num_components: usize) -> GoodState {
        GoodState {
            in_set: vec![false; num_components],
            order: Vec::new(),
            entry: vec![None; num_components],
        }
    }

    pub fn contains(&self, comp: usize) -> bool {
        self.in_set[comp]
    }

    /// Members in the order they were added; element 0 is the root.
    pub fn members(&self) -> &[usize] {
        &self.order
    }

    pub fn entry(&self, comp: usize) -> Option<EntryEdge> {
        self.entry[comp]
    }

    pub(crate) fn add(&mut self, comp: usize, entry: EntryEdge) {
        debug_assert!(!self.in_set[comp]);
        self.in_set[comp] = true;
        self.order.push(comp);
        self.entry[comp] = Some(entry);
    }

    pub(crate) fn entries(&self) -> &[Option<EntryEdge>] {
        &self.entry
    }
}

/// A certified good even tree plus the factor still covering its complement.
#[derive(Clone, Debug)]
pub struct GoodEvenTree {
    /// Tree edges, sorted ascending.
    pub tree_edges: Vec<Edge>,
    /// Tree 2-coloring, `Side::X` being the class holding every leaf;
    /// `None` for vertices off the tree.
    pub colors: Vec<Option<Side>>,
    /// Good {1,2}-factor of the vertices outside the tree.
    pub residual: Factor,
}

/// The factor edge removed when a chain passes through `v`: for a cycle,
/// the ring edge from `v` toward its smaller ring neighbor; for a single
/// edge, nothing (the edge stays).
pub fn e1_edges(v: usize, comp: &FactorComponent) -> Result<Vec<Edge>, BuilderError> {
    match comp {
        FactorComponent::SingleEdge(a, b) => {
            if v == *a || v == *b {
                Ok(Vec::new())
            } else {
                Err(BuilderError::VertexNotInComponent(v))
            }
        }
        FactorComponent::Cycle(ring) => {
            let pos = ring
                .iter()
                .position(|&x| x == v)
                .ok_or(BuilderError::VertexNotInComponent(v))?;
            let (a, b) = comp.ring_neighbors(pos);
            Ok(vec![Edge::new(v, a.min(b))])
        }
    }
}

/// Both factor edges at `v`: the two ring edges for a cycle, the edge
/// itself for a single edge. Removing them detaches `v` from its component.
pub fn e2_edges(v: usize, comp: &FactorComponent) -> Result<Vec<Edge>, BuilderError> {
    match comp {
        FactorComponent::SingleEdge(a, b) => {
            if v == *a || v == *b {
                Ok(vec![Edge::new(*a, *b)])
            } else {
                Err(BuilderError::VertexNotInComponent(v))
            }
        }
        FactorComponent::Cycle(ring) => {
            let pos = ring
                .iter()
                .position(|&x| x == v)
                .ok_or(BuilderError::VertexNotInComponent(v))?;
            let (a, b) = comp.ring_neighbors(pos);
            let mut edges = vec![Edge::new(v, a), Edge::new(v, b)];
            edges.sort();
            Ok(edges)
        }
    }
}

/// Pushes the component's edges minus `e1(v)` — the component "opened" at
/// its exit vertex `v`.
pub(crate) fn open_at_e1(
    comp: &FactorComponent,
    v: usize,
    out: &mut Vec<Edge>,
) -> Result<(), BuilderError> {
    let removed = e1_edges(v, comp)?;
    out.extend(comp.edges().into_iter().filter(|e| !removed.contains(e)));
    Ok(())
}

/// Pushes the component's edges minus `e2(v)` — `v` detached entirely.
pub(crate) fn open_at_e2(
    comp: &FactorComponent,
    v: usize,
    out: &mut Vec<Edge>,
) -> Result<(), BuilderError> {
    let removed = e2_edges(v, comp)?;
    out.extend(comp.edges().into_iter().filter(|e| !removed.contains(e)));
    Ok(())
}

/// Even path from an odd cycle component: the ring minus `e1(x)` where `x`
/// is the ring's smallest vertex. All other components become the residual.
pub fn tree_from_odd_cycle(f: &Factor, component: usize) -> Result<GoodEvenTree, BuilderError> {
    let comp = f
        .components()
        .get(component)
        .ok_or(BuilderError::NotOddCycle)?;
    if !comp.is_odd_cycle() {
        return Err(BuilderError::NotOddCycle);
    }
    let x = comp.min_vertex();
    let removed = e1_edges(x, comp)?;
    let mut tree_edges: Vec<Edge> = comp
        .edges()
        .into_iter()
        .filter(|e| !removed.contains(e))
        .collect();
    tree_edges.sort();
    let residual = Factor::new(
        f.components()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != component)
            .map(|(_, c)| c.clone())
            .collect(),
    );
    let n = f.covered().last().map(|&v| v + 1).unwrap_or(0);
    let colors = crate::spanner::leaf_sides(n, &tree_edges)
        .expect("a cycle minus one edge is an even path");
    Ok(GoodEvenTree {
        tree_edges,
        colors,
        residual,
    })
}

/// First edge from `y_set` to a vertex outside `x_set ∪ y_set`, scanning
/// `y_set` ascending and adjacency ascending.
///
/// Guaranteed to exist whenever `y_set` is independent, `|x_set| <=
/// |y_set|`, the sets are disjoint, and the host graph is regular,
/// connected and does not cover everything with `x_set ∪ y_set` unless an
/// internal Y-Y edge exists. Failure therefore reports a violated
/// precondition or an implementation bug, with debug builds validating the
/// preconditions eagerly.
pub fn find_escape_edge(
    g: &Graph,
    y_set: &[usize],
    x_set: &[usize],
) -> Result<(usize, usize), BuilderError> {
    let mut in_y = vec![false; g.n()];
    let mut in_x = vec![false; g.n()];
    for &y in y_set {
        in_y[y] = true;
    }
    for &x in x_set {
        in_x[x] = true;
    }
    #[cfg(debug_assertions)]
    {
        if x_set.len() > y_set.len() {
            return Err(BuilderError::LemmaViolation(format!(
                "|X|={} exceeds |Y|={}",
                x_set.len(),
                y_set.len()
            )));
        }
        for &y in y_set {
            if in_x[y] {
                return Err(BuilderError::LemmaViolation(format!(
                    "vertex {y} is in both X and Y"
                )));
            }
            if let Some(&w) = g.neighbors(y).iter().find(|&&w| in_y[w]) {
                return Err(BuilderError::LemmaViolation(format!(
                    "Y is not independent: edge ({y},{w})"
                )));
            }
        }
    }
    for &y in y_set {
        for &w in g.neighbors(y) {
            if !in_x[w] && !in_y[w] {
                return Ok((y, w));
            }
        }
    }
    Err(BuilderError::LemmaViolation(format!(
        "no edge leaves Y (|Y|={}, |X|={})",
        y_set.len(),
        x_set.len()
    )))
}

/// Sorted Y-side and X-side vertex lists over the members of `state`.
pub(crate) fn side_sets(
    f: &Factor,
    bip: &ComponentBipartition,
    state: &GoodState,
) -> (Vec<usize>, Vec<usize>) {
    let mut ys = Vec::new();
    let mut xs = Vec::new();
    for &c in state.members() {
        for v in f.components()[c].vertex_iter() {
            match bip.side(v) {
                Some(Side::Y) => ys.push(v),
                Some(Side::X) => xs.push(v),
                None => unreachable!("set member must be balanced"),
            }
        }
    }
    ys.sort_unstable();
    xs.sort_unstable();
    (ys, xs)
}

/// First graph edge joining two Y-side vertices of the member components
/// (chords included), in ascending scan order.
pub(crate) fn find_yy_edge(
    g: &Graph,
    f: &Factor,
    bip: &ComponentBipartition,
    state: &GoodState,
) -> Option<(usize, usize)> {
    let (ys, _) = side_sets(f, bip, state);
    let mut in_y = vec![false; g.n()];
    for &y in &ys {
        in_y[y] = true;
    }
    for &y in &ys {
        for &w in g.neighbors(y) {
            if in_y[w] && w != y {
                return Some((y, w));
            }
        }
    }
    None
}

/// Grows the linked set until two member Y vertices are adjacent, flipping
/// each newly escaped-to component so it is entered on its X side.
/// Returns that Y-Y edge; the state then holds every chain needed to splice.
pub fn grow_good_set(
    g: &Graph,
    f: &Factor,
    bip: &mut ComponentBipartition,
    state: &mut GoodState,
) -> Result<(usize, usize), BuilderError> {
    let mut rounds = 0usize;
    loop {
        if let Some(yy) = find_yy_edge(g, f, bip, state) {
            return Ok(yy);
        }
        rounds += 1;
        assert!(
            rounds <= f.len(),
            "fixpoint exceeded the component count without finding a Y-Y edge"
        );
        let (ys, xs) = side_sets(f, bip, state);
        let (y, v) = find_escape_edge(g, &ys, &xs)?;
        let j = bip
            .comp_of(v)
            .expect("escape target lies in a factor component");
        debug_assert!(!state.contains(j));
        if bip.side(v) == Some(Side::Y) {
            bip.flip(j);
        }
        state.add(j, EntryEdge { from: y, to: v });
    }
}

/// How the two chain endpoints of a Y-Y edge relate in the entry forest.
enum Case2Plan {
    /// `q`'s component lies on `p`'s chain (including `p == q`).
    OnChain { p: usize, yp: usize, yq: usize },
    /// Chains share a prefix up to `lca` and then diverge.
    Branched {
        p: usize,
        yp: usize,
        q: usize,
        yq: usize,
        lca_index_in_q_path: usize,
    },
    /// Chains are rooted independently (spanning phase only).
    Disjoint { p: usize, yp: usize, q: usize, yq: usize },
}

fn root_path(entries: &[Option<EntryEdge>], comp_of: &dyn Fn(usize) -> Option<usize>, mut c: usize) -> Vec<usize> {
    let mut path = vec![c];
    while let Some(e) = entries[c] {
        match comp_of(e.from) {
            Some(parent) => {
                c = parent;
                path.push(c);
            }
            None => break, // rooted at the tree (seed edge)
        }
    }
    path.reverse();
    path
}

fn classify_case2(
    entries: &[Option<EntryEdge>],
    comp_of: &dyn Fn(usize) -> Option<usize>,
    yy: (usize, usize),
) -> (Case2Plan, Vec<usize>, Vec<usize>) {
    let (ya, yb) = yy;
    let a = comp_of(ya).expect("Y-Y endpoint lies in a component");
    let b = comp_of(yb).expect("Y-Y endpoint lies in a component");
    let path_a = root_path(entries, comp_of, a);
    let path_b = root_path(entries, comp_of, b);
    if path_a.contains(&b) {
        // b is an ancestor of a (or equal): deeper endpoint plays p.
        let plan = Case2Plan::OnChain { p: a, yp: ya, yq: yb };
        return (plan, path_a, path_b);
    }
    if path_b.contains(&a) {
        let plan = Case2Plan::OnChain { p: b, yp: yb, yq: ya };
        return (plan, path_b, path_a);
    }
    let shared = path_a
        .iter()
        .zip(path_b.iter())
        .take_while(|(x, y)| x == y)
        .count();
    if shared == 0 {
        let plan = Case2Plan::Disjoint { p: a, yp: ya, q: b, yq: yb };
        (plan, path_a, path_b)
    } else {
        let plan = Case2Plan::Branched {
            p: a,
            yp: ya,
            q: b,
            yq: yb,
            lca_index_in_q_path: shared - 1,
        };
        (plan, path_a, path_b)
    }
}

/// Pushes a chain's edges: every member's entry edge (when recorded), and
/// every member but the last opened at its exit vertex. The caller decides
/// how to open the final component.
pub(crate) fn chain_edges(
    f: &Factor,
    entries: &[Option<EntryEdge>],
    path: &[usize],
    out: &mut Vec<Edge>,
) -> Result<(), BuilderError> {
    for (h, &c) in path.iter().enumerate() {
        if let Some(e) = entries[c] {
            out.push(Edge::new(e.from, e.to));
        }
        if h + 1 < path.len() {
            let exit = entries[path[h + 1]]
                .expect("chain successor must record its entry edge")
                .from;
            open_at_e1(&f.components()[c], exit, out)?;
        }
    }
    Ok(())
}

/// How a Y-Y splice related its two chains; reported so augmentation steps
/// can say which construction they used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SpliceShape {
    OnChain,
    Branched,
    Disjoint,
}

/// Assembles Y-Y splice edges for either construction phase. `entries` is
/// the per-component entry map (seed edges included during the spanning
/// phase), `comp_of` maps vertices to live component ids. Returns the new
/// edges, the component ids consumed into the tree, and the chain shape.
pub(crate) fn assemble_case2(
    f: &Factor,
    entries: &[Option<EntryEdge>],
    comp_of: &dyn Fn(usize) -> Option<usize>,
    yy: (usize, usize),
) -> Result<(Vec<Edge>, Vec<usize>, SpliceShape), BuilderError> {
    let (plan, path_p, path_q) = classify_case2(entries, comp_of, yy);
    let mut edges = Vec::new();
    let mut consumed;
    let shape;
    match plan {
        Case2Plan::OnChain { p, yp, yq } => {
            chain_edges(f, entries, &path_p, &mut edges)?;
            open_at_e2(&f.components()[p], yp, &mut edges)?;
            edges.push(Edge::new(yp, yq));
            consumed = path_p;
            shape = SpliceShape::OnChain;
        }
        Case2Plan::Branched {
            p,
            yp,
            q,
            yq,
            lca_index_in_q_path,
        } => {
            chain_edges(f, entries, &path_p, &mut edges)?;
            open_at_e2(&f.components()[p], yp, &mut edges)?;
            edges.push(Edge::new(yp, yq));
            let tail = &path_q[lca_index_in_q_path + 1..];
            chain_edges(f, entries, tail, &mut edges)?;
            open_at_e1(&f.components()[q], yq, &mut edges)?;
            consumed = path_p;
            consumed.extend_from_slice(tail);
            shape = SpliceShape::Branched;
        }
        Case2Plan::Disjoint { p, yp, q, yq } => {
            chain_edges(f, entries, &path_p, &mut edges)?;
            open_at_e2(&f.components()[p], yp, &mut edges)?;
            edges.push(Edge::new(yp, yq));
            chain_edges(f, entries, &path_q, &mut edges)?;
            open_at_e1(&f.components()[q], yq, &mut edges)?;
            consumed = path_p;
            consumed.extend_from_slice(&path_q);
            shape = SpliceShape::Disjoint;
        }
    }
    Ok((edges, consumed, shape))
}

fn finish_tree(g: &Graph, mut edges: Vec<Edge>, residual: Factor) -> Result<GoodEvenTree, BuilderError> {
    let count = edges.len();
    edges.sort();
    edges.dedup();
    if edges.len() != count {
        return Err(BuilderError::SpliceInvariantViolation(
            "splice produced a duplicate edge".into(),
        ));
    }
    let cert = verify::verify_good_even_tree(g, &edges, &residual);
    if !cert.is_pass() {
        let fail = cert.first_failure().expect("failed certificate has a failing check");
        return Err(BuilderError::SpliceInvariantViolation(format!(
            "{}: {}",
            fail.name,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    let colors =
        crate::spanner::leaf_sides(g.n(), &edges).expect("certified even tree has a leaf side");
    Ok(GoodEvenTree {
        tree_edges: edges,
        colors,
        residual,
    })
}

/// Splices the chains leading to a Y-Y edge into a good even tree.
/// The result is re-verified; failure is reported, never returned silently.
pub fn splice_case2(
    g: &Graph,
    f: &Factor,
    bip: &ComponentBipartition,
    state: &GoodState,
    yy: (usize, usize),
) -> Result<GoodEvenTree, BuilderError> {
    let comp_of = |v: usize| bip.comp_of(v);
    let (edges, consumed, _) = assemble_case2(f, state.entries(), &comp_of, yy)?;
    let residual = Factor::new(
        f.components()
            .iter()
            .enumerate()
            .filter(|(i, _)| !consumed.contains(i))
            .map(|(_, c)| c.clone())
            .collect(),
    );
    finish_tree(g, edges, residual)
}

/// Builds a certified good even tree of a connected, nonbipartite, regular
/// graph: factor extraction, then either the odd-cycle shortcut or the
/// fixpoint-and-splice route.
pub fn build_good_even_tree(g: &Graph) -> Result<GoodEvenTree, BuilderError> {
    let _r = g.degree_profile().ok_or(BuilderError::NotRegular)?;
    if !g.is_connected() {
        return Err(BuilderError::Disconnected);
    }
    let coloring = g.two_color().map_err(|_| BuilderError::Disconnected)?;
    if coloring.is_bipartite() {
        return Err(BuilderError::Bipartite);
    }
    let f = factor_with_cycle(g)?;
    good_even_tree_from_factor(g, f)
}

/// The construction step of [`build_good_even_tree`], reusing an already
/// extracted factor (which must contain a cycle component).
pub fn good_even_tree_from_factor(g: &Graph, f: Factor) -> Result<GoodEvenTree, BuilderError> {
    if let Some(i) = f.components().iter().position(|c| c.is_odd_cycle()) {
        let t = tree_from_odd_cycle(&f, i)?;
        return finish_tree(g, t.tree_edges, t.residual);
    }
    let root = f
        .components()
        .iter()
        .position(|c| c.is_cycle())
        .expect("factor must contain a cycle component");
    let mut bip = ComponentBipartition::new(g.n(), &f);
    let mut state = GoodState::new(f.len(), root);
    let yy = grow_good_set(g, &f, &mut bip, &mut state)?;
    splice_case2(g, &f, &bip, &state, yy)
}
