//! Augmentation of a good even tree to a spanning even tree.
//!
//! Each round pulls at least one residual factor component into the tree
//! while keeping the tree even and the rest of the factor intact, so the
//! round count is bounded by the component count. Writing `X` for the
//! tree's leaf side and `Y` for the other class:
//!
//! * a component touching `X` hangs off the tree directly, as does an odd
//!   cycle touching `Y` — the ring is opened so every new leaf lands at
//!   even distance from the leaf class (`absorb_direct`);
//! * otherwise every tree contact joins `Y` to an even cycle or single
//!   edge. Those components are seeded into a linked set that grows exactly
//!   like the tree construction fixpoint, except that the escape edge may
//!   also land back on the tree's `Y` side (reattach the chain end as a
//!   pendant) or on an odd cycle (append it as an opened tail). A Y-Y edge
//!   inside the set splices chains just as the tree construction does,
//!   except the chains may hang from two different seed vertices.

use crate::builder::{
    assemble_case2, chain_edges, find_escape_edge, find_yy_edge, open_at_e1, open_at_e2,
    side_sets, BuilderError, ComponentBipartition, EntryEdge, GoodEvenTree, GoodState, Side,
    SpliceShape,
};
use crate::factor::{Factor, FactorComponent};
use crate::graph::{Edge, Graph};
use crate::verify;
use serde::Serialize;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpannerError {
    #[error("edge set is not an even tree")]
    NotEvenTree,
    #[error(transparent)]
    Builder(#[from] BuilderError),
    #[error("augmentation invariant failed: {0}")]
    AugmentationInvariant(String),
}

/// What a single augmentation round did.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    /// A component hung off the tree's leaf side.
    LeafSideAbsorb,
    /// An odd cycle hung off the tree's non-leaf side.
    NonLeafOddCycleAbsorb,
    /// A chain of components reattached to the tree's non-leaf side, its
    /// end vertex rehung as a pendant leaf.
    ReturnEdgeSplice,
    /// A chain of components extended by an opened odd cycle.
    OddCycleTailSplice,
    /// A Y-Y edge inside one chain (chord or edge to an ancestor).
    SameChainSplice,
    /// A Y-Y edge between two branches sharing part of their chain.
    BranchedChainSplice,
    /// A Y-Y edge between chains hanging from different seed vertices.
    DisjointChainSplice,
}

/// One augmentation round: which residual components were consumed (indices
/// into the factor as it stood before the round), the edges added to the
/// tree, and the factor edges dropped while opening rings.
#[derive(Clone, Debug, Serialize)]
pub struct AugmentationStep {
    pub kind: StepKind,
    pub components: Vec<usize>,
    pub added_edges: Vec<Edge>,
    pub dropped_edges: Vec<Edge>,
}

/// Result of augmentation: the spanning even tree and the per-round log.
#[derive(Clone, Debug)]
pub struct TreeState {
    /// Spanning tree edges, sorted ascending.
    pub tree_edges: Vec<Edge>,
    pub steps: Vec<AugmentationStep>,
}

/// Per-vertex side of an even tree: `Side::X` for the class holding every
/// leaf, `Side::Y` opposite, `None` off the tree. Fails unless the edges
/// form a single tree whose leaves share one color class.
pub fn leaf_sides(n: usize, tree_edges: &[Edge]) -> Result<Vec<Option<Side>>, SpannerError> {
    if tree_edges.is_empty() {
        return Err(SpannerError::NotEvenTree);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in tree_edges {
        let (u, v) = e.endpoints();
        if u >= n || v >= n {
            return Err(SpannerError::NotEvenTree);
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let root = tree_edges[0].endpoints().0;
    let mut color: Vec<Option<u8>> = vec![None; n];
    color[root] = Some(0);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut reached = 1usize;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if color[w].is_none() {
                color[w] = Some(1 - color[v].unwrap());
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    let incident = adj.iter().filter(|a| !a.is_empty()).count();
    // A connected graph on `incident` vertices with that many edges and no
    // uncovered incident vertex is a tree exactly when edges = vertices - 1.
    if reached != incident || tree_edges.len() != incident - 1 {
        return Err(SpannerError::NotEvenTree);
    }
    let mut leaf_color = None;
    for v in 0..n {
        if adj[v].len() == 1 {
            match leaf_color {
                None => leaf_color = color[v],
                Some(c) => {
                    if color[v] != Some(c) {
                        return Err(SpannerError::NotEvenTree);
                    }
                }
            }
        }
    }
    let leaf_color = leaf_color.expect("a finite tree with an edge has a leaf");
    Ok(color
        .into_iter()
        .map(|c| {
            c.map(|c| {
                if c == leaf_color {
                    Side::X
                } else {
                    Side::Y
                }
            })
        })
        .collect())
}

/// Everything one round decides before the tree is touched.
#[derive(Debug)]
pub(crate) struct Delta {
    kind: StepKind,
    consumed: Vec<usize>,
    added: Vec<Edge>,
    dropped: Vec<Edge>,
}

fn sorted_vertices(comp: &FactorComponent) -> Vec<usize> {
    let mut vs: Vec<usize> = comp.vertex_iter().collect();
    vs.sort_unstable();
    vs
}

/// The ring edge to drop when an odd cycle is hung from the leaf side at
/// contact vertex `u`: the edge from `u`'s smaller ring neighbor to that
/// neighbor's far side, leaving both path ends at odd ring distance from
/// `u`.
fn odd_leaf_side_removal(comp: &FactorComponent, u: usize) -> Edge {
    let FactorComponent::Cycle(ring) = comp else {
        unreachable!("only cycles are opened this way");
    };
    let pos = ring.iter().position(|&x| x == u).expect("contact in ring");
    let (a, b) = comp.ring_neighbors(pos);
    let v1 = a.min(b);
    let pos1 = ring.iter().position(|&x| x == v1).expect("neighbor in ring");
    let (c, d) = comp.ring_neighbors(pos1);
    let w = if c == u { d } else { c };
    Edge::new(v1, w)
}

fn ring_minus(comp: &FactorComponent, removed: &[Edge], out: &mut Vec<Edge>) {
    out.extend(comp.edges().into_iter().filter(|e| !removed.contains(e)));
}

/// Scans residual components in order for a contact the tree can absorb in
/// one stroke, returning the first found: leaf-side contacts take any
/// component, non-leaf contacts only odd cycles.
pub(crate) fn absorb_direct(
    g: &Graph,
    sides: &[Option<Side>],
    f: &Factor,
) -> Option<Delta> {
    for (ci, comp) in f.components().iter().enumerate() {
        for u in sorted_vertices(comp) {
            for &t in g.neighbors(u) {
                let Some(side) = sides[t] else { continue };
                match (side, comp) {
                    (Side::X, FactorComponent::SingleEdge(..)) => {
                        let mut added = vec![Edge::new(t, u)];
                        ring_minus(comp, &[], &mut added);
                        return Some(Delta {
                            kind: StepKind::LeafSideAbsorb,
                            consumed: vec![ci],
                            added,
                            dropped: Vec::new(),
                        });
                    }
                    (Side::X, FactorComponent::Cycle(_)) => {
                        let removed = if comp.is_odd_cycle() {
                            vec![odd_leaf_side_removal(comp, u)]
                        } else {
                            crate::builder::e1_edges(u, comp).expect("contact in component")
                        };
                        let mut added = vec![Edge::new(t, u)];
                        ring_minus(comp, &removed, &mut added);
                        return Some(Delta {
                            kind: StepKind::LeafSideAbsorb,
                            consumed: vec![ci],
                            added,
                            dropped: removed,
                        });
                    }
                    (Side::Y, FactorComponent::Cycle(_)) if comp.is_odd_cycle() => {
                        let removed =
                            crate::builder::e1_edges(u, comp).expect("contact in component");
                        let mut added = vec![Edge::new(t, u)];
                        ring_minus(comp, &removed, &mut added);
                        return Some(Delta {
                            kind: StepKind::NonLeafOddCycleAbsorb,
                            consumed: vec![ci],
                            added,
                            dropped: removed,
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    None
}

/// How the additive fixpoint ended.
#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Growth {
    /// Edge between two Y vertices of the set.
    YYEdge(usize, usize),
    /// Edge from a set Y vertex back to a non-leaf tree vertex.
    ReturnEdge { y: usize, t: usize },
    /// Edge from a set Y vertex into an odd cycle outside the set.
    OddCycleTail { y: usize, v: usize, comp: usize },
}

/// Seeds every balanced component adjacent to the tree's non-leaf side,
/// each entered on its X side, then grows the set until it can splice:
/// by an internal Y-Y edge, a return edge to the tree, or an odd cycle.
pub(crate) fn grow_additive_set(
    g: &Graph,
    sides: &[Option<Side>],
    f: &Factor,
) -> Result<(GoodState, ComponentBipartition, Growth), SpannerError> {
    let mut bip = ComponentBipartition::new(g.n(), f);
    let mut state = GoodState::empty(f.len());
    for (ci, comp) in f.components().iter().enumerate() {
        if comp.is_odd_cycle() {
            continue;
        }
        'seed: for u in sorted_vertices(comp) {
            for &t in g.neighbors(u) {
                if sides[t] == Some(Side::Y) {
                    if bip.side(u) == Some(Side::Y) {
                        bip.flip(ci);
                    }
                    state.add(ci, EntryEdge { from: t, to: u });
                    break 'seed;
                }
            }
        }
    }
    if state.members().is_empty() {
        return Err(SpannerError::AugmentationInvariant(
            "no residual component touches the tree".into(),
        ));
    }
    let mut rounds = 0usize;
    loop {
        if let Some((a, b)) = find_yy_edge(g, f, &bip, &state) {
            return Ok((state, bip, Growth::YYEdge(a, b)));
        }
        rounds += 1;
        if rounds > f.len() {
            return Err(SpannerError::AugmentationInvariant(
                "additive fixpoint exceeded the component count".into(),
            ));
        }
        let (ys, xs) = side_sets(f, &bip, &state);
        let (y, w) = find_escape_edge(g, &ys, &xs)?;
        match sides[w] {
            Some(Side::Y) => return Ok((state, bip, Growth::ReturnEdge { y, t: w })),
            Some(Side::X) => {
                return Err(SpannerError::AugmentationInvariant(format!(
                    "leaf-side contact ({y},{w}) survived the absorb scan"
                )))
            }
            None => {
                let j = bip
                    .comp_of(w)
                    .expect("off-tree vertex is covered by the residual factor");
                let comp = &f.components()[j];
                if comp.is_odd_cycle() {
                    return Ok((state, bip, Growth::OddCycleTail { y, v: w, comp: j }));
                }
                if bip.side(w) == Some(Side::Y) {
                    bip.flip(j);
                }
                state.add(j, EntryEdge { from: y, to: w });
            }
        }
    }
}

/// Turns the fixpoint outcome into tree edges: the chain to the decisive
/// vertex plus the construction matching how the fixpoint ended.
pub(crate) fn splice_to_tree(
    f: &Factor,
    state: &GoodState,
    bip: &ComponentBipartition,
    growth: Growth,
) -> Result<Delta, SpannerError> {
    let comp_of = |v: usize| bip.comp_of(v);
    let (kind, added, consumed) = match growth {
        Growth::YYEdge(a, b) => {
            let (edges, consumed, shape) = assemble_case2(f, state.entries(), &comp_of, (a, b))?;
            let kind = match shape {
                SpliceShape::OnChain => StepKind::SameChainSplice,
                SpliceShape::Branched => StepKind::BranchedChainSplice,
                SpliceShape::Disjoint => StepKind::DisjointChainSplice,
            };
            (kind, edges, consumed)
        }
        Growth::ReturnEdge { y, t } => {
            let p = bip.comp_of(y).expect("chain end lies in a component");
            let path = chain_to(state, &comp_of, p);
            let mut edges = Vec::new();
            chain_edges(f, state.entries(), &path, &mut edges)?;
            open_at_e2(&f.components()[p], y, &mut edges)?;
            edges.push(Edge::new(y, t));
            (StepKind::ReturnEdgeSplice, edges, path)
        }
        Growth::OddCycleTail { y, v, comp } => {
            let p = bip.comp_of(y).expect("chain end lies in a component");
            let mut path = chain_to(state, &comp_of, p);
            let mut edges = Vec::new();
            chain_edges(f, state.entries(), &path, &mut edges)?;
            open_at_e1(&f.components()[p], y, &mut edges)?;
            edges.push(Edge::new(y, v));
            open_at_e1(&f.components()[comp], v, &mut edges)?;
            path.push(comp);
            (StepKind::OddCycleTailSplice, edges, path)
        }
    };
    let mut dropped = Vec::new();
    for &ci in &consumed {
        dropped.extend(
            f.components()[ci]
                .edges()
                .into_iter()
                .filter(|e| !added.contains(e)),
        );
    }
    Ok(Delta {
        kind,
        consumed,
        added,
        dropped,
    })
}

fn chain_to(
    state: &GoodState,
    comp_of: &dyn Fn(usize) -> Option<usize>,
    mut c: usize,
) -> Vec<usize> {
    let mut path = vec![c];
    while let Some(e) = state.entry(c) {
        match comp_of(e.from) {
            Some(parent) => {
                c = parent;
                path.push(c);
            }
            None => break,
        }
    }
    path.reverse();
    path
}

/// Grows a good even tree to a spanning even tree, absorbing at least one
/// residual component per round. With `verify_each_step` every intermediate
/// tree is re-certified (the final tree is always the caller's to verify).
pub fn extend_to_spanning(
    g: &Graph,
    start: GoodEvenTree,
    verify_each_step: bool,
) -> Result<TreeState, SpannerError> {
    let mut tree_edges = start.tree_edges;
    let mut residual = start.residual;
    let mut steps = Vec::new();
    let mut seen: HashSet<Edge> = tree_edges.iter().copied().collect();
    let bound = residual.len();
    for _round in 0..bound {
        if residual.is_empty() {
            break;
        }
        let sides = leaf_sides(g.n(), &tree_edges)?;
        let delta = match absorb_direct(g, &sides, &residual) {
            Some(d) => d,
            None => {
                let (state, bip, growth) = grow_additive_set(g, &sides, &residual)?;
                splice_to_tree(&residual, &state, &bip, growth)?
            }
        };
        if delta.consumed.is_empty() {
            return Err(SpannerError::AugmentationInvariant(
                "round consumed no component".into(),
            ));
        }
        for &e in &delta.added {
            if !seen.insert(e) {
                return Err(SpannerError::AugmentationInvariant(format!(
                    "edge {e} added twice"
                )));
            }
        }
        tree_edges.extend(delta.added.iter().copied());
        residual = Factor::new(
            residual
                .components()
                .iter()
                .enumerate()
                .filter(|(i, _)| !delta.consumed.contains(i))
                .map(|(_, c)| c.clone())
                .collect(),
        );
        let mut step = AugmentationStep {
            kind: delta.kind,
            components: delta.consumed,
            added_edges: delta.added,
            dropped_edges: delta.dropped,
        };
        step.components.sort_unstable();
        step.added_edges.sort();
        step.dropped_edges.sort();
        steps.push(step);
        if verify_each_step {
            let cert = verify::verify_good_even_tree(g, &sorted(&tree_edges), &residual);
            if !cert.is_pass() {
                let fail = cert.first_failure().expect("failed certificate");
                return Err(SpannerError::AugmentationInvariant(format!(
                    "after round {}: {}: {}",
                    steps.len(),
                    fail.name,
                    fail.witness.clone().unwrap_or_default()
                )));
            }
        }
    }
    if !residual.is_empty() {
        return Err(SpannerError::AugmentationInvariant(
            "augmentation halted with residual components left".into(),
        ));
    }
    let tree_edges = sorted(&tree_edges);
    Ok(TreeState { tree_edges, steps })
}

fn sorted(edges: &[Edge]) -> Vec<Edge> {
    let mut v = edges.to_vec();
    v.sort();
    v
}
