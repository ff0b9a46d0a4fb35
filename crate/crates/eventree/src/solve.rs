//! End-to-end pipeline: gate the input, extract a factor with a cycle,
//! build a good even tree, grow it to spanning, and certify the result.

use crate::builder::{good_even_tree_from_factor, BuilderError};
use crate::factor::{factor_with_cycle, FactorCensus, FactorError};
use crate::graph::{Edge, Graph};
use crate::spanner::{extend_to_spanning, AugmentationStep, SpannerError};
use crate::verify::{self, Certificate};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is bipartite; its spanning trees always have leaves in both classes")]
    Bipartite,
    #[error("factor extraction failed: {0}")]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Construction(#[from] BuilderError),
    #[error(transparent)]
    Augmentation(#[from] SpannerError),
    #[error("final verification failed: {0}")]
    VerificationFailed(String),
}

/// Solver knobs.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Also certify the factor up front and every intermediate tree, not
    /// just the final result.
    pub verify_all: bool,
}

/// A solved instance: the certified spanning even tree and how it was won.
#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    /// Common degree of the input graph.
    pub r: usize,
    /// Spanning even tree edges, sorted ascending.
    pub tree_edges: Vec<Edge>,
    /// Component census of the extracted factor.
    pub factor_census: FactorCensus,
    /// Edge count of the initial (pre-augmentation) tree.
    pub initial_tree_edges: usize,
    /// One record per augmentation round.
    pub steps: Vec<AugmentationStep>,
    /// Certificate of the final tree, all checks passing.
    pub certificate: Certificate,
}

/// Builds a certified spanning even tree of a connected nonbipartite
/// regular graph. Rejections are ordered: regularity, connectivity,
/// bipartiteness.
pub fn solve(g: &Graph, opts: &SolveOptions) -> Result<Solution, SolveError> {
    let r = g.degree_profile().ok_or(SolveError::NotRegular)?;
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if g.two_color().expect("connected graph").is_bipartite() {
        return Err(SolveError::Bipartite);
    }
    let f = factor_with_cycle(g)?;
    let factor_census = f.census();
    if opts.verify_all {
        let everything: Vec<usize> = (0..g.n()).collect();
        let cert = verify::verify_good_factor(g, &everything, &f);
        if !cert.is_pass() {
            let fail = cert.first_failure().expect("failing check");
            return Err(SolveError::VerificationFailed(format!(
                "extracted factor: {}: {}",
                fail.name,
                fail.witness.clone().unwrap_or_default()
            )));
        }
    }
    let start = good_even_tree_from_factor(g, f)?;
    let initial_tree_edges = start.tree_edges.len();
    let spanned = extend_to_spanning(g, start, opts.verify_all)?;
    let certificate = verify::verify_spanning_even_tree(g, &spanned.tree_edges);
    if !certificate.is_pass() {
        let fail = certificate.first_failure().expect("failing check");
        return Err(SolveError::VerificationFailed(format!(
            "{}: {}",
            fail.name,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    Ok(Solution {
        r,
        tree_edges: spanned.tree_edges,
        factor_census,
        initial_tree_edges,
        steps: spanned.steps,
        certificate,
    })
}
