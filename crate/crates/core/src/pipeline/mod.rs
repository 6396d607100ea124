//! Incompressibility testing of closed surfaces in knot complements, and the largeness test built
//! on it.

mod incompressible;
mod largeness;

pub use incompressible::{
    test_incompressible, test_incompressible_with, Compression, CrushStep, IncompressibilityResult,
    IncompressibilityVerdict,
};
pub use largeness::{
    decide_largeness, decide_largeness_with, CandidateReport, LargenessReport, Timings, Verdict,
    Witness,
};

use crate::error::{Error, Result};
use crate::triangulation::{LinkKind, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Seeds the randomised simplification.
    pub seed: u64,
    /// Run everything sequentially, in the order the algorithms are stated.
    pub deterministic: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: 1,
            deterministic: false,
        }
    }
}

/// Checks for exactly one ideal vertex, with torus link, and no real boundary.
pub fn check_knot_complement(tri: &Triangulation) -> Result<usize> {
    let sk = tri.skeleton();
    if sk.vertices.iter().any(|v| v.link == LinkKind::Invalid) || sk.edges.iter().any(|e| !e.valid)
    {
        return Err(Error::NotManifold("invalid vertex or edge".into()));
    }
    let ideal: Vec<usize> = (0..sk.vertices.len())
        .filter(|&v| sk.vertices[v].ideal())
        .collect();
    if ideal.len() != 1 || !sk.boundary.is_empty() {
        return Err(Error::Cusps(format!(
            "{} ideal vertices, {} boundary components",
            ideal.len(),
            sk.boundary.len()
        )));
    }
    match sk.vertices[ideal[0]].link {
        LinkKind::Closed { genus: 1 } => Ok(ideal[0]),
        _ => Err(Error::NotTorus),
    }
}
