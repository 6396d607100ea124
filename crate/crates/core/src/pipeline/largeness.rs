use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_knot_complement, test_incompressible_with, IncompressibilityResult,
    IncompressibilityVerdict, PipelineOptions,
};
use crate::coords::QVector;
use crate::enumerate::{enumerate_admissible_rays, ConeSpec};
use crate::error::{Error, Result};
use crate::surface::{double, reconstruct_from_q, NormalSurface, SurfaceClass};
use crate::triangulation::Triangulation;

/// The closed surface realising one extremal ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub ray_index: usize,
    pub ray: Vec<i64>,
    /// The primitive vector gave a one-sided surface, so its double is used.
    pub doubled: bool,
    pub surface: SurfaceClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    Large {
        witness: Witness,
    },
    Small,
    /// Only tori were found incompressible; deciding whether they are boundary parallel is not
    /// attempted.
    InconclusiveTorus {
        tori: Vec<Witness>,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Large { .. } => "large",
            Verdict::Small => "small",
            Verdict::InconclusiveTorus { .. } => "inconclusive-torus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub witness: Witness,
    /// Absent for spheres, and for candidates after an earlier large witness.
    pub result: Option<IncompressibilityResult>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub enumeration: f64,
    pub incompressibility: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LargenessReport {
    pub verdict: Verdict,
    pub rays: usize,
    pub candidates: Vec<CandidateReport>,
    pub timings: Timings,
    pub seed: u64,
}

pub fn decide_largeness(ideal_tri: &Triangulation) -> Result<LargenessReport> {
    decide_largeness_with(ideal_tri, &PipelineOptions::default())
}

/// Tests every closed surface on an extremal ray of the closed-surface quad cone for
/// incompressibility. The knot must be non-trivial; this is not checked.
pub fn decide_largeness_with(
    ideal_tri: &Triangulation,
    options: &PipelineOptions,
) -> Result<LargenessReport> {
    check_knot_complement(ideal_tri)?;
    let start = Instant::now();
    let rays = enumerate_admissible_rays(&ConeSpec::q0(ideal_tri)?);
    let enumeration = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let surfaces: Vec<(Witness, NormalSurface)> = rays
        .iter()
        .enumerate()
        .map(|(k, r)| realize(ideal_tri, k, &r.0))
        .collect::<Result<_>>()?;
    let first_large = AtomicUsize::new(usize::MAX);
    let run = |k: usize| -> Result<Option<IncompressibilityResult>> {
        let (w, s) = &surfaces[k];
        if w.surface.euler >= 2 || k > first_large.load(Ordering::SeqCst) {
            return Ok(None);
        }
        let r = test_incompressible_with(ideal_tri, s, options)?;
        if r.verdict == IncompressibilityVerdict::Incompressible && w.surface.genus >= 2 {
            first_large.fetch_min(k, Ordering::SeqCst);
        }
        Ok(Some(r))
    };
    let results: Vec<Option<IncompressibilityResult>> = if options.deterministic {
        (0..surfaces.len()).map(run).collect::<Result<_>>()?
    } else {
        (0..surfaces.len())
            .into_par_iter()
            .map(run)
            .collect::<Result<_>>()?
    };
    let cutoff = first_large.into_inner();
    let candidates: Vec<CandidateReport> = surfaces
        .into_iter()
        .zip(results)
        .enumerate()
        .map(|(k, ((witness, _), result))| CandidateReport {
            witness,
            result: result.filter(|_| k <= cutoff),
        })
        .collect();
    let incompressible = |c: &&CandidateReport| {
        c.result
            .as_ref()
            .is_some_and(|r| r.verdict == IncompressibilityVerdict::Incompressible)
    };
    let verdict = if let Some(c) = candidates
        .iter()
        .filter(incompressible)
        .find(|c| c.witness.surface.genus >= 2)
    {
        Verdict::Large {
            witness: c.witness.clone(),
        }
    } else {
        let tori: Vec<Witness> = candidates
            .iter()
            .filter(incompressible)
            .map(|c| c.witness.clone())
            .collect();
        if tori.is_empty() {
            Verdict::Small
        } else {
            Verdict::InconclusiveTorus { tori }
        }
    };
    Ok(LargenessReport {
        verdict,
        rays: rays.len(),
        candidates,
        timings: Timings {
            enumeration,
            incompressibility: start.elapsed().as_secs_f64(),
        },
        seed: options.seed,
    })
}

/// The connected two-sided closed surface on a ray: the primitive vector, doubled if one-sided.
fn realize(tri: &Triangulation, k: usize, ray: &[i64]) -> Result<(Witness, NormalSurface)> {
    let s = reconstruct_from_q(tri, &QVector(ray.to_vec()))?
        .closed()
        .ok_or_else(|| Error::Internal(format!("ray {k} is not closed")))?;
    let doubled = !s.is_two_sided();
    let s = if doubled { double(&s) } else { s };
    let surface = s.classify();
    if !surface.connected {
        return Err(Error::Internal(format!(
            "ray {k} gives a disconnected surface"
        )));
    }
    Ok((
        Witness {
            ray_index: k,
            ray: ray.to_vec(),
            doubled,
            surface,
        },
        s,
    ))
}
