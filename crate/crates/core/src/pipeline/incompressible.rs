use serde::Serialize;

use super::{check_knot_complement, PipelineOptions};
use crate::coords::StdVector;
use crate::enumerate::{find_positive_chi_surface_with, SearchOptions, SearchStats};
use crate::error::{Error, Result};
use crate::modify::{crush_tagged, cut_along, BoundaryLabel, CutPiece};
use crate::surface::{NormalSurface, SurfaceClass};
use crate::triangulation::moves::Tagged;
use crate::triangulation::{simplify_tagged, SimplifyReport, Triangulation};

const SURFACE: u32 = 1;
const CUSP: u32 = 2;
const ORIGINAL: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IncompressibilityVerdict {
    Incompressible,
    Compressible,
}

/// One pass of the crushing loop on one side of the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrushStep {
    /// 1 for the side away from the cusp, 2 for the side containing it.
    pub side: usize,
    /// Size of the simplified triangulation that was searched.
    pub tets_before: usize,
    /// Size of the component kept after crushing, or of everything left if none was kept.
    pub tets_after: usize,
    pub vertex_condition: bool,
    /// The disc or sphere that was crushed.
    pub surface: SurfaceClass,
    /// Sorted boundary genera of each component after crushing.
    pub components: Vec<Vec<i64>>,
    pub kept: Option<usize>,
}

/// Evidence of compressibility: crushing `surface` in `tri` leaves no component with the
/// boundary genera of the side being tested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Compression {
    pub side: usize,
    pub surface: StdVector,
    pub genera: Vec<i64>,
    pub components: Vec<Vec<i64>>,
    #[serde(skip)]
    pub tri: Tagged,
}

impl Compression {
    /// Crushes again and confirms no component has the recorded boundary genera.
    pub fn recheck(&self) -> bool {
        let Ok(s) = NormalSurface::from_std(&self.tri.tri, self.surface.clone()) else {
            return false;
        };
        let c = s.classify();
        if !c.connected || c.euler <= 0 || c.is_vertex_link {
            return false;
        }
        let (crushed, report) = crush_tagged(&s, &self.tri.tags);
        report.valid
            && crushed
                .components()
                .iter()
                .all(|p| genera(p) != self.genera)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncompressibilityResult {
    pub verdict: IncompressibilityVerdict,
    pub certificate: Option<Compression>,
    pub trace: Vec<CrushStep>,
    /// Size of each side straight after cutting, side 1 first.
    pub cut_sizes: [usize; 2],
    pub simplifications: Vec<SimplifyReport>,
    pub searches: Vec<SearchStats>,
}

impl IncompressibilityResult {
    /// Every crush shrinks the triangulation, and so does each return to the same side.
    pub fn trace_decreasing(&self) -> bool {
        self.trace.iter().all(|s| s.tets_after < s.tets_before)
            && self
                .trace
                .windows(2)
                .all(|w| w[0].side != w[1].side || w[1].tets_before < w[0].tets_before)
    }
}

pub fn test_incompressible(
    ideal_tri: &Triangulation,
    s: &NormalSurface,
) -> Result<IncompressibilityResult> {
    test_incompressible_with(ideal_tri, s, &PipelineOptions::default())
}

/// Decides whether a closed surface in a knot complement is incompressible. The complement is
/// cut along the surface (truncating the cusp); on each side in turn, positive Euler
/// characteristic surfaces that avoid the cusp torus are crushed until none remain or the side's
/// boundary genera are lost.
pub fn test_incompressible_with(
    ideal_tri: &Triangulation,
    s: &NormalSurface,
    options: &PipelineOptions,
) -> Result<IncompressibilityResult> {
    if s.triangulation() != ideal_tri {
        return Err(Error::ForeignSurface);
    }
    check_knot_complement(ideal_tri)?;
    let class = s.classify();
    if !class.closed {
        return Err(Error::NotClosed);
    }
    if !class.connected {
        return Err(Error::Disconnected);
    }
    if class.euler >= 2 {
        return Err(Error::Sphere);
    }
    let cut = cut_along(s)?;
    if cut.pieces.len() != 2 {
        return Err(Error::Internal(format!(
            "cutting gave {} pieces instead of 2",
            cut.pieces.len()
        )));
    }
    let has_cusp = |p: &CutPiece| {
        p.boundary
            .iter()
            .any(|b| matches!(b.label, BoundaryLabel::Cusp { .. }))
    };
    let (one, two) = match (has_cusp(&cut.pieces[0]), has_cusp(&cut.pieces[1])) {
        (false, true) => (&cut.pieces[0], &cut.pieces[1]),
        (true, false) => (&cut.pieces[1], &cut.pieces[0]),
        _ => return Err(Error::Internal("cusp is not on exactly one side".into())),
    };
    let mut result = IncompressibilityResult {
        verdict: IncompressibilityVerdict::Incompressible,
        certificate: None,
        trace: Vec::new(),
        cut_sizes: [one.tets, two.tets],
        simplifications: Vec::new(),
        searches: Vec::new(),
    };
    let search = SearchOptions {
        parallel: !options.deterministic,
    };
    for (side, piece) in [(1, one), (2, two)] {
        let mut t = tagged(piece);
        let want = genera(&t);
        loop {
            let seed = options
                .seed
                .wrapping_add(result.simplifications.len() as u64);
            let report = simplify_tagged(&mut t, seed);
            let vertex_condition = report.vertex_condition;
            result.simplifications.push(report);
            let excluded = if side == 2 {
                let sk = t.tri.skeleton();
                let b = (0..sk.boundary.len())
                    .find(|&b| {
                        sk.boundary[b]
                            .faces
                            .iter()
                            .any(|&(i, f)| t.tags[i][f] == CUSP)
                    })
                    .ok_or_else(|| Error::Internal("cusp boundary lost".into()))?;
                Some(b)
            } else {
                None
            };
            let (found, stats) = find_positive_chi_surface_with(&t.tri, excluded, &search)?;
            result.searches.push(stats);
            let Some(e) = found else { break };
            let surface = NormalSurface::from_std(&t.tri, e.clone())?;
            let (crushed, report) = crush_tagged(&surface, &t.tags);
            if !report.valid {
                return Err(Error::Internal(format!(
                    "crushing gave an invalid triangulation: {:?}",
                    report.problems
                )));
            }
            let parts = crushed.components();
            let profiles: Vec<Vec<i64>> = parts.iter().map(genera).collect();
            let matching: Vec<usize> = (0..parts.len()).filter(|&k| profiles[k] == want).collect();
            let kept = matching
                .iter()
                .copied()
                .find(|&k| parts[k].tags_on_boundary().contains(&SURFACE))
                .or_else(|| matching.first().copied());
            result.trace.push(CrushStep {
                side,
                tets_before: t.size(),
                tets_after: kept.map_or(crushed.size(), |k| parts[k].size()),
                vertex_condition,
                surface: surface.classify(),
                components: profiles.clone(),
                kept,
            });
            match kept {
                Some(k) => t = parts[k].clone(),
                None => {
                    result.verdict = IncompressibilityVerdict::Compressible;
                    result.certificate = Some(Compression {
                        side,
                        surface: e,
                        genera: want,
                        components: profiles,
                        tri: t,
                    });
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

fn tagged(piece: &CutPiece) -> Tagged {
    let mut t = Tagged::new(piece.tri.clone());
    let sk = t.tri.skeleton();
    for (bc, lb) in sk.boundary.iter().zip(&piece.boundary) {
        let tag = match lb.label {
            BoundaryLabel::Surface { .. } => SURFACE,
            BoundaryLabel::Cusp { .. } => CUSP,
            BoundaryLabel::Original => ORIGINAL,
        };
        for &(i, f) in &bc.faces {
            t.tags[i][f] = tag;
        }
    }
    t
}

fn genera(t: &Tagged) -> Vec<i64> {
    t.tri.skeleton().boundary_genera()
}

impl Tagged {
    fn tags_on_boundary(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.size())
            .flat_map(|i| (0..4).map(move |f| (i, f)))
            .filter(|&(i, f)| self.tri.gluing(i, f).is_none())
            .map(|(i, f)| self.tags[i][f])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}
