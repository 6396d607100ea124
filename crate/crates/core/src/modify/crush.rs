use serde::Serialize;

use crate::perm::{quad_pairs, Perm4};
use crate::surface::NormalSurface;
use crate::triangulation::moves::{flatten, Tagged};
use crate::triangulation::{LinkKind, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrushReport {
    pub tets_before: usize,
    pub tets_after: usize,
    /// Whether the result is a valid 3-manifold triangulation (possibly empty).
    pub valid: bool,
    pub problems: Vec<String>,
}

/// Crushes `s` to a point. Tetrahedra containing a quad are deleted, each flattened so that the
/// two faces meeting along either edge the quad avoids become one; the others survive unchanged
/// and are reglued along the resulting chains.
pub fn crush(s: &NormalSurface) -> (Triangulation, CrushReport) {
    let tagged = Tagged::new(s.triangulation().clone());
    let (out, report) = crush_tagged(s, &tagged.tags);
    (out.tri, report)
}

/// As [`crush`], carrying boundary face tags along.
pub fn crush_tagged(s: &NormalSurface, tags: &[[u32; 4]]) -> (Tagged, CrushReport) {
    let tri = s.triangulation();
    let x = s.std();
    let n = tri.size();
    let quad: Vec<Option<usize>> = (0..n).map(|t| (0..3).find(|&q| x.quad(t, q) > 0)).collect();
    let removed: Vec<bool> = quad.iter().map(Option::is_some).collect();
    let partner = |t: usize, g: usize| {
        let [[a, b], [c, d]] = quad_pairs(quad[t].unwrap());
        let (u, v) = if g == a || g == b { (a, b) } else { (c, d) };
        (t, if g == u { v } else { u }, Perm4::transposition(u, v))
    };
    let mut problems = Vec::new();
    let input = Tagged {
        tri: tri.clone(),
        tags: tags.to_vec(),
    };
    let survivors = removed.iter().filter(|r| !**r).count();
    let (rows, new_tags, folded) = match flatten(&input, &removed, partner) {
        Ok(r) => r,
        Err(e) => {
            problems.push(e.to_string());
            (
                vec![[None; 4]; survivors],
                vec![[0; 4]; survivors],
                Vec::new(),
            )
        }
    };
    for (t, f) in &folded {
        problems.push(format!("face {f} of tetrahedron {t} folds onto itself"));
    }
    let out = Triangulation::from_unchecked(rows);
    if let Err(e) = out.check_structure() {
        problems.push(e.to_string());
    } else if let Err(e) = out.check_manifold() {
        problems.push(e.to_string());
    } else {
        let sk = out.skeleton();
        if sk.vertices.iter().any(|v| v.link == LinkKind::Invalid) {
            problems.push("invalid vertex link".into());
        }
    }
    let report = CrushReport {
        tets_before: n,
        tets_after: out.size(),
        valid: problems.is_empty(),
        problems,
    };
    assert_eq!(report.tets_after, survivors);
    (
        Tagged {
            tri: out,
            tags: new_tags,
        },
        report,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::StdVector;
    use crate::triangulation::tests::FIG8;

    #[test]
    fn quad_in_free_tet() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        let s = NormalSurface::from_std(&t, StdVector(vec![0, 0, 0, 0, 1, 0, 0])).unwrap();
        let (c, r) = crush(&s);
        assert!(c.is_empty());
        assert!(r.valid);
    }

    #[test]
    fn no_quads_keeps_everything() {
        let t = Triangulation::parse(FIG8).unwrap();
        let s = NormalSurface::from_std(
            &t,
            StdVector(vec![1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0]),
        )
        .unwrap();
        let (c, r) = crush(&s);
        assert_eq!(c, t);
        assert_eq!(r.tets_after, 2);
    }
}
