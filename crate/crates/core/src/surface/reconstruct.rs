use std::collections::VecDeque;

use serde::Serialize;

use super::complex::NormalSurface;
use crate::coords::{
    boundary_basis, boundary_functional, build_q_matching, Admissible, QVector, StdVector,
};
use crate::error::{Error, Result};
use crate::perm::quad_type;
use crate::triangulation::Triangulation;

/// A quad solution that does not close up at some ideal vertex: it spins into the cusp.
#[derive(Clone, Debug, Serialize)]
pub struct SpunReport {
    pub quads: QVector,
    /// `(vertex, [nu(alpha), nu(beta)])` for each torus cusp, on the link basis curves.
    pub nu: Vec<(usize, [i64; 2])>,
    #[serde(skip)]
    pub(crate) tri: Triangulation,
}

#[derive(Clone, Debug)]
pub enum Reconstruction {
    Closed(NormalSurface),
    Spun(SpunReport),
}

impl Reconstruction {
    pub fn closed(self) -> Option<NormalSurface> {
        match self {
            Reconstruction::Closed(s) => Some(s),
            Reconstruction::Spun(_) => None,
        }
    }
}

/// Lifts a quad solution to the standard solution with the fewest triangles, or reports that it
/// is spun.
pub fn reconstruct_from_q(tri: &Triangulation, x: &QVector) -> Result<Reconstruction> {
    let n = tri.size();
    if x.0.len() != 3 * n {
        return Err(Error::Length {
            got: x.0.len(),
            want: 3 * n,
        });
    }
    if !x.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    if !build_q_matching(tri).annihilates(&x.0) {
        return Err(Error::NotInKernel);
    }
    let sk = tri.skeleton();
    let mut std = StdVector::zero(n);
    for t in 0..n {
        for q in 0..3 {
            std.0[StdVector::quad_index(t, q)] = x.quad(t, q);
        }
    }
    let mut spun = false;
    for (vid, vc) in sk.vertices.iter().enumerate() {
        let mut val: std::collections::HashMap<(usize, usize), i64> =
            std::collections::HashMap::new();
        let start = vc.corners[0];
        val.insert(start, 0);
        let mut queue = VecDeque::from([start]);
        let mut consistent = true;
        while let Some((t, v)) = queue.pop_front() {
            let here = val[&(t, v)];
            for f in (0..4).filter(|&f| f != v) {
                let Some((j, p)) = tri.gluing(t, f) else {
                    continue;
                };
                let there = here + x.quad(t, quad_type(v, f))
                    - x.quad(j, quad_type(p.apply(v), p.apply(f)));
                match val.get(&(j, p.apply(v))) {
                    None => {
                        val.insert((j, p.apply(v)), there);
                        queue.push_back((j, p.apply(v)));
                    }
                    Some(&old) if old != there => consistent = false,
                    _ => {}
                }
            }
        }
        if !consistent {
            if vc.ideal() {
                spun = true;
                continue;
            }
            return Err(Error::Internal(format!(
                "triangle offsets inconsistent at vertex {vid}"
            )));
        }
        let min = val.values().copied().min().unwrap_or(0);
        for (&(t, v), &k) in &val {
            std.0[StdVector::tri_index(t, v)] = k - min;
        }
    }
    if spun {
        let mut nu = Vec::new();
        for (vid, vc) in sk.vertices.iter().enumerate() {
            if vc.ideal() {
                if let Ok([a, b]) = boundary_basis(tri, vid) {
                    nu.push((
                        vid,
                        [
                            boundary_functional(tri, &a).eval(&x.0),
                            boundary_functional(tri, &b).eval(&x.0),
                        ],
                    ));
                }
            }
        }
        return Ok(Reconstruction::Spun(SpunReport {
            quads: x.clone(),
            nu,
            tri: tri.clone(),
        }));
    }
    Ok(Reconstruction::Closed(NormalSurface::from_std(tri, std)?))
}
