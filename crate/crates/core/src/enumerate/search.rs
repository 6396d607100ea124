use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::lp::Lp;
use crate::coords::{build_std_matching, euler_functional, StdVector};
use crate::error::{Error, Result};
use crate::surface::NormalSurface;
use crate::triangulation::Triangulation;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Explore the top of the search tree concurrently. The answer does not depend on this.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { parallel: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub pruned: usize,
    pub pivots: usize,
}

struct Ctx {
    /// Live column of each quad, per tetrahedron in branching order.
    tets: Vec<[Option<usize>; 3]>,
    /// Live triangle columns around each vertex with no excluded corner.
    vertices: Vec<Vec<usize>>,
    parallel: bool,
    nodes: AtomicUsize,
    pruned: AtomicUsize,
    pivots: AtomicUsize,
}

/// Finds a connected normal surface with positive Euler characteristic that is not a vertex
/// link, optionally avoiding every disc that meets one boundary component.
pub fn find_positive_chi_surface(
    tri: &Triangulation,
    excluded_boundary: Option<usize>,
) -> Result<Option<StdVector>> {
    Ok(find_positive_chi_surface_with(tri, excluded_boundary, &SearchOptions::default())?.0)
}

/// Branch and bound over exact linear programs maximising the Euler characteristic on the slice
/// where the coordinates sum to one.
///
/// A connected surface that is not a vertex link has, around every vertex, some corner with no
/// triangles (otherwise the innermost triangles would close up into a link). Nodes branch on the
/// first violated condition: two quad types in one tetrahedron, or a vertex with all corners used.
pub fn find_positive_chi_surface_with(
    tri: &Triangulation,
    excluded_boundary: Option<usize>,
    options: &SearchOptions,
) -> Result<(Option<StdVector>, SearchStats)> {
    let chi = euler_functional(tri)?;
    let sk = tri.skeleton();
    let n = tri.size();
    let mut allowed = vec![true; 7 * n];
    if let Some(b) = excluded_boundary {
        let comp = sk
            .boundary
            .get(b)
            .ok_or_else(|| Error::OutOfRange(format!("boundary component {b}")))?;
        for &(t, f) in &comp.faces {
            for q in 0..3 {
                allowed[StdVector::quad_index(t, q)] = false;
            }
            for v in (0..4).filter(|&v| v != f) {
                allowed[StdVector::tri_index(t, v)] = false;
            }
        }
    }
    let live: Vec<usize> = (0..7 * n).filter(|&j| allowed[j]).collect();
    let mut column = vec![None; 7 * n];
    for (k, &j) in live.iter().enumerate() {
        column[j] = Some(k);
    }
    let equalities: Vec<Vec<i64>> = build_std_matching(tri)
        .rows
        .iter()
        .map(|r| live.iter().map(|&j| r[j]).collect::<Vec<i64>>())
        .filter(|r| r.iter().any(|&a| a != 0))
        .collect();
    let scale = chi.iter().fold(1i64, |l, c| l.lcm(c.denom()));
    let objective: Vec<i64> = live
        .iter()
        .map(|&j| (chi[j] * scale).to_integer())
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    let degree = |t: usize| {
        sk.edge_of[t]
            .iter()
            .map(|&e| sk.edges[e].degree())
            .sum::<usize>()
    };
    order.sort_by_key(|&t| (std::cmp::Reverse(degree(t)), t));
    let tets = order
        .iter()
        .map(|&t| [0, 1, 2].map(|q| column[StdVector::quad_index(t, q)]))
        .collect();
    let mut corners = vec![Vec::new(); sk.vertices.len()];
    let mut blocked = vec![false; sk.vertices.len()];
    for t in 0..n {
        for i in 0..4 {
            let v = sk.vertex_of[t][i];
            match column[StdVector::tri_index(t, i)] {
                Some(k) => corners[v].push(k),
                None => blocked[v] = true,
            }
        }
    }
    let vertices = corners
        .into_iter()
        .zip(blocked)
        .filter(|(_, b)| !b)
        .map(|(c, _)| c)
        .collect();
    let ctx = Ctx {
        tets,
        vertices,
        parallel: options.parallel,
        nodes: AtomicUsize::new(0),
        pruned: AtomicUsize::new(0),
        pivots: AtomicUsize::new(0),
    };
    let found = match Lp::new(
        &equalities,
        &vec![1; live.len()],
        &objective,
        &vec![true; live.len()],
    ) {
        Some(lp) => explore(&ctx, lp, 0)?,
        None => None,
    };
    let stats = SearchStats {
        nodes: ctx.nodes.into_inner(),
        pruned: ctx.pruned.into_inner(),
        pivots: ctx.pivots.into_inner(),
    };
    let Some(x) = found else {
        return Ok((None, stats));
    };
    let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let mut std = StdVector::zero(n);
    for (k, &j) in live.iter().enumerate() {
        std.0[j] = (&x[k] / &g)
            .to_i64()
            .ok_or_else(|| Error::Internal("surface coordinates overflow".into()))?;
    }
    let surface = NormalSurface::from_std(tri, std)?;
    let pick = surface
        .components()
        .into_iter()
        .find(|c| c.euler() > 0 && !c.is_vertex_link())
        .ok_or_else(|| Error::Internal("optimal solution has no positive component".into()))?;
    Ok((Some(pick.std().clone()), stats))
}

fn explore(ctx: &Ctx, mut lp: Lp, depth: usize) -> Result<Option<Vec<BigInt>>> {
    ctx.nodes.fetch_add(1, Ordering::Relaxed);
    let before = lp.pivots;
    let best = lp.maximize();
    ctx.pivots.fetch_add(lp.pivots - before, Ordering::Relaxed);
    let best = best.ok_or_else(|| Error::Internal("unbounded Euler characteristic".into()))?;
    if !best.is_positive() {
        ctx.pruned.fetch_add(1, Ordering::Relaxed);
        return Ok(None);
    }
    let (x, _) = lp.solution();
    let positive = |k: &Option<usize>| k.is_some_and(|k| x[k].is_positive());
    let children: Vec<Vec<usize>> = if let Some(quads) = ctx
        .tets
        .iter()
        .find(|q| q.iter().filter(|k| positive(k)).count() > 1)
    {
        (0..3)
            .filter(|&q| quads[q].is_some())
            .map(|q| {
                (0..3)
                    .filter(|&r| r != q)
                    .filter_map(|r| quads[r])
                    .collect()
            })
            .collect()
    } else if let Some(cs) = ctx
        .vertices
        .iter()
        .find(|cs| cs.iter().all(|&k| x[k].is_positive()))
    {
        cs.iter().map(|&k| vec![k]).collect()
    } else {
        return Ok(Some(x));
    };
    let visit = |zeros: &Vec<usize>| -> Result<Option<Vec<BigInt>>> {
        let mut child = lp.clone();
        child.pivots = 0;
        let feasible = zeros.iter().all(|&k| child.force_zero(k));
        ctx.pivots.fetch_add(child.pivots, Ordering::Relaxed);
        child.pivots = 0;
        if !feasible {
            ctx.pruned.fetch_add(1, Ordering::Relaxed);
            return Ok(None);
        }
        explore(ctx, child, depth + 1)
    };
    if ctx.parallel && depth < 3 {
        children
            .par_iter()
            .map(visit)
            .find_map_first(|r| r.transpose())
            .transpose()
    } else {
        for zeros in &children {
            if let Some(x) = visit(zeros)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;
    use crate::triangulation::truncate_ideal_vertices;

    #[test]
    fn free_tetrahedron_gives_a_quad() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        let x = find_positive_chi_surface(&t, None).unwrap().unwrap();
        assert_eq!(x.0[..4], [0, 0, 0, 0]);
        assert_eq!(x.0[4..].iter().sum::<i64>(), 1);
    }

    #[test]
    fn ideal_rejected() {
        let t = Triangulation::parse(FIG8).unwrap();
        assert_eq!(
            find_positive_chi_surface(&t, None).unwrap_err(),
            Error::Ideal
        );
    }

    #[test]
    fn knot_exterior_has_no_disc_or_sphere() {
        // Incompressible boundary and irreducible: only vertex links have positive Euler characteristic.
        let t = truncate_ideal_vertices(&Triangulation::parse(FIG8).unwrap()).unwrap();
        let (t, _) = crate::triangulation::simplify(&t, 1);
        for parallel in [false, true] {
            let (x, stats) =
                find_positive_chi_surface_with(&t, None, &SearchOptions { parallel }).unwrap();
            assert!(x.is_none());
            assert!(stats.nodes > 0);
        }
    }

    #[test]
    fn excluded_boundary_blocks_everything_in_one_tet() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        assert_eq!(find_positive_chi_surface(&t, Some(0)).unwrap(), None);
        assert!(find_positive_chi_surface(&t, Some(1)).is_err());
    }
}
