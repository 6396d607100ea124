use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matching::MatchingSystem;
use crate::error::{Error, Result};
use crate::perm::quad_type;
use crate::triangulation::{LinkKind, Skeleton, Triangulation};

/// A closed walk in the dual graph of a vertex link. Each step `(tet, vertex, face)` leaves the
/// link triangle at corner `vertex` of `tet` through the side lying in `face`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspCurve {
    pub vertex: usize,
    pub steps: Vec<(usize, usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl CuspCurve {
    pub fn new(
        tri: &Triangulation,
        steps: Vec<(usize, usize, usize)>,
        name: Option<&str>,
    ) -> Result<CuspCurve> {
        if steps.is_empty() {
            return Err(Error::Curve("empty walk".into()));
        }
        let n = tri.size();
        for &(t, v, f) in &steps {
            if t >= n || v > 3 || f > 3 || v == f {
                return Err(Error::Curve(format!("bad step ({t},{v},{f})")));
            }
        }
        for k in 0..steps.len() {
            let (t, v, f) = steps[k];
            let (j, p) = tri
                .gluing(t, f)
                .ok_or_else(|| Error::Curve(format!("step {k} crosses a boundary face")))?;
            let (nt, nv, _) = steps[(k + 1) % steps.len()];
            if (j, p.apply(v)) != (nt, nv) {
                return Err(Error::Curve(format!(
                    "step {k} does not lead to the next triangle"
                )));
            }
        }
        let sk = tri.skeleton();
        let vertex = sk.vertex_of[steps[0].0][steps[0].1];
        Ok(CuspCurve {
            vertex,
            steps,
            name: name.map(str::to_string),
        })
    }

    pub fn reversed(&self, tri: &Triangulation) -> CuspCurve {
        let mut steps: Vec<(usize, usize, usize)> = self
            .steps
            .iter()
            .map(|&(t, v, f)| {
                let (j, p) = tri.gluing(t, f).unwrap();
                (j, p.apply(v), p.apply(f))
            })
            .collect();
        steps.reverse();
        CuspCurve {
            vertex: self.vertex,
            steps,
            name: self.name.clone(),
        }
    }

    /// Small loop around the end `end` (0 or 1) of an interior edge.
    pub fn around_edge(tri: &Triangulation, sk: &Skeleton, edge: usize, end: usize) -> CuspCurve {
        let e = &sk.edges[edge];
        let steps = e
            .embeddings
            .iter()
            .map(|emb| (emb.tet, emb.perm.apply(end), emb.perm.apply(3)))
            .collect::<Vec<_>>();
        let (t, v, _) = steps[0];
        let _ = tri;
        CuspCurve {
            vertex: sk.vertex_of[t][v],
            steps,
            name: None,
        }
    }
}

/// Linear functional on quad coordinates measuring how a surface spirals along a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryFunctional {
    pub coeffs: Vec<i64>,
    pub curve: Option<String>,
}

impl BoundaryFunctional {
    pub fn eval(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Leaving a triangle through the side in face `f` counts minus the quad that separates the
/// corner and `f` from the rest; entering the neighbour counts plus the corresponding quad there.
pub fn boundary_functional(tri: &Triangulation, c: &CuspCurve) -> BoundaryFunctional {
    let mut coeffs = vec![0i64; 3 * tri.size()];
    for &(t, v, f) in &c.steps {
        coeffs[3 * t + quad_type(v, f)] -= 1;
        let (j, p) = tri.gluing(t, f).expect("curve crosses an interior face");
        coeffs[3 * j + quad_type(p.apply(v), p.apply(f))] += 1;
    }
    BoundaryFunctional {
        coeffs,
        curve: c.name.clone(),
    }
}

/// Canonical form of `nu` modulo the row space of `m`: entries in pivot columns of the
/// reduced row echelon form are cleared.
pub fn reduce_modulo(nu: &BoundaryFunctional, m: &MatchingSystem) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = nu
        .coeffs
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    for (c, row) in m.rref() {
        if v[c].is_zero() {
            continue;
        }
        let f = v[c].clone();
        for (x, r) in v.iter_mut().zip(row) {
            *x -= f.clone() * r;
        }
    }
    v
}

/// Two dual loops forming a homology basis of a torus vertex link, built by tree-cotree
/// decomposition with deterministic spanning trees.
pub fn boundary_basis(tri: &Triangulation, v: usize) -> Result<[CuspCurve; 2]> {
    let sk = tri.skeleton();
    let vc = sk
        .vertices
        .get(v)
        .ok_or_else(|| Error::OutOfRange(format!("vertex {v}")))?;
    if vc.link != (LinkKind::Closed { genus: 1 }) {
        return Err(Error::NotTorus);
    }
    let corners = &vc.corners;
    let m = corners.len();
    let index: std::collections::HashMap<(usize, usize), usize> =
        corners.iter().enumerate().map(|(k, &c)| (c, k)).collect();

    // Link vertices: (triangle, tet vertex) pairs identified across sides.
    let mut lv = crate::triangulation::Dsu::new(4 * m);
    // Sides as (triangle, face) with their partner.
    let mut sides = Vec::new();
    for (k, &(t, a)) in corners.iter().enumerate() {
        for f in (0..4).filter(|&f| f != a) {
            let (j, p) = tri.gluing(t, f).ok_or(Error::NotTorus)?;
            let other = index[&(j, p.apply(a))];
            for b in (0..4).filter(|&b| b != a && b != f) {
                lv.union(4 * k + b, 4 * other + p.apply(b));
            }
            if (k, f) < (other, p.apply(f)) {
                sides.push(((k, f), (other, p.apply(f))));
            }
        }
    }
    // Primal spanning tree over link vertices.
    let mut tree = crate::triangulation::Dsu::new(4 * m);
    let mut in_tree = vec![false; sides.len()];
    for (s, &((k, f), _)) in sides.iter().enumerate() {
        let a = corners[k].1;
        let ends: Vec<usize> = (0..4)
            .filter(|&b| b != a && b != f)
            .map(|b| lv.find(4 * k + b))
            .collect();
        if tree.union(ends[0], ends[1]) {
            in_tree[s] = true;
        }
    }
    // Dual spanning tree over triangles using the remaining sides.
    let mut dual = crate::triangulation::Dsu::new(m);
    let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); m];
    let mut leftover = Vec::new();
    for (s, &((k, f), (o, g))) in sides.iter().enumerate() {
        if in_tree[s] {
            continue;
        }
        if dual.union(k, o) {
            adj[k].push((o, f, g));
            adj[o].push((k, g, f));
        } else {
            leftover.push(((k, f), (o, g)));
        }
    }
    if leftover.len() != 2 {
        return Err(Error::Internal(format!(
            "tree-cotree left {} generators",
            leftover.len()
        )));
    }
    // Paths from triangle 0 in the dual tree: parent triangle and the side used from the parent.
    let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; m];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for &(o, f, g) in &adj[k] {
            if !seen[o] {
                seen[o] = true;
                parent[o] = Some((k, f, g));
                queue.push_back(o);
            }
        }
    }
    let step = |k: usize, f: usize| (corners[k].0, corners[k].1, f);
    let path_from_root = |mut k: usize| {
        let mut rev = Vec::new();
        while let Some((p, f, _)) = parent[k] {
            rev.push(step(p, f));
            k = p;
        }
        rev.reverse();
        rev
    };
    let path_to_root = |mut k: usize| {
        let mut out = Vec::new();
        while let Some((p, _, g)) = parent[k] {
            out.push(step(k, g));
            k = p;
        }
        out
    };
    let make = |((k, f), (o, _)): ((usize, usize), (usize, usize)), name: &str| {
        let mut steps = path_from_root(k);
        steps.push(step(k, f));
        steps.extend(path_to_root(o));
        CuspCurve {
            vertex: v,
            steps,
            name: Some(name.to_string()),
        }
    };
    Ok([make(leftover[0], "alpha"), make(leftover[1], "beta")])
}

/// Meridian and longitude of the single cusp, as stored next to a fixture.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Peripheral {
    pub meridian: CuspCurve,
    pub longitude: CuspCurve,
}

#[derive(Deserialize)]
struct PeripheralFile {
    meridian: Vec<(usize, usize, usize)>,
    longitude: Vec<(usize, usize, usize)>,
}

pub fn load_peripheral(tri: &Triangulation, json: &str) -> Result<Peripheral> {
    let raw: PeripheralFile =
        serde_json::from_str(json).map_err(|e| Error::Curve(e.to_string()))?;
    Ok(Peripheral {
        meridian: CuspCurve::new(tri, raw.meridian, Some("meridian"))?,
        longitude: CuspCurve::new(tri, raw.longitude, Some("longitude"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::build_q_matching;
    use crate::triangulation::tests::FIG8;

    #[test]
    fn loop_around_edge_gives_matching_row() {
        let t = Triangulation::parse(FIG8).unwrap();
        let sk = t.skeleton();
        let m = build_q_matching(&t);
        for (k, _) in sk.interior_edges() {
            let c = CuspCurve::around_edge(&t, &sk, k, 0);
            CuspCurve::new(&t, c.steps.clone(), None).unwrap();
            let nu = boundary_functional(&t, &c);
            assert_eq!(nu.coeffs, m.rows[k]);
        }
    }

    #[test]
    fn reversed_negates() {
        let t = Triangulation::parse(FIG8).unwrap();
        let [a, b] = boundary_basis(&t, 0).unwrap();
        for c in [a, b] {
            CuspCurve::new(&t, c.steps.clone(), None).unwrap();
            let f = boundary_functional(&t, &c).coeffs;
            let r = boundary_functional(&t, &c.reversed(&t)).coeffs;
            assert_eq!(f.iter().map(|x| -x).collect::<Vec<_>>(), r);
        }
    }

    #[test]
    fn basis_requires_torus() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        assert_eq!(boundary_basis(&t, 0).unwrap_err(), Error::NotTorus);
    }
}
