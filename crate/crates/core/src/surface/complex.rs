use serde::Serialize;

use crate::coords::{project_std_to_q, Admissible, QVector, StdVector};
use crate::error::{Error, Result};
use crate::perm::{edge_index, quad_pairs, quad_type};
use crate::triangulation::{Dsu, Triangulation};

/// Disc type within a tetrahedron: `0..4` triangles at that vertex, `4..7` quads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscType {
    Triangle(usize),
    Quad(usize),
}

impl DiscType {
    pub fn index(self) -> usize {
        match self {
            DiscType::Triangle(v) => v,
            DiscType::Quad(q) => 4 + q,
        }
    }

    pub fn from_index(d: usize) -> DiscType {
        if d < 4 {
            DiscType::Triangle(d)
        } else {
            DiscType::Quad(d - 4)
        }
    }

    /// Faces of the tetrahedron met by the disc.
    pub fn faces(self) -> Vec<usize> {
        match self {
            DiscType::Triangle(v) => (0..4).filter(|&f| f != v).collect(),
            DiscType::Quad(_) => (0..4).collect(),
        }
    }

    /// Edges met by the disc, as vertex pairs.
    pub fn edges(self) -> Vec<[usize; 2]> {
        match self {
            DiscType::Triangle(v) => (0..4).filter(|&x| x != v).map(|x| [v, x]).collect(),
            DiscType::Quad(q) => {
                let [[a, b], [c, d]] = quad_pairs(q);
                vec![[a, c], [a, d], [b, c], [b, d]]
            }
        }
    }

    /// The vertex of face `f` whose corner the disc's arc in that face cuts off.
    pub fn arc_corner(self, f: usize) -> usize {
        match self {
            DiscType::Triangle(v) => v,
            DiscType::Quad(q) => {
                let [p0, p1] = quad_pairs(q);
                let pair = if p0.contains(&f) { p0 } else { p1 };
                if pair[0] == f {
                    pair[1]
                } else {
                    pair[0]
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Disc {
    pub tet: usize,
    pub kind: DiscType,
    /// Stacking level: triangles count from their vertex; quads from the side of the vertex pair
    /// containing vertex 0.
    pub level: usize,
}

/// A normal surface in standard coordinates together with its explicit disc complex.
#[derive(Clone, Debug)]
pub struct NormalSurface {
    tri: Triangulation,
    std: StdVector,
    discs: Vec<Disc>,
    offset: Vec<usize>,
    /// Per disc and face: the glued (disc, face), `None` on boundary faces and faces not met.
    arcs: Vec<[Option<(usize, usize)>; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceClass {
    pub closed: bool,
    pub connected: bool,
    pub components: usize,
    pub orientable: bool,
    pub two_sided: bool,
    pub euler: i64,
    pub genus: i64,
    pub boundary_components: usize,
    pub is_vertex_link: bool,
    pub weight: i64,
}

impl NormalSurface {
    pub fn from_std(tri: &Triangulation, std: StdVector) -> Result<NormalSurface> {
        if std.0.len() != 7 * tri.size() {
            return Err(Error::Length {
                got: std.0.len(),
                want: 7 * tri.size(),
            });
        }
        if !std.is_admissible() {
            return Err(Error::NotAdmissible);
        }
        for t in 0..tri.size() {
            for f in 0..4 {
                let Some((j, p)) = tri.gluing(t, f) else {
                    continue;
                };
                for a in (0..4).filter(|&a| a != f) {
                    if arc_count(&std, t, f, a) != arc_count(&std, j, p.apply(f), p.apply(a)) {
                        return Err(Error::NotInKernel);
                    }
                }
            }
        }
        let mut offset = vec![0; 7 * tri.size() + 1];
        for i in 0..7 * tri.size() {
            offset[i + 1] = offset[i] + std.0[i] as usize;
        }
        let mut discs = Vec::with_capacity(offset[7 * tri.size()]);
        for t in 0..tri.size() {
            for d in 0..7 {
                for level in 0..std.0[7 * t + d] as usize {
                    discs.push(Disc {
                        tet: t,
                        kind: DiscType::from_index(d),
                        level,
                    });
                }
            }
        }
        let mut s = NormalSurface {
            tri: tri.clone(),
            std,
            discs,
            offset,
            arcs: Vec::new(),
        };
        s.arcs = s.discs.iter().map(|&d| s.glue_arcs(d)).collect();
        Ok(s)
    }

    pub fn empty(tri: &Triangulation) -> NormalSurface {
        NormalSurface::from_std(tri, StdVector::zero(tri.size())).expect("zero vector is a surface")
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn std(&self) -> &StdVector {
        &self.std
    }

    pub fn quads(&self) -> QVector {
        project_std_to_q(&self.std)
    }

    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn is_empty(&self) -> bool {
        self.discs.is_empty()
    }

    pub fn disc_index(&self, tet: usize, kind: DiscType, level: usize) -> usize {
        self.offset[7 * tet + kind.index()] + level
    }

    /// Arc gluing partner of `disc` in `face`.
    pub fn arc_partner(&self, disc: usize, face: usize) -> Option<(usize, usize)> {
        self.arcs[disc][face]
    }

    /// Position of the disc's arc in `face` among the arcs cutting off the same corner,
    /// counted from that corner.
    fn arc_position(&self, d: Disc, f: usize) -> usize {
        let a = d.kind.arc_corner(f);
        match d.kind {
            DiscType::Triangle(_) => d.level,
            DiscType::Quad(q) => {
                let tris = self.std.tri(d.tet, a) as usize;
                let count = self.std.quad(d.tet, q) as usize;
                if quad_pairs(q)[0].contains(&a) {
                    tris + d.level
                } else {
                    tris + count - 1 - d.level
                }
            }
        }
    }

    fn disc_at_arc(&self, t: usize, f: usize, a: usize, k: usize) -> usize {
        let tris = self.std.tri(t, a) as usize;
        if k < tris {
            return self.disc_index(t, DiscType::Triangle(a), k);
        }
        let q = quad_type(a, f);
        let count = self.std.quad(t, q) as usize;
        let m = if quad_pairs(q)[0].contains(&a) {
            k - tris
        } else {
            tris + count - 1 - k
        };
        self.disc_index(t, DiscType::Quad(q), m)
    }

    fn glue_arcs(&self, d: Disc) -> [Option<(usize, usize)>; 4] {
        let mut out = [None; 4];
        for f in d.kind.faces() {
            if let Some((j, p)) = self.tri.gluing(d.tet, f) {
                let a = d.kind.arc_corner(f);
                let k = self.arc_position(d, f);
                out[f] = Some((self.disc_at_arc(j, p.apply(f), p.apply(a), k), p.apply(f)));
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.discs
            .iter()
            .enumerate()
            .all(|(i, d)| d.kind.faces().iter().all(|&f| self.arcs[i][f].is_some()))
    }

    /// Disc labels of connected components, in order of first disc.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut dsu = Dsu::new(self.discs.len());
        for (i, arcs) in self.arcs.iter().enumerate() {
            for (o, _) in arcs.iter().flatten() {
                dsu.union(i, *o);
            }
        }
        dsu.labels()
    }

    pub fn components(&self) -> Vec<NormalSurface> {
        let (labels, n) = self.component_labels();
        let mut vecs = vec![StdVector::zero(self.tri.size()); n];
        for (i, d) in self.discs.iter().enumerate() {
            vecs[labels[i]].0[7 * d.tet + d.kind.index()] += 1;
        }
        vecs.into_iter()
            .map(|v| {
                NormalSurface::from_std(&self.tri, v).expect("components of a surface are surfaces")
            })
            .collect()
    }

    /// Points of the surface on the 1-skeleton, grouped into surface vertices; returns the
    /// number of vertices and of boundary circles.
    fn vertex_data(&self) -> (usize, usize, usize) {
        let corner = |i: usize, e: usize| 6 * i + e;
        let mut dsu = Dsu::new(6 * self.discs.len());
        let mut edges = 0;
        let mut boundary_arcs = Vec::new();
        for (i, d) in self.discs.iter().enumerate() {
            for f in d.kind.faces() {
                let a = d.kind.arc_corner(f);
                let others: Vec<usize> = (0..4).filter(|&x| x != a && x != f).collect();
                match self.arcs[i][f] {
                    Some((o, g)) => {
                        if (i, f) < (o, g) {
                            edges += 1;
                        }
                        let (_, p) = self.tri.gluing(d.tet, f).unwrap();
                        for &b in &others {
                            dsu.union(
                                corner(i, edge_index(a, b)),
                                corner(o, edge_index(p.apply(a), p.apply(b))),
                            );
                        }
                    }
                    None => {
                        edges += 1;
                        boundary_arcs.push([
                            corner(i, edge_index(a, others[0])),
                            corner(i, edge_index(a, others[1])),
                        ]);
                    }
                }
            }
        }
        let mut used = Vec::new();
        for (i, d) in self.discs.iter().enumerate() {
            for [x, y] in d.kind.edges() {
                used.push(dsu.find(corner(i, edge_index(x, y))));
            }
        }
        used.sort_unstable();
        used.dedup();
        let vertices = used.len();
        let mut circles = Dsu::new(6 * self.discs.len());
        let mut touched = Vec::new();
        for [x, y] in boundary_arcs {
            let (x, y) = (dsu.find(x), dsu.find(y));
            circles.union(x, y);
            touched.push(x);
        }
        let mut roots: Vec<usize> = touched.into_iter().map(|x| circles.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        (vertices, edges, roots.len())
    }

    pub fn euler(&self) -> i64 {
        let (v, e, _) = self.vertex_data();
        v as i64 - e as i64 + self.discs.len() as i64
    }

    /// Whether a normal direction can be chosen consistently on every component.
    pub fn is_two_sided(&self) -> bool {
        self.sides().is_some()
    }

    /// A consistent normal direction per disc: `true` when it points towards the triangle's
    /// vertex, or towards the quad's vertex pair containing vertex 0. `None` if one-sided.
    pub fn sides(&self) -> Option<Vec<bool>> {
        let towards = |d: Disc, f: usize, side: bool| match d.kind {
            DiscType::Triangle(_) => side,
            DiscType::Quad(q) => quad_pairs(q)[0].contains(&d.kind.arc_corner(f)) == side,
        };
        let mut side: Vec<Option<bool>> = vec![None; self.discs.len()];
        for start in 0..self.discs.len() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(true);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let s = side[i].unwrap();
                for f in self.discs[i].kind.faces() {
                    let Some((o, g)) = self.arcs[i][f] else {
                        continue;
                    };
                    let want = towards(self.discs[i], f, s);
                    let needed = towards(self.discs[o], g, true) == want;
                    match side[o] {
                        None => {
                            side[o] = Some(needed);
                            stack.push(o);
                        }
                        Some(x) if x != needed => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Quad-free and a union of whole vertex links.
    pub fn is_vertex_link(&self) -> bool {
        if self.is_empty() || self.std.has_quads() {
            return false;
        }
        let sk = self.tri.skeleton();
        sk.vertices.iter().all(|vc| {
            let (t0, v0) = vc.corners[0];
            let c = self.std.tri(t0, v0);
            vc.corners.iter().all(|&(t, v)| self.std.tri(t, v) == c)
        })
    }

    pub fn weight(&self) -> i64 {
        self.vertex_data().0 as i64
    }

    pub fn classify(&self) -> SurfaceClass {
        let (v, e, b) = self.vertex_data();
        let euler = v as i64 - e as i64 + self.discs.len() as i64;
        let (_, components) = self.component_labels();
        let two_sided = self.is_two_sided();
        let genus = if components <= 1 {
            genus_of(euler, b, two_sided)
        } else {
            self.components()
                .iter()
                .map(|c| {
                    let (cv, ce, cb) = c.vertex_data();
                    genus_of(
                        cv as i64 - ce as i64 + c.discs.len() as i64,
                        cb,
                        c.is_two_sided(),
                    )
                })
                .sum()
        };
        SurfaceClass {
            closed: self.is_closed(),
            connected: components == 1,
            components,
            // The ambient triangulation is oriented, so one-sided components are exactly the
            // non-orientable ones.
            orientable: two_sided,
            two_sided,
            euler,
            genus,
            boundary_components: b,
            is_vertex_link: self.is_vertex_link(),
            weight: v as i64,
        }
    }
}

fn genus_of(euler: i64, boundary: usize, orientable: bool) -> i64 {
    let g = 2 - euler - boundary as i64;
    if orientable {
        g / 2
    } else {
        g
    }
}

/// Number of normal arcs of `x` in face `f` of `t` cutting off corner `a`.
pub(crate) fn arc_count(x: &StdVector, t: usize, f: usize, a: usize) -> i64 {
    x.tri(t, a) + x.quad(t, quad_type(a, f))
}

/// Twice the surface: the boundary of a regular neighbourhood when the surface is one-sided.
pub fn double(s: &NormalSurface) -> NormalSurface {
    NormalSurface::from_std(&s.tri, s.std.scaled(2)).expect("doubling preserves admissibility")
}
