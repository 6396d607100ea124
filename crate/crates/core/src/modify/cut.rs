use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{quad_pairs, Perm4, EDGE_VERTICES};
use crate::surface::{DiscType, NormalSurface};
use crate::triangulation::{Gluing, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Plus,
    Minus,
}

/// Where a boundary face of a cut triangulation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum BoundaryLabel {
    /// A copy of the cut surface, on the side its normal points to or away from.
    Surface { side: Side },
    /// The torus left by truncating an ideal vertex.
    Cusp { vertex: usize },
    /// Boundary already present in the input.
    Original,
}

/// A subdivided triangulation with labels on its boundary faces.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub tri: Triangulation,
    pub labels: Vec<[Option<BoundaryLabel>; 4]>,
    /// Cells the tetrahedra were split into, discarded cusp tips included.
    pub cells: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledBoundary {
    pub label: BoundaryLabel,
    pub euler: i64,
    pub genus: i64,
    pub faces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutPiece {
    #[serde(skip)]
    pub tri: Triangulation,
    pub tets: usize,
    /// In the order of the piece's boundary components.
    pub boundary: Vec<LabeledBoundary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutResult {
    pub pieces: Vec<CutPiece>,
    pub cells: usize,
}

impl CutResult {
    pub fn surface_copies(&self) -> usize {
        self.pieces
            .iter()
            .flat_map(|p| &p.boundary)
            .filter(|b| matches!(b.label, BoundaryLabel::Surface { .. }))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Key {
    Vert(u8),
    /// Point `k` (from 1) counted from the smaller endpoint.
    Edge(u8, u8, u32),
    Cell(u32),
    Poly(Vec<Key>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Plane {
    Tri(usize, usize),
    Quad(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Cell {
    Corner(usize, usize),
    Slab(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    Face(usize),
    Plane(Plane),
}

/// Disc layout of one tetrahedron.
struct Layout {
    /// Triangles at each corner, the truncation triangle included.
    tris: [usize; 4],
    ideal: [bool; 4],
    quad: Option<(usize, usize)>,
    points: [usize; 6],
}

impl Layout {
    fn new(s: &NormalSurface, t: usize, ideal: [bool; 4]) -> Layout {
        let x = s.std();
        let mut tris = [0; 4];
        for i in 0..4 {
            tris[i] = x.tri(t, i) as usize + ideal[i] as usize;
        }
        let quad = (0..3)
            .find(|&q| x.quad(t, q) > 0)
            .map(|q| (q, x.quad(t, q) as usize));
        let mut points = [0; 6];
        for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            let q = match quad {
                Some((q, n)) if meets(q, *a, *b) => n,
                _ => 0,
            };
            points[e] = tris[*a] + tris[*b] + q;
        }
        Layout {
            tris,
            ideal,
            quad,
            points,
        }
    }

    fn count(&self, a: usize, b: usize) -> usize {
        self.points[crate::perm::edge_index(a, b)]
    }

    /// Point `k` from `a` on edge `ab`; 0 and `n + 1` are the endpoints.
    fn point(&self, a: usize, b: usize, k: usize) -> Key {
        let n = self.count(a, b);
        if k == 0 {
            Key::Vert(a as u8)
        } else if k == n + 1 {
            Key::Vert(b as u8)
        } else if a < b {
            Key::Edge(a as u8, b as u8, k as u32)
        } else {
            Key::Edge(b as u8, a as u8, (n + 1 - k) as u32)
        }
    }

    fn quad_count(&self) -> usize {
        self.quad.map_or(0, |(_, n)| n)
    }

    fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 0..4 {
            for m in 0..self.tris[i] {
                out.push(Cell::Corner(i, m));
            }
        }
        for k in 0..=self.quad_count() {
            out.push(Cell::Slab(k));
        }
        out
    }

    fn planes(&self) -> Vec<Plane> {
        let mut out = Vec::new();
        for i in 0..4 {
            for m in 0..self.tris[i] {
                out.push(Plane::Tri(i, m));
            }
        }
        for m in 0..self.quad_count() {
            out.push(Plane::Quad(m));
        }
        out
    }

    fn vertices(&self, c: Cell) -> Vec<Key> {
        let mut out = Vec::new();
        match c {
            Cell::Corner(i, m) => {
                for x in (0..4).filter(|&x| x != i) {
                    out.push(self.point(i, x, m));
                    out.push(self.point(i, x, m + 1));
                }
            }
            Cell::Slab(k) => {
                let q = self.quad_count();
                for [a, b] in EDGE_VERTICES {
                    let seg = match self.quad {
                        Some((qt, _)) if meets(qt, a, b) => {
                            let (a, b) = if quad_pairs(qt)[0].contains(&a) {
                                (a, b)
                            } else {
                                (b, a)
                            };
                            Some((a, b, self.tris[a] + k))
                        }
                        Some((qt, _)) if quad_pairs(qt)[1].contains(&a) => {
                            (k == q).then_some((a, b, self.tris[a]))
                        }
                        _ => (k == 0).then_some((a, b, self.tris[a])),
                    };
                    if let Some((a, b, j)) = seg {
                        out.push(self.point(a, b, j));
                        out.push(self.point(a, b, j + 1));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Corners of a disc plane in cyclic order.
    fn corners(&self, p: Plane) -> Vec<Key> {
        match p {
            Plane::Tri(i, m) => (0..4)
                .filter(|&x| x != i)
                .map(|x| self.point(i, x, m + 1))
                .collect(),
            Plane::Quad(m) => {
                let (q, _) = self.quad.unwrap();
                let [[a, b], [c, d]] = quad_pairs(q);
                [(a, c), (a, d), (b, d), (b, c)]
                    .iter()
                    .map(|&(x, y)| self.point(x, y, self.tris[x] + m + 1))
                    .collect()
            }
        }
    }

    /// Boundary of face `f` in cyclic order: its vertices and the points on its edges.
    fn face_cycle(&self, f: usize) -> Vec<Key> {
        let vs: Vec<usize> = (0..4).filter(|&x| x != f).collect();
        let mut out = Vec::new();
        for k in 0..3 {
            let (a, b) = (vs[k], vs[(k + 1) % 3]);
            for j in 0..=self.count(a, b) {
                out.push(self.point(a, b, j));
            }
        }
        out
    }

    /// The cell on the side of `p` nearer its vertex (triangles) or nearer the quad's vertex pair
    /// containing vertex 0.
    fn near_side(&self, p: Plane) -> Cell {
        match p {
            Plane::Tri(i, m) => Cell::Corner(i, m),
            Plane::Quad(m) => Cell::Slab(m),
        }
    }
}

fn meets(q: usize, a: usize, b: usize) -> bool {
    crate::perm::quad_meets_edge(q, a, b)
}

fn map_key(k: &Key, p: Perm4, lay: &Layout) -> Key {
    match k {
        Key::Vert(a) => Key::Vert(p.apply(*a as usize) as u8),
        Key::Edge(a, b, j) => {
            let (a, b) = (*a as usize, *b as usize);
            let n = lay.count(a, b) as u32;
            let (x, y) = (p.apply(a), p.apply(b));
            if x < y {
                Key::Edge(x as u8, y as u8, *j)
            } else {
                Key::Edge(y as u8, x as u8, n + 1 - j)
            }
        }
        Key::Cell(c) => Key::Cell(*c),
        Key::Poly(ks) => {
            let mut v: Vec<Key> = ks.iter().map(|k| map_key(k, p, lay)).collect();
            v.sort();
            Key::Poly(v)
        }
    }
}

struct NewTet {
    parent: usize,
    keys: [Key; 4],
    owners: [Option<Owner>; 4],
}

fn sorted_without(keys: &[Key; 4], skip: usize) -> Vec<Key> {
    let mut v: Vec<Key> = (0..4)
        .filter(|&r| r != skip)
        .map(|r| keys[r].clone())
        .collect();
    v.sort();
    v
}

/// Splits every tetrahedron into the cells cut out by the discs of `s` and, at ideal vertices,
/// by a truncating triangle; each cell is coned from an interior point over its faces, polygons
/// with more than three sides being fanned from their own centre. Cells that are already
/// tetrahedra are kept whole. Cells are glued across the parent's faces but never across a disc.
pub fn subdivide(s: &NormalSurface) -> Result<Subdivision> {
    let tri = s.triangulation();
    let sk = tri.skeleton();
    let sides = s.sides();
    let n = tri.size();
    let layouts: Vec<Layout> = (0..n)
        .map(|t| {
            let ideal = [0, 1, 2, 3].map(|v| sk.vertices[sk.vertex_of[t][v]].ideal());
            Layout::new(s, t, ideal)
        })
        .collect();
    let mut tets: Vec<NewTet> = Vec::new();
    let mut cells = 0;
    for (t, lay) in layouts.iter().enumerate() {
        let planes = lay.planes();
        let corners: Vec<(Plane, Vec<Key>)> = planes.iter().map(|&p| (p, lay.corners(p))).collect();
        for (ci, cell) in lay.cells().into_iter().enumerate() {
            cells += 1;
            if let Cell::Corner(i, 0) = cell {
                if lay.ideal[i] {
                    continue;
                }
            }
            let verts = lay.vertices(cell);
            let mut polys: Vec<(Owner, Vec<Key>)> = Vec::new();
            for f in 0..4 {
                let cyc: Vec<Key> = lay
                    .face_cycle(f)
                    .into_iter()
                    .filter(|k| verts.binary_search(k).is_ok())
                    .collect();
                if cyc.len() >= 3 {
                    polys.push((Owner::Face(f), cyc));
                }
            }
            for (p, cs) in &corners {
                if cs.iter().all(|k| verts.binary_search(k).is_ok()) {
                    polys.push((Owner::Plane(*p), cs.clone()));
                }
            }
            if verts.len() == 4 {
                let keys = [
                    verts[0].clone(),
                    verts[1].clone(),
                    verts[2].clone(),
                    verts[3].clone(),
                ];
                let mut owners = [None; 4];
                for (r, o) in owners.iter_mut().enumerate() {
                    let face = sorted_without(&keys, r);
                    let hit = polys.iter().find(|(_, ks)| {
                        let mut ks = ks.clone();
                        ks.sort();
                        ks == face
                    });
                    *o = Some(
                        hit.ok_or_else(|| Error::Internal("tetrahedral cell face".into()))?
                            .0,
                    );
                }
                tets.push(NewTet {
                    parent: t,
                    keys,
                    owners,
                });
                continue;
            }
            let cc = Key::Cell(ci as u32);
            for (owner, cyc) in polys {
                if cyc.len() == 3 {
                    tets.push(NewTet {
                        parent: t,
                        keys: [cc.clone(), cyc[0].clone(), cyc[1].clone(), cyc[2].clone()],
                        owners: [Some(owner), None, None, None],
                    });
                    continue;
                }
                let mut sorted = cyc.clone();
                sorted.sort();
                let pc = Key::Poly(sorted);
                for k in 0..cyc.len() {
                    tets.push(NewTet {
                        parent: t,
                        keys: [
                            cc.clone(),
                            pc.clone(),
                            cyc[k].clone(),
                            cyc[(k + 1) % cyc.len()].clone(),
                        ],
                        owners: [Some(owner), None, None, None],
                    });
                }
            }
        }
    }

    let mut gluings: Vec<[Gluing; 4]> = vec![[None; 4]; tets.len()];
    let mut labels: Vec<[Option<BoundaryLabel>; 4]> = vec![[None; 4]; tets.len()];
    let mut on_face: HashMap<(usize, Vec<Key>), (usize, usize)> = HashMap::new();
    let mut inner: HashMap<(usize, Vec<Key>), (usize, usize)> = HashMap::new();
    let perm_between = |a: &NewTet, fa: usize, b: &NewTet, fb: usize, map: &dyn Fn(&Key) -> Key| {
        let mut img = [0u8; 4];
        img[fa] = fb as u8;
        for r in (0..4).filter(|&r| r != fa) {
            let k = map(&a.keys[r]);
            img[r] = b
                .keys
                .iter()
                .position(|x| *x == k)
                .expect("matching face keys") as u8;
        }
        Perm4::new(img).expect("face keys form a bijection")
    };
    for (i, nt) in tets.iter().enumerate() {
        for r in 0..4 {
            let face = sorted_without(&nt.keys, r);
            match nt.owners[r] {
                None => {
                    if let Some((j, fj)) = inner.remove(&(nt.parent, face.clone())) {
                        let p = perm_between(nt, r, &tets[j], fj, &|k| k.clone());
                        gluings[i][r] = Some((j, p));
                        gluings[j][fj] = Some((i, p.inverse()));
                    } else {
                        inner.insert((nt.parent, face), (i, r));
                    }
                }
                Some(Owner::Face(f)) => match tri.gluing(nt.parent, f) {
                    None => labels[i][r] = Some(BoundaryLabel::Original),
                    Some(_) => {
                        on_face.insert((nt.parent, face), (i, r));
                    }
                },
                Some(Owner::Plane(p)) => {
                    let lay = &layouts[nt.parent];
                    labels[i][r] = Some(match p {
                        Plane::Tri(v, 0) if lay.ideal[v] => BoundaryLabel::Cusp {
                            vertex: sk.vertex_of[nt.parent][v],
                        },
                        _ => {
                            let (kind, level) = match p {
                                Plane::Tri(v, m) => {
                                    (DiscType::Triangle(v), m - lay.ideal[v] as usize)
                                }
                                Plane::Quad(m) => (DiscType::Quad(lay.quad.unwrap().0), m),
                            };
                            let d = s.disc_index(nt.parent, kind, level);
                            let near = sides.as_ref().ok_or(Error::OneSided)?[d];
                            let here = cell_of(nt, lay) == lay.near_side(p);
                            BoundaryLabel::Surface {
                                side: if here == near {
                                    Side::Plus
                                } else {
                                    Side::Minus
                                },
                            }
                        }
                    });
                }
            }
        }
    }
    if !inner.is_empty() {
        return Err(Error::Internal(format!(
            "{} unmatched internal faces",
            inner.len()
        )));
    }
    for (&(t, ref face), &(i, r)) in &on_face {
        let (j, p) = tri.gluing(t, face_of_owner(&tets[i], r)).unwrap();
        let lay = &layouts[t];
        let mut mapped: Vec<Key> = face.iter().map(|k| map_key(k, p, lay)).collect();
        mapped.sort();
        let &(b, fb) = on_face.get(&(j, mapped)).ok_or_else(|| {
            Error::Internal(format!("no partner for a face piece of tetrahedron {t}"))
        })?;
        let g = perm_between(&tets[i], r, &tets[b], fb, &|k| map_key(k, p, lay));
        gluings[i][r] = Some((b, g));
    }
    let flips = Triangulation::orient(&mut gluings)?;
    let swap = Perm4::transposition(2, 3);
    for (i, flip) in flips.into_iter().enumerate() {
        if flip {
            let old = labels[i];
            for f in 0..4 {
                labels[i][swap.apply(f)] = old[f];
            }
        }
    }
    let tri = Triangulation::from_raw(gluings);
    Ok(Subdivision { tri, labels, cells })
}

fn face_of_owner(t: &NewTet, r: usize) -> usize {
    match t.owners[r] {
        Some(Owner::Face(f)) => f,
        _ => unreachable!(),
    }
}

/// The cell a new tetrahedron belongs to, recovered from its cone point or its vertex set.
fn cell_of(t: &NewTet, lay: &Layout) -> Cell {
    let cells = lay.cells();
    if let Key::Cell(c) = t.keys[0] {
        return cells[c as usize];
    }
    let mut keys = t.keys.to_vec();
    keys.sort();
    *cells
        .iter()
        .find(|&&c| lay.vertices(c) == keys)
        .expect("tetrahedral cell")
}

/// Cuts along a closed two-sided surface. Ideal vertices are truncated at the same time, their
/// links becoming cusp boundary.
pub fn cut_along(s: &NormalSurface) -> Result<CutResult> {
    if !s.is_closed() {
        return Err(Error::NotClosed);
    }
    if !s.is_two_sided() {
        return Err(Error::OneSided);
    }
    let sub = subdivide(s)?;
    let whole = sub.tri;
    let n = whole.size();
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = members.len();
        let mut list = vec![root];
        let mut k = 0;
        while k < list.len() {
            let i = list[k];
            k += 1;
            for (j, _) in whole.gluings()[i].iter().flatten() {
                if comp[*j] == usize::MAX {
                    comp[*j] = members.len();
                    list.push(*j);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
    }
    let mut pieces = Vec::new();
    for list in members {
        let tri = whole.restrict(&list);
        let sk = tri.skeleton();
        let mut boundary = Vec::new();
        for bc in &sk.boundary {
            let mut label = None;
            for &(t, f) in &bc.faces {
                let l = sub.labels[list[t]][f]
                    .ok_or_else(|| Error::Internal("unlabelled boundary face".into()))?;
                if *label.get_or_insert(l) != l {
                    return Err(Error::Internal(
                        "boundary component with mixed labels".into(),
                    ));
                }
            }
            boundary.push(LabeledBoundary {
                label: label.unwrap(),
                euler: bc.euler,
                genus: bc.genus(),
                faces: bc.faces.len(),
            });
        }
        pieces.push(CutPiece {
            tets: tri.size(),
            tri,
            boundary,
        });
    }
    Ok(CutResult {
        pieces,
        cells: sub.cells,
    })
}
