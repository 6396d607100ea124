use serde::Serialize;

use super::skeleton::Dsu;
use super::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LinkKind {
    Sphere,
    Disc,
    /// Closed orientable surface of positive genus: the vertex is ideal.
    Closed {
        genus: i64,
    },
    Invalid,
}

/// The triangulated link of a vertex class: one triangle per corner.
#[derive(Clone, Debug, Serialize)]
pub struct VertexLink {
    /// Corners `(tet, vertex)`; triangle `k` is the link of corner `k`.
    pub triangles: Vec<(usize, usize)>,
    /// For triangle `k` and face `f` of its tetrahedron: the adjacent triangle and its side,
    /// or `None` on the link boundary. Entries for `f == vertex` are always `None`.
    pub adjacent: Vec<[Option<(usize, usize)>; 4]>,
    pub vertices: usize,
    pub edges: usize,
    pub boundary_components: usize,
    pub euler: i64,
    pub orientable: bool,
    pub genus: i64,
    pub kind: LinkKind,
}

struct Counts {
    vertices: usize,
    edges: usize,
    boundary: usize,
    adjacent: Vec<[Option<(usize, usize)>; 4]>,
}

fn count(tri: &Triangulation, corners: &[(usize, usize)]) -> Counts {
    let mut index = std::collections::HashMap::new();
    for (k, &c) in corners.iter().enumerate() {
        index.insert(c, k);
    }
    let m = corners.len();
    let mut adjacent = vec![[None; 4]; m];
    let mut dsu = Dsu::new(4 * m);
    let mut internal_sides = 0;
    let mut boundary_sides = Vec::new();
    for (k, &(t, v)) in corners.iter().enumerate() {
        for f in (0..4).filter(|&f| f != v) {
            match tri.gluing(t, f) {
                Some((j, p)) => {
                    internal_sides += 1;
                    let other = index[&(j, p.apply(v))];
                    adjacent[k][f] = Some((other, p.apply(f)));
                    for a in (0..4).filter(|&a| a != v && a != f) {
                        dsu.union(4 * k + a, 4 * other + p.apply(a));
                    }
                }
                None => boundary_sides.push((k, v, f)),
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for (k, &(_, v)) in corners.iter().enumerate() {
        for a in (0..4).filter(|&a| a != v) {
            roots.insert(dsu.find(4 * k + a));
        }
    }
    // Boundary circles: link vertices joined by boundary sides.
    let mut bd = Dsu::new(4 * m);
    let mut touched = Vec::new();
    for &(k, v, f) in &boundary_sides {
        let ends: Vec<usize> = (0..4)
            .filter(|&a| a != v && a != f)
            .map(|a| dsu.find(4 * k + a))
            .collect();
        bd.union(ends[0], ends[1]);
        touched.extend(ends);
    }
    let brs: std::collections::BTreeSet<usize> = touched.into_iter().map(|x| bd.find(x)).collect();
    Counts {
        vertices: roots.len(),
        edges: internal_sides / 2 + boundary_sides.len(),
        boundary: brs.len(),
        adjacent,
    }
}

fn kind_of(euler: i64, boundary: usize) -> LinkKind {
    match boundary {
        0 if euler == 2 => LinkKind::Sphere,
        0 if euler <= 0 && euler % 2 == 0 => LinkKind::Closed {
            genus: (2 - euler) / 2,
        },
        1 if euler == 1 => LinkKind::Disc,
        _ => LinkKind::Invalid,
    }
}

pub(crate) fn classify_link(tri: &Triangulation, corners: &[(usize, usize)]) -> (LinkKind, i64) {
    let c = count(tri, corners);
    let euler = c.vertices as i64 - c.edges as i64 + corners.len() as i64;
    (kind_of(euler, c.boundary), euler)
}

pub fn vertex_link(tri: &Triangulation, v: usize) -> VertexLink {
    let sk = tri.skeleton();
    let corners = sk.vertices[v].corners.clone();
    let c = count(tri, &corners);
    let euler = c.vertices as i64 - c.edges as i64 + corners.len() as i64;
    let genus = (2 - euler - c.boundary as i64) / 2;
    VertexLink {
        triangles: corners,
        adjacent: c.adjacent,
        vertices: c.vertices,
        edges: c.edges,
        boundary_components: c.boundary,
        euler,
        // Links in a coherently oriented triangulation inherit an orientation.
        orientable: true,
        genus,
        kind: kind_of(euler, c.boundary),
    }
}
