use super::link::{classify_link, LinkKind};
use super::Triangulation;
use crate::perm::{edge_index, Perm4, EDGE_VERTICES};

/// One appearance of an edge in a tetrahedron: `perm(0), perm(1)` are the
/// endpoints and `perm(2), perm(3)` the opposite edge, with `perm` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// Embeddings in walking order; for boundary edges the walk starts and ends on the boundary.
    pub embeddings: Vec<EdgeEmbedding>,
    pub boundary: bool,
    /// False when the edge is identified with itself in reverse.
    pub valid: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Clone, Debug)]
pub struct VertexClass {
    pub corners: Vec<(usize, usize)>,
    pub link: LinkKind,
    pub link_euler: i64,
}

impl VertexClass {
    pub fn boundary(&self) -> bool {
        self.link == LinkKind::Disc
    }

    pub fn ideal(&self) -> bool {
        matches!(self.link, LinkKind::Closed { .. })
    }

    pub fn internal(&self) -> bool {
        self.link == LinkKind::Sphere
    }
}

#[derive(Clone, Debug)]
pub struct FaceClass {
    /// One or two (tetrahedron, face) pairs; the first is the smaller.
    pub sides: Vec<(usize, usize)>,
}

impl FaceClass {
    pub fn boundary(&self) -> bool {
        self.sides.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryComponent {
    pub faces: Vec<(usize, usize)>,
    pub euler: i64,
}

impl BoundaryComponent {
    pub fn genus(&self) -> i64 {
        (2 - self.euler) / 2
    }
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub edges: Vec<EdgeClass>,
    pub edge_of: Vec<[usize; 6]>,
    pub vertices: Vec<VertexClass>,
    pub vertex_of: Vec<[usize; 4]>,
    pub faces: Vec<FaceClass>,
    pub face_of: Vec<[usize; 4]>,
    pub boundary: Vec<BoundaryComponent>,
}

impl Skeleton {
    pub fn interior_edges(&self) -> impl Iterator<Item = (usize, &EdgeClass)> {
        self.edges.iter().enumerate().filter(|(_, e)| !e.boundary)
    }

    /// Number of (tetrahedron, edge) incidences of the class containing edge `e` of `tet`.
    pub fn edge_incidence(&self, tet: usize, e: usize) -> usize {
        self.edges[self.edge_of[tet][e]].degree()
    }

    /// Vertices that are not on the boundary and not ideal.
    pub fn internal_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.internal()).count()
    }

    /// No internal vertices and exactly one vertex on each boundary component.
    pub fn vertex_condition(&self) -> bool {
        if self.internal_vertex_count() > 0 {
            return false;
        }
        let boundary_vertices = self.vertices.iter().filter(|v| v.boundary()).count();
        boundary_vertices == self.boundary.len()
    }

    /// Genus of each boundary component (compact boundary only), sorted.
    pub fn boundary_genera(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.boundary.iter().map(|b| b.genus()).collect();
        g.sort_unstable();
        g
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi] = lo;
        true
    }

    /// Dense class labels in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for i in 0..n {
            let r = self.find(i);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[i] = label[r];
        }
        (out, count)
    }
}

fn even_perm(a: usize, b: usize) -> Perm4 {
    let mut rest = (0..4).filter(|&x| x != a && x != b);
    let (c, d) = (rest.next().unwrap(), rest.next().unwrap());
    let p = Perm4::from_images(a, b, c, d);
    if p.is_odd() {
        Perm4::from_images(a, b, d, c)
    } else {
        p
    }
}

const SWAP23: Perm4 = Perm4([0, 1, 3, 2]);

fn step(tri: &Triangulation, emb: EdgeEmbedding, across: usize) -> Option<EdgeEmbedding> {
    let f = emb.perm.apply(across);
    tri.gluing(emb.tet, f).map(|(j, g)| EdgeEmbedding {
        tet: j,
        perm: g.compose(emb.perm).compose(SWAP23),
    })
}

pub fn compute_skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.size();

    // Edges: walk around each edge through the face gluings.
    let mut edge_of = vec![[usize::MAX; 6]; n];
    let mut edges = Vec::new();
    for t in 0..n {
        for e in 0..6 {
            if edge_of[t][e] != usize::MAX {
                continue;
            }
            let id = edges.len();
            let [a, b] = EDGE_VERTICES[e];
            let start = EdgeEmbedding {
                tet: t,
                perm: even_perm(a, b),
            };
            let mut valid = true;
            // Walk backwards to a boundary, if any.
            let mut first = start;
            let mut boundary = false;
            let mut guard = 0;
            loop {
                match step(tri, first, 2) {
                    None => {
                        boundary = true;
                        break;
                    }
                    Some(prev) => {
                        if prev.tet == start.tet && prev.perm == start.perm {
                            break;
                        }
                        first = prev;
                    }
                }
                guard += 1;
                if guard > 6 * n + 6 {
                    valid = false;
                    break;
                }
            }
            let mut embeddings = Vec::new();
            let mut cur = first;
            loop {
                let idx = edge_index(cur.perm.apply(0), cur.perm.apply(1));
                if edge_of[cur.tet][idx] == id {
                    // Revisited this tetrahedron edge: closed loop or a reversal.
                    let seen = embeddings.iter().any(|x: &EdgeEmbedding| *x == cur);
                    if !seen {
                        valid = false;
                    }
                    break;
                }
                edge_of[cur.tet][idx] = id;
                embeddings.push(cur);
                match step(tri, cur, 3) {
                    None => break,
                    Some(next) => {
                        if !boundary && next == embeddings[0] {
                            break;
                        }
                        cur = next;
                    }
                }
            }
            edges.push(EdgeClass {
                embeddings,
                boundary,
                valid,
            });
        }
    }

    // Vertices.
    let mut dsu = Dsu::new(4 * n);
    for t in 0..n {
        for f in 0..4 {
            if let Some((j, p)) = tri.gluing(t, f) {
                for a in (0..4).filter(|&a| a != f) {
                    dsu.union(4 * t + a, 4 * j + p.apply(a));
                }
            }
        }
    }
    let (vlabel, vcount) = dsu.labels();
    let mut vertex_of = vec![[0; 4]; n];
    let mut corners = vec![Vec::new(); vcount];
    for t in 0..n {
        for a in 0..4 {
            vertex_of[t][a] = vlabel[4 * t + a];
            corners[vlabel[4 * t + a]].push((t, a));
        }
    }
    let vertices = corners
        .into_iter()
        .map(|c| {
            let (link, link_euler) = classify_link(tri, &c);
            VertexClass {
                corners: c,
                link,
                link_euler,
            }
        })
        .collect();

    // Faces.
    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for t in 0..n {
        for f in 0..4 {
            if face_of[t][f] != usize::MAX {
                continue;
            }
            let id = faces.len();
            face_of[t][f] = id;
            let mut sides = vec![(t, f)];
            if let Some((j, p)) = tri.gluing(t, f) {
                face_of[j][p.apply(f)] = id;
                sides.push((j, p.apply(f)));
            }
            faces.push(FaceClass { sides });
        }
    }

    // Boundary components: boundary faces joined along boundary edges.
    let bfaces: Vec<(usize, usize)> = faces
        .iter()
        .filter(|fc| fc.boundary())
        .map(|fc| fc.sides[0])
        .collect();
    let mut boundary = Vec::new();
    if !bfaces.is_empty() {
        let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (k, &(t, f)) in bfaces.iter().enumerate() {
            for e in 0..6 {
                let [a, b] = EDGE_VERTICES[e];
                if a != f && b != f {
                    by_edge[edge_of[t][e]].push(k);
                }
            }
        }
        let mut d = Dsu::new(bfaces.len());
        for list in &by_edge {
            for w in list.windows(2) {
                d.union(w[0], w[1]);
            }
        }
        let (lab, count) = d.labels();
        let mut comp_faces = vec![Vec::new(); count];
        for (k, &bf) in bfaces.iter().enumerate() {
            comp_faces[lab[k]].push(bf);
        }
        for fs in comp_faces {
            let mut es = std::collections::BTreeSet::new();
            let mut vs = std::collections::BTreeSet::new();
            for &(t, f) in &fs {
                for e in 0..6 {
                    let [a, b] = EDGE_VERTICES[e];
                    if a != f && b != f {
                        es.insert(edge_of[t][e]);
                    }
                }
                for a in (0..4).filter(|&a| a != f) {
                    vs.insert(vertex_of[t][a]);
                }
            }
            let euler = vs.len() as i64 - es.len() as i64 + fs.len() as i64;
            boundary.push(BoundaryComponent { faces: fs, euler });
        }
    }

    Skeleton {
        edges,
        edge_of,
        vertices,
        vertex_of,
        faces,
        face_of,
        boundary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;

    #[test]
    fn fig8_skeleton() {
        let t = Triangulation::parse(FIG8).unwrap();
        let sk = t.skeleton();
        let mut deg: Vec<usize> = sk.edges.iter().map(|e| e.degree()).collect();
        deg.sort();
        assert_eq!(deg, vec![6, 6]);
        assert_eq!(sk.vertices.len(), 1);
        assert!(sk.edges.iter().all(|e| e.valid && !e.boundary));
        assert_eq!(sk.faces.len(), 4);
    }

    #[test]
    fn free_tet_skeleton() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        let sk = t.skeleton();
        assert_eq!(sk.edges.len(), 6);
        assert!(sk.edges.iter().all(|e| e.boundary && e.degree() == 1));
        assert_eq!(sk.vertices.len(), 4);
        assert_eq!(sk.boundary.len(), 1);
        assert_eq!(sk.boundary[0].euler, 2);
    }

    #[test]
    fn embeddings_are_even_and_consistent() {
        let t = Triangulation::parse(FIG8).unwrap();
        let sk = t.skeleton();
        for (k, e) in sk.edges.iter().enumerate() {
            for emb in &e.embeddings {
                assert!(!emb.perm.is_odd());
                let idx = edge_index(emb.perm.apply(0), emb.perm.apply(1));
                assert_eq!(sk.edge_of[emb.tet][idx], k);
            }
        }
    }
}
