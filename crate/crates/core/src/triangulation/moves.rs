//! Local moves that preserve the underlying manifold. Every move works on a [`Tagged`]
//! triangulation so that boundary faces keep their tags, and returns `None` when its
//! preconditions fail.

use std::collections::BTreeMap;

use super::{Dsu, Gluing, Skeleton, Triangulation};
use crate::error::{Error, Result};
use crate::perm::{edge_index, Perm4};

/// A triangulation with a tag on every boundary face. Tags on interior faces are meaningless.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged {
    pub tri: Triangulation,
    pub tags: Vec<[u32; 4]>,
}

impl Tagged {
    pub fn new(tri: Triangulation) -> Tagged {
        let tags = vec![[0; 4]; tri.size()];
        Tagged { tri, tags }
    }

    pub fn size(&self) -> usize {
        self.tri.size()
    }

    pub fn components(&self) -> Vec<Tagged> {
        self.tri
            .component_members()
            .into_iter()
            .map(|m| Tagged {
                tri: self.tri.restrict(&m),
                tags: m.iter().map(|&i| self.tags[i]).collect(),
            })
            .collect()
    }

    /// Per boundary component: its genus and the sorted distinct tags on its faces.
    pub fn boundary_profile(&self, sk: &Skeleton) -> Vec<(i64, Vec<u32>)> {
        let mut out: Vec<(i64, Vec<u32>)> = sk
            .boundary
            .iter()
            .map(|b| {
                let mut t: Vec<u32> = b.faces.iter().map(|&(i, f)| self.tags[i][f]).collect();
                t.sort_unstable();
                t.dedup();
                (b.genus(), t)
            })
            .collect();
        out.sort();
        out
    }

    /// Genus of each boundary component carrying `tag`.
    pub fn genera_with_tag(&self, tag: u32) -> Vec<i64> {
        let sk = self.tri.skeleton();
        self.boundary_profile(&sk)
            .into_iter()
            .filter(|(_, t)| t.contains(&tag))
            .map(|(g, _)| g)
            .collect()
    }

    pub(crate) fn from_parts(rows: Vec<[Gluing; 4]>, mut tags: Vec<[u32; 4]>) -> Option<Tagged> {
        let mut rows = rows;
        let flips = Triangulation::orient(&mut rows).ok()?;
        let swap = Perm4::transposition(2, 3);
        for (i, flip) in flips.into_iter().enumerate() {
            if flip {
                let old = tags[i];
                for f in 0..4 {
                    tags[i][swap.apply(f)] = old[f];
                }
            }
        }
        let tri = Triangulation::from_unchecked(rows);
        tri.check_structure().ok()?;
        Some(Tagged { tri, tags })
    }
}

fn face_key(labels: &[u32; 4], f: usize) -> [u32; 3] {
    let mut k = [0; 3];
    let mut n = 0;
    for (v, &l) in labels.iter().enumerate() {
        if v != f {
            k[n] = l;
            n += 1;
        }
    }
    k.sort_unstable();
    k
}

/// Replaces the `old` tetrahedra, whose vertices carry labels, by `new` tetrahedra given as label
/// quadruples. Faces are matched through their label sets.
pub(crate) fn replace(t: &Tagged, old: &[(usize, [u32; 4])], new: &[[u32; 4]]) -> Option<Tagged> {
    let n = t.size();
    let mut pos = vec![usize::MAX; n];
    for (k, &(i, _)) in old.iter().enumerate() {
        if pos[i] != usize::MAX {
            return None;
        }
        pos[i] = k;
    }
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    for i in 0..n {
        if pos[i] == usize::MAX {
            index[i] = count;
            count += 1;
        }
    }
    let total = count + new.len();
    let mut rows: Vec<[Gluing; 4]> = vec![[None; 4]; total];
    let mut tags = vec![[0u32; 4]; total];
    for i in (0..n).filter(|&i| pos[i] == usize::MAX) {
        tags[index[i]] = t.tags[i];
        for f in 0..4 {
            if let Some((j, p)) = t.tri.gluing(i, f) {
                if pos[j] == usize::MAX {
                    rows[index[i]][f] = Some((index[j], p));
                }
            }
        }
    }
    enum Outer {
        Glued {
            k: usize,
            f: usize,
            j: usize,
            p: Perm4,
        },
        /// Glued to another replaced tetrahedron, not along a face that disappears.
        Paired {
            k: usize,
            f: usize,
            kj: usize,
            p: Perm4,
        },
        Free(u32),
    }
    let mut faces: BTreeMap<[u32; 3], Vec<(usize, usize)>> = BTreeMap::new();
    for (m, lab) in new.iter().enumerate() {
        for r in 0..4 {
            faces.entry(face_key(lab, r)).or_default().push((m, r));
        }
    }
    let mut outer: Vec<([u32; 3], Outer)> = Vec::new();
    for (k, &(i, lab)) in old.iter().enumerate() {
        for f in 0..4 {
            let key = face_key(&lab, f);
            match t.tri.gluing(i, f) {
                None => outer.push((key, Outer::Free(t.tags[i][f]))),
                Some((j, p)) if pos[j] == usize::MAX => {
                    outer.push((key, Outer::Glued { k, f, j, p }))
                }
                Some((j, p)) => {
                    let kj = pos[j];
                    let other = old[kj].1;
                    let same = (0..4)
                        .filter(|&v| v != f)
                        .all(|v| lab[v] == other[p.apply(v)]);
                    if !(same && !faces.contains_key(&key)) {
                        outer.push((key, Outer::Paired { k, f, kj, p }));
                    }
                }
            }
        }
    }
    let find = |lab: &[u32; 4], l: u32| lab.iter().position(|&x| x == l);
    let single = |key: &[u32; 3]| match faces.get(key).map(|v| &v[..]) {
        Some([x]) => Some(*x),
        _ => None,
    };
    let mut used = 0;
    for (key, o) in &outer {
        let (m, r) = single(key)?;
        used += 1;
        match *o {
            Outer::Free(tag) => tags[count + m][r] = tag,
            Outer::Glued { k, f, j, p } => {
                let mut img = [0u8; 4];
                img[r] = p.apply(f) as u8;
                for s in (0..4).filter(|&s| s != r) {
                    img[s] = p.apply(find(&old[k].1, new[m][s])?) as u8;
                }
                let q = Perm4::new(img)?;
                rows[count + m][r] = Some((index[j], q));
                rows[index[j]][p.apply(f)] = Some((count + m, q.inverse()));
            }
            Outer::Paired { k, f, kj, p } => {
                let (m2, r2) = single(&face_key(&old[kj].1, p.apply(f)))?;
                if (m2, r2) == (m, r) {
                    return None;
                }
                let mut img = [0u8; 4];
                img[r] = r2 as u8;
                for s in (0..4).filter(|&s| s != r) {
                    let v = find(&old[k].1, new[m][s])?;
                    img[s] = find(&new[m2], old[kj].1[p.apply(v)])? as u8;
                }
                let q = Perm4::new(img)?;
                rows[count + m][r] = Some((count + m2, q));
                rows[count + m2][r2] = Some((count + m, q.inverse()));
            }
        }
    }
    let mut internal = 0;
    for (key, list) in &faces {
        match list[..] {
            [(m1, r1), (m2, r2)] => {
                if outer.iter().any(|(k, _)| k == key) {
                    return None;
                }
                let mut img = [0u8; 4];
                img[r1] = r2 as u8;
                for s in (0..4).filter(|&s| s != r1) {
                    img[s] = find(&new[m2], new[m1][s])? as u8;
                }
                let q = Perm4::new(img)?;
                rows[count + m1][r1] = Some((count + m2, q));
                rows[count + m2][r2] = Some((count + m1, q.inverse()));
                internal += 2;
            }
            [_] => {}
            _ => return None,
        }
    }
    if used + internal != 4 * new.len() {
        return None;
    }
    Tagged::from_parts(rows, tags)
}

/// Deletes the `removed` tetrahedra, which are flattened: entering one through face `g` leads out
/// of removed tetrahedron `u` through face `h` with vertex map `tau`, where
/// `(u, h, tau) = partner(tet, g)`.
/// Survivors are glued along these chains; chain ends on the boundary keep the tag found there.
/// Also returns the surviving faces whose chain came back to themselves (left as boundary).
pub(crate) fn flatten(
    t: &Tagged,
    removed: &[bool],
    partner: impl Fn(usize, usize) -> (usize, usize, Perm4),
) -> Result<(Vec<[Gluing; 4]>, Vec<[u32; 4]>, Vec<(usize, usize)>)> {
    let n = t.size();
    let mut index = vec![usize::MAX; n];
    let mut k = 0;
    for i in 0..n {
        if !removed[i] {
            index[i] = k;
            k += 1;
        }
    }
    let mut rows = vec![[None; 4]; k];
    let mut tags = vec![[0; 4]; k];
    let mut folded = Vec::new();
    for s in (0..n).filter(|&s| !removed[s]) {
        for f in 0..4 {
            tags[index[s]][f] = t.tags[s][f];
            let Some((mut cur, mut p)) = t.tri.gluing(s, f) else {
                continue;
            };
            let mut g = p.apply(f);
            let mut steps = 0;
            let mut open = false;
            while removed[cur] {
                let (u, h, tau) = partner(cur, g);
                debug_assert!(removed[u]);
                cur = u;
                p = tau.compose(p);
                match t.tri.gluing(cur, h) {
                    None => {
                        tags[index[s]][f] = t.tags[cur][h];
                        open = true;
                        break;
                    }
                    Some((j, q)) => {
                        p = q.compose(p);
                        g = q.apply(h);
                        cur = j;
                    }
                }
                steps += 1;
                if steps > 4 * n + 4 {
                    return Err(Error::Internal(
                        "flattening chain does not terminate".into(),
                    ));
                }
            }
            if open {
                continue;
            }
            if (cur, g) == (s, f) {
                folded.push((index[s], f));
                continue;
            }
            rows[index[s]][f] = Some((index[cur], p));
        }
    }
    Ok((rows, tags, folded))
}

fn flatten_move(
    t: &Tagged,
    removed: &[bool],
    partner: impl Fn(usize, usize) -> (usize, usize, Perm4),
) -> Option<Tagged> {
    let (rows, tags, folded) = flatten(t, removed, partner).ok()?;
    if !folded.is_empty() {
        return None;
    }
    let tri = Triangulation::from_unchecked(rows);
    tri.check_structure().ok()?;
    Some(Tagged { tri, tags })
}

/// Vertex labels around an edge: ends 0 and 1, the link vertices `2 + k` in walking order.
fn edge_labels(sk: &Skeleton, e: usize) -> Vec<(usize, [u32; 4])> {
    let embs = &sk.edges[e].embeddings;
    let d = embs.len() as u32;
    embs.iter()
        .enumerate()
        .map(|(k, emb)| {
            let k = k as u32;
            let mut lab = [0u32; 4];
            lab[emb.perm.apply(0)] = 0;
            lab[emb.perm.apply(1)] = 1;
            lab[emb.perm.apply(2)] = 2 + k;
            lab[emb.perm.apply(3)] = 2 + (k + d - 1) % d;
            (emb.tet, lab)
        })
        .collect()
}

fn distinct_tets(sk: &Skeleton, e: usize) -> bool {
    let mut ts: Vec<usize> = sk.edges[e].embeddings.iter().map(|x| x.tet).collect();
    ts.sort_unstable();
    ts.windows(2).all(|w| w[0] != w[1])
}

/// Three tetrahedra around an interior edge of degree three become two.
pub fn three_two(t: &Tagged, sk: &Skeleton, e: usize) -> Option<Tagged> {
    let ec = &sk.edges[e];
    if ec.boundary || !ec.valid || ec.degree() != 3 || !distinct_tets(sk, e) {
        return None;
    }
    replace(t, &edge_labels(sk, e), &[[0, 2, 3, 4], [1, 2, 3, 4]])
}

/// Two tetrahedra sharing a face become three around a new edge.
pub fn two_three(t: &Tagged, tet: usize, face: usize) -> Option<Tagged> {
    let (j, p) = t.tri.gluing(tet, face)?;
    if j == tet {
        return None;
    }
    let mut a = [0u32; 4];
    let mut b = [0u32; 4];
    a[face] = 0;
    b[p.apply(face)] = 1;
    let vs: Vec<usize> = (0..4).filter(|&v| v != face).collect();
    for &v in &vs {
        a[v] = 2 + v as u32;
        b[p.apply(v)] = 2 + v as u32;
    }
    let x = |v: usize| 2 + v as u32;
    let new = [
        [0, 1, x(vs[0]), x(vs[1])],
        [0, 1, x(vs[1]), x(vs[2])],
        [0, 1, x(vs[2]), x(vs[0])],
    ];
    replace(t, &[(tet, a), (j, b)], &new)
}

/// Four tetrahedra around an interior edge of degree four, retriangulated around the other
/// diagonal `axis` (0 or 1) of the surrounding octahedron.
pub fn four_four(t: &Tagged, sk: &Skeleton, e: usize, axis: usize) -> Option<Tagged> {
    let ec = &sk.edges[e];
    if ec.boundary || !ec.valid || ec.degree() != 4 || !distinct_tets(sk, e) {
        return None;
    }
    let x = |k: usize| 2 + ((axis + k) % 4) as u32;
    let new = [
        [0, x(0), x(2), x(1)],
        [0, x(0), x(2), x(3)],
        [1, x(0), x(2), x(1)],
        [1, x(0), x(2), x(3)],
    ];
    replace(t, &edge_labels(sk, e), &new)
}

/// Flattens the pillow formed by two tetrahedra around an interior edge of degree two.
pub fn two_zero_edge(t: &Tagged, sk: &Skeleton, e: usize) -> Option<Tagged> {
    let ec = &sk.edges[e];
    if ec.boundary || !ec.valid || ec.degree() != 2 || !distinct_tets(sk, e) {
        return None;
    }
    let [e0, e1] = [ec.embeddings[0], ec.embeddings[1]];
    let (p0, p1) = (e0.perm, e1.perm);
    let outer = |emb: super::EdgeEmbedding| {
        sk.edge_of[emb.tet][edge_index(emb.perm.apply(2), emb.perm.apply(3))]
    };
    if outer(e0) == outer(e1) {
        return None;
    }
    if sk.edges[outer(e0)].boundary && sk.edges[outer(e1)].boundary {
        return None;
    }
    for i in 0..2 {
        if sk.face_of[e0.tet][p0.apply(i)] == sk.face_of[e1.tet][p1.apply(i)] {
            return None;
        }
    }
    let mut removed = vec![false; t.size()];
    removed[e0.tet] = true;
    removed[e1.tet] = true;
    let swap = Perm4::transposition(2, 3);
    let a_to_b = p1.compose(swap).compose(p0.inverse());
    let (ta, tb) = (e0.tet, e1.tet);
    flatten_move(t, &removed, |tet, g| {
        if tet == ta {
            (tb, a_to_b.apply(g), a_to_b)
        } else {
            debug_assert_eq!(tet, tb);
            (ta, a_to_b.inverse().apply(g), a_to_b.inverse())
        }
    })
}

/// Removes an internal vertex lying in exactly two tetrahedra, gluing their opposite faces.
pub fn two_zero_vertex(t: &Tagged, sk: &Skeleton, v: usize) -> Option<Tagged> {
    if !sk.vertices[v].internal() {
        return None;
    }
    let corners: Vec<(usize, usize)> = (0..t.size())
        .flat_map(|i| (0..4).map(move |c| (i, c)))
        .filter(|&(i, c)| sk.vertex_of[i][c] == v)
        .collect();
    let [(ta, a), (tb, b)] = corners[..] else {
        return None;
    };
    if ta == tb {
        return None;
    }
    let (j, phi) = t.tri.gluing(ta, (a + 1) % 4)?;
    if j != tb || phi.apply(a) != b {
        return None;
    }
    for f in (0..4).filter(|&f| f != a) {
        if t.tri.gluing(ta, f) != Some((tb, phi)) {
            return None;
        }
    }
    match (t.tri.gluing(ta, a), t.tri.gluing(tb, b)) {
        (None, None) => return None,
        (Some((j, _)), _) if j == tb => return None,
        _ => {}
    }
    let mut removed = vec![false; t.size()];
    removed[ta] = true;
    removed[tb] = true;
    flatten_move(t, &removed, |tet, _| {
        if tet == ta {
            (tb, b, phi)
        } else {
            (ta, a, phi.inverse())
        }
    })
}

/// Shrinks an edge joining two distinct vertices to a point, flattening every tetrahedron
/// around it.
pub fn collapse_edge(t: &Tagged, sk: &Skeleton, e: usize) -> Option<Tagged> {
    let ec = &sk.edges[e];
    if !ec.valid || !distinct_tets(sk, e) {
        return None;
    }
    let emb = ec.embeddings[0];
    let (u, v) = (
        sk.vertex_of[emb.tet][emb.perm.apply(0)],
        sk.vertex_of[emb.tet][emb.perm.apply(1)],
    );
    if u == v {
        return None;
    }
    if sk.vertices[u].boundary() && sk.vertices[v].boundary() && !ec.boundary {
        return None;
    }
    if sk.vertices[u].ideal() || sk.vertices[v].ideal() {
        return None;
    }
    let mut edges = Dsu::new(sk.edges.len());
    let bnode = sk.faces.len();
    let mut faces = Dsu::new(sk.faces.len() + 1);
    let face_node = |tet: usize, f: usize| {
        let id = sk.face_of[tet][f];
        if sk.faces[id].boundary() {
            bnode
        } else {
            id
        }
    };
    for emb in &ec.embeddings {
        let p = emb.perm;
        for c in [2, 3] {
            let x = sk.edge_of[emb.tet][edge_index(p.apply(0), p.apply(c))];
            let y = sk.edge_of[emb.tet][edge_index(p.apply(1), p.apply(c))];
            if !edges.union(x, y) {
                return None;
            }
        }
        if !faces.union(
            face_node(emb.tet, p.apply(0)),
            face_node(emb.tet, p.apply(1)),
        ) {
            return None;
        }
    }
    let mut removed = vec![false; t.size()];
    let mut swap_of = vec![Perm4::IDENTITY; t.size()];
    for emb in &ec.embeddings {
        removed[emb.tet] = true;
        swap_of[emb.tet] = Perm4::transposition(emb.perm.apply(0), emb.perm.apply(1));
    }
    flatten_move(t, &removed, |tet, g| {
        (tet, swap_of[tet].apply(g), swap_of[tet])
    })
}

/// Removes a tetrahedron with one, two or three boundary faces, pushing the boundary inwards.
pub fn shell_boundary(t: &Tagged, sk: &Skeleton, tet: usize) -> Option<Tagged> {
    let bfaces: Vec<usize> = (0..4).filter(|&f| t.tri.gluing(tet, f).is_none()).collect();
    if (0..4).any(|f| matches!(t.tri.gluing(tet, f), Some((j, _)) if j == tet)) {
        return None;
    }
    match bfaces.len() {
        1 => {
            if !sk.vertices[sk.vertex_of[tet][bfaces[0]]].internal() {
                return None;
            }
        }
        2 => {
            let e = sk.edge_of[tet][edge_index(bfaces[0], bfaces[1])];
            if sk.edges[e].boundary || !sk.edges[e].valid {
                return None;
            }
        }
        3 => {}
        _ => return None,
    }
    let tag = t.tags[tet][bfaces[0]];
    let keep: Vec<usize> = (0..t.size()).filter(|&i| i != tet).collect();
    let mut tags: Vec<[u32; 4]> = keep.iter().map(|&i| t.tags[i]).collect();
    for f in (0..4).filter(|f| !bfaces.contains(f)) {
        let (j, p) = t.tri.gluing(tet, f).unwrap();
        let nj = if j > tet { j - 1 } else { j };
        tags[nj][p.apply(f)] = tag;
    }
    Some(Tagged {
        tri: t.tri.restrict(&keep),
        tags,
    })
}

/// Folds together the two boundary faces meeting along a boundary edge.
pub fn close_book(t: &Tagged, sk: &Skeleton, e: usize) -> Option<Tagged> {
    let ec = &sk.edges[e];
    if !ec.boundary || !ec.valid {
        return None;
    }
    let first = ec.embeddings[0];
    let last = *ec.embeddings.last().unwrap();
    let (p0, pn) = (first.perm, last.perm);
    let fa = (first.tet, p0.apply(2));
    let fb = (last.tet, pn.apply(3));
    if fa == fb || t.tri.gluing(fa.0, fa.1).is_some() || t.tri.gluing(fb.0, fb.1).is_some() {
        return None;
    }
    if sk.vertex_of[first.tet][p0.apply(3)] == sk.vertex_of[last.tet][pn.apply(2)] {
        return None;
    }
    for end in [0, 1] {
        let x = sk.edge_of[first.tet][edge_index(p0.apply(end), p0.apply(3))];
        let y = sk.edge_of[last.tet][edge_index(pn.apply(end), pn.apply(2))];
        if x == y {
            return None;
        }
    }
    let q = pn.compose(Perm4::transposition(2, 3)).compose(p0.inverse());
    let mut rows = t.tri.gluings().to_vec();
    rows[fa.0][fa.1] = Some((fb.0, q));
    rows[fb.0][fb.1] = Some((fa.0, q.inverse()));
    let tri = Triangulation::from_unchecked(rows);
    tri.check_structure().ok()?;
    Some(Tagged {
        tri,
        tags: t.tags.clone(),
    })
}
