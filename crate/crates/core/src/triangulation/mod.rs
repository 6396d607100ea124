//! Triangulations of 3-manifolds, possibly with ideal vertices or boundary.

mod homology;
mod link;
pub mod moves;
mod simplify;
mod skeleton;
mod truncate;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::perm::Perm4;

pub use homology::{homology_h1, smith_invariants, H1};
pub use link::{vertex_link, LinkKind, VertexLink};
pub use simplify::{simplify, simplify_tagged, SimplifyReport};
pub(crate) use skeleton::Dsu;
pub use skeleton::{
    compute_skeleton, BoundaryComponent, EdgeClass, EdgeEmbedding, FaceClass, Skeleton, VertexClass,
};
pub use truncate::truncate_ideal_vertices;

/// Where face `f` of a tetrahedron goes: `None` for boundary, otherwise the
/// neighbouring tetrahedron and the vertex map onto it.
pub type Gluing = Option<(usize, Perm4)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

impl Triangulation {
    /// Builds and fully validates a triangulation.
    pub fn from_gluings(gluings: Vec<[Gluing; 4]>) -> Result<Triangulation> {
        let tri = Triangulation { gluings };
        tri.check_structure()?;
        tri.check_manifold()?;
        Ok(tri)
    }

    /// Builds without the manifold check; structural invariants are still asserted in debug builds.
    pub(crate) fn from_raw(gluings: Vec<[Gluing; 4]>) -> Triangulation {
        let tri = Triangulation { gluings };
        debug_assert!(tri.check_structure().is_ok(), "{:?}", tri.check_structure());
        tri
    }

    /// Builds without any checks; for results that are validated afterwards.
    pub(crate) fn from_unchecked(gluings: Vec<[Gluing; 4]>) -> Triangulation {
        Triangulation { gluings }
    }

    pub fn empty() -> Triangulation {
        Triangulation {
            gluings: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn skeleton(&self) -> Skeleton {
        compute_skeleton(self)
    }

    /// Involution, index range and orientation checks.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.size();
        for (i, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some((j, p)) = *g else { continue };
                if j >= n {
                    return Err(Error::OutOfRange(format!(
                        "tetrahedron {i} face {f} points to tetrahedron {j}"
                    )));
                }
                let back = p.apply(f);
                if j == i && back == f {
                    return Err(Error::NotManifold(format!(
                        "face {f} of tetrahedron {i} is glued to itself"
                    )));
                }
                match self.gluings[j][back] {
                    Some((k, q)) if k == i && q == p.inverse() => {}
                    _ => return Err(Error::NotInvolution { tet: i, face: f }),
                }
                if !p.is_odd() {
                    return Err(Error::Orientation { tet: i, face: f });
                }
            }
        }
        Ok(())
    }

    /// Rejects reversed edges and vertex links that are not spheres, discs or closed surfaces.
    pub fn check_manifold(&self) -> Result<()> {
        let sk = self.skeleton();
        for (k, e) in sk.edges.iter().enumerate() {
            if !e.valid {
                return Err(Error::NotManifold(format!(
                    "edge {k} is identified with itself in reverse"
                )));
            }
        }
        for (k, v) in sk.vertices.iter().enumerate() {
            if v.link == LinkKind::Invalid {
                return Err(Error::NotManifold(format!(
                    "link of vertex {k} is not a disc or closed surface"
                )));
            }
        }
        Ok(())
    }

    /// True if some vertex has a closed link other than a sphere.
    pub fn is_ideal(&self) -> bool {
        self.skeleton().vertices.iter().any(|v| v.ideal())
    }

    pub fn boundary_face_count(&self) -> usize {
        self.gluings
            .iter()
            .flatten()
            .filter(|g| g.is_none())
            .count()
    }

    pub fn parse(text: &str) -> Result<Triangulation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(Error::Syntax {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut hs = header.split_whitespace();
        if hs.next() != Some("tets") {
            return Err(Error::Syntax {
                line: hl,
                msg: "expected `tets <t>`".into(),
            });
        }
        let t: usize = hs
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Syntax {
                line: hl,
                msg: "bad tetrahedron count".into(),
            })?;
        if hs.next().is_some() {
            return Err(Error::Syntax {
                line: hl,
                msg: "trailing tokens".into(),
            });
        }
        let mut gluings = Vec::with_capacity(t);
        for _ in 0..t {
            let (ln, line) = lines.next().ok_or(Error::Syntax {
                line: hl,
                msg: format!("expected {t} tetrahedron lines"),
            })?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(Error::Syntax {
                    line: ln,
                    msg: format!("expected 4 faces, got {}", toks.len()),
                });
            }
            let mut row: [Gluing; 4] = [None; 4];
            for (f, tok) in toks.iter().enumerate() {
                if *tok == "-" {
                    continue;
                }
                let (j, p) = tok.split_once(':').ok_or(Error::Syntax {
                    line: ln,
                    msg: format!("bad face token `{tok}`"),
                })?;
                let j: usize = j.parse().map_err(|_| Error::Syntax {
                    line: ln,
                    msg: format!("bad tetrahedron index `{j}`"),
                })?;
                let p: Perm4 = p.parse().map_err(|_| Error::Syntax {
                    line: ln,
                    msg: format!("bad permutation `{p}`"),
                })?;
                row[f] = Some((j, p));
            }
            gluings.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Syntax {
                line: ln,
                msg: "unexpected trailing line".into(),
            });
        }
        Triangulation::from_gluings(gluings)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("tets {}\n", self.size());
        for faces in &self.gluings {
            let toks: Vec<String> = faces
                .iter()
                .map(|g| match g {
                    None => "-".to_string(),
                    Some((j, p)) => format!("{j}:{p}"),
                })
                .collect();
            let _ = writeln!(s, "{}", toks.join(" "));
        }
        s
    }

    /// Relabels vertices so that every gluing is odd; fails if non-orientable. Returns the
    /// tetrahedra whose vertices 2 and 3 were swapped.
    pub(crate) fn orient(gluings: &mut [[Gluing; 4]]) -> Result<Vec<bool>> {
        let n = gluings.len();
        let mut flip: Vec<Option<bool>> = vec![None; n];
        for root in 0..n {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for f in 0..4 {
                    let Some((j, p)) = gluings[i][f] else {
                        continue;
                    };
                    let want = flip[i].unwrap() ^ !p.is_odd();
                    match flip[j] {
                        None => {
                            flip[j] = Some(want);
                            stack.push(j);
                        }
                        Some(x) if x != want => {
                            return Err(Error::NotManifold("non-orientable".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
        let swap = Perm4::transposition(2, 3);
        let old = gluings.to_vec();
        for i in 0..n {
            let si = if flip[i].unwrap() {
                swap
            } else {
                Perm4::IDENTITY
            };
            for f in 0..4 {
                let nf = si.apply(f);
                gluings[i][nf] = old[i][f].map(|(j, p)| {
                    let sj = if flip[j].unwrap() {
                        swap
                    } else {
                        Perm4::IDENTITY
                    };
                    (j, sj.compose(p).compose(si.inverse()))
                });
            }
        }
        Ok(flip.into_iter().map(|f| f.unwrap()).collect())
    }

    /// Tetrahedra of each connected component, in increasing order; components are ordered by
    /// their smallest tetrahedron.
    pub fn component_members(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = out.len();
            let mut list = vec![root];
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                for g in self.gluings[i].iter().flatten() {
                    if comp[g.0] == usize::MAX {
                        comp[g.0] = out.len();
                        list.push(g.0);
                        stack.push(g.0);
                    }
                }
            }
            list.sort_unstable();
            out.push(list);
        }
        out
    }

    /// Splits into connected components; each keeps tetrahedra in increasing order.
    pub fn components(&self) -> Vec<Triangulation> {
        self.component_members()
            .iter()
            .map(|m| self.restrict(m))
            .collect()
    }

    /// Keeps only the given tetrahedra (in the given order); faces glued to dropped ones become boundary.
    pub fn restrict(&self, keep: &[usize]) -> Triangulation {
        let mut index = vec![usize::MAX; self.size()];
        for (k, &i) in keep.iter().enumerate() {
            index[i] = k;
        }
        let rows = keep
            .iter()
            .map(|&i| {
                self.gluings[i]
                    .map(|g| g.and_then(|(j, p)| (index[j] != usize::MAX).then(|| (index[j], p))))
            })
            .collect();
        Triangulation::from_raw(rows)
    }

    /// Relabels tetrahedra by `order[new] = old` and vertices of each tetrahedron by `vmap[old]`
    /// (old vertex `a` becomes `vmap[old](a)`).
    pub fn relabel(&self, order: &[usize], vmap: &[Perm4]) -> Triangulation {
        let n = self.size();
        let mut pos = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let mut rows = vec![[None; 4]; n];
        for i in 0..n {
            let s = vmap[i];
            for f in 0..4 {
                rows[pos[i]][s.apply(f)] = self.gluings[i][f]
                    .map(|(j, p)| (pos[j], vmap[j].compose(p).compose(s.inverse())));
            }
        }
        Triangulation::from_raw(rows)
    }

    /// Exhaustive isomorphism test (relabelings of tetrahedra and vertices); intended for small inputs.
    pub fn is_isomorphic(&self, other: &Triangulation) -> bool {
        let n = self.size();
        if n != other.size() {
            return false;
        }
        if n == 0 {
            return true;
        }
        // Fix the image of tetrahedron 0 of each component and propagate along gluings.
        let comps_a = self.components();
        let comps_b = other.components();
        if comps_a.len() != comps_b.len() {
            return false;
        }
        if comps_a.len() > 1 {
            let mut used = vec![false; comps_b.len()];
            'outer: for a in &comps_a {
                for (k, b) in comps_b.iter().enumerate() {
                    if !used[k] && a.is_isomorphic(b) {
                        used[k] = true;
                        continue 'outer;
                    }
                }
                return false;
            }
            return true;
        }
        for start in 0..n {
            for p0 in Perm4::all() {
                let mut image: Vec<Option<(usize, Perm4)>> = vec![None; n];
                let mut taken = vec![false; n];
                image[0] = Some((start, p0));
                taken[start] = true;
                let mut stack = vec![0usize];
                let mut ok = true;
                while let Some(i) = stack.pop() {
                    let (ti, pi) = image[i].unwrap();
                    for f in 0..4 {
                        let ga = self.gluings[i][f];
                        let gb = other.gluings[ti][pi.apply(f)];
                        match (ga, gb) {
                            (None, None) => {}
                            (Some((j, p)), Some((tj, q))) => {
                                let pj = q.compose(pi).compose(p.inverse());
                                match image[j] {
                                    None => {
                                        if taken[tj] {
                                            ok = false;
                                            break;
                                        }
                                        taken[tj] = true;
                                        image[j] = Some((tj, pj));
                                        stack.push(j);
                                    }
                                    Some(x) if x == (tj, pj) => {}
                                    _ => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                if ok {
                    return true;
                }
            }
        }
        false
    }
}

impl std::str::FromStr for Triangulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Triangulation::parse(s)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const FIG8: &str =
        "tets 2\n1:0132 1:1230 1:3012 1:1023\n0:0132 0:1230 0:3012 0:1023\n";

    #[test]
    fn parse_fig8() {
        let t = Triangulation::parse(FIG8).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), t);
        assert!(t.is_ideal());
    }

    #[test]
    fn free_tet() {
        let t = Triangulation::parse("# one\ntets 1\n- - - -\n").unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.boundary_face_count(), 4);
        assert!(!t.is_ideal());
    }

    #[test]
    fn involution_error() {
        let err = Triangulation::parse("tets 2\n1:1023 - - -\n- 0:0132 - -\n").unwrap_err();
        assert!(matches!(err, Error::NotInvolution { .. }), "{err:?}");
    }

    #[test]
    fn orientation_error() {
        let err = Triangulation::parse("tets 2\n1:0123 - - -\n0:0123 - - -\n").unwrap_err();
        assert!(matches!(err, Error::Orientation { .. }), "{err:?}");
    }

    #[test]
    fn syntax_and_range_errors() {
        assert!(matches!(
            Triangulation::parse("tet 1\n- - - -\n"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Triangulation::parse("tets 1\n- - -\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            Triangulation::parse("tets 1\n3:0132 - - -\n"),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            Triangulation::parse("tets 1\n0:0132 - - -\n"),
            Err(Error::NotManifold(_))
        ));
    }

    #[test]
    fn orient_fixes_parity() {
        let mut g: Vec<[Gluing; 4]> = vec![
            [Some((1, Perm4::IDENTITY)), None, None, None],
            [Some((0, Perm4::IDENTITY)), None, None, None],
        ];
        Triangulation::orient(&mut g).unwrap();
        let t = Triangulation::from_gluings(g).unwrap();
        assert_eq!(t.skeleton().edges.len(), 9);
    }

    #[test]
    fn relabel_is_isomorphic() {
        let t = Triangulation::parse(FIG8).unwrap();
        let r = t.relabel(&[1, 0], &[Perm4::IDENTITY, Perm4::IDENTITY]);
        assert!(t.is_isomorphic(&r));
        let odd = Perm4::transposition(0, 1);
        let r2 = t.relabel(
            &[0, 1],
            &[
                Perm4([1, 2, 3, 0]).compose(odd),
                Perm4([1, 2, 3, 0]).compose(odd),
            ],
        );
        r2.check_structure().unwrap();
        assert!(t.is_isomorphic(&r2));
    }
}
