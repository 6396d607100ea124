use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::moves::{
    close_book, collapse_edge, four_four, shell_boundary, three_two, two_three, two_zero_edge,
    two_zero_vertex, Tagged,
};
use super::{LinkKind, Skeleton, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplifyReport {
    pub seed: u64,
    pub tets_before: usize,
    pub tets_after: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub moves: usize,
    /// No internal vertices and exactly one vertex on each boundary component.
    pub vertex_condition: bool,
}

/// Topological data every move must preserve; boundary-changing moves are rejected when it moves.
#[derive(PartialEq, Eq)]
struct Fingerprint {
    components: usize,
    boundary: Vec<(i64, Vec<u32>)>,
    ideal: Vec<i64>,
}

fn fingerprint(t: &Tagged, sk: &Skeleton) -> Option<Fingerprint> {
    if sk.edges.iter().any(|e| !e.valid) || sk.vertices.iter().any(|v| v.link == LinkKind::Invalid)
    {
        return None;
    }
    let mut ideal: Vec<i64> = sk
        .vertices
        .iter()
        .filter_map(|v| match v.link {
            LinkKind::Closed { genus } => Some(genus),
            _ => None,
        })
        .collect();
    ideal.sort_unstable();
    Some(Fingerprint {
        components: t.tri.components().len(),
        boundary: t.boundary_profile(sk),
        ideal,
    })
}

/// Tries the reducing moves in a fixed order and applies the first that succeeds.
fn reduce_once(t: &Tagged, sk: &Skeleton, reference: &Fingerprint) -> Option<Tagged> {
    let ne = sk.edges.len();
    for v in 0..sk.vertices.len() {
        if let Some(r) = two_zero_vertex(t, sk, v) {
            if checked(&r, reference) {
                return Some(r);
            }
        }
    }
    for e in 0..ne {
        if let Some(r) = collapse_edge(t, sk, e) {
            if checked(&r, reference) {
                return Some(r);
            }
        }
    }
    for e in 0..ne {
        if let Some(r) = three_two(t, sk, e) {
            return Some(r);
        }
    }
    for e in 0..ne {
        if let Some(r) = two_zero_edge(t, sk, e) {
            if checked(&r, reference) {
                return Some(r);
            }
        }
    }
    for tet in 0..t.size() {
        if let Some(r) = shell_boundary(t, sk, tet) {
            if checked(&r, reference) {
                return Some(r);
            }
        }
    }
    None
}

fn checked(t: &Tagged, reference: &Fingerprint) -> bool {
    t.tri.check_manifold().is_ok() && fingerprint(t, &t.tri.skeleton()).as_ref() == Some(reference)
}

fn boundary_faces(t: &Tagged) -> usize {
    t.tri.boundary_face_count()
}

/// Greedy descent: reducing moves, then boundary book closures, until nothing applies.
fn greedy(t: &mut Tagged, reference: &Fingerprint, moves: &mut usize) {
    loop {
        let sk = t.tri.skeleton();
        if let Some(r) = reduce_once(t, &sk, reference) {
            *t = r;
            *moves += 1;
            continue;
        }
        let before = boundary_faces(t);
        let closed = (0..sk.edges.len())
            .filter_map(|e| close_book(t, &sk, e))
            .find(|r| boundary_faces(r) < before && checked(r, reference));
        match closed {
            Some(r) => {
                *t = r;
                *moves += 1;
            }
            None => break,
        }
    }
}

/// Reduces the number of tetrahedra and vertices with manifold-preserving moves. The count of
/// tetrahedra never increases: random excursions (4-4 and 2-3 moves followed by greedy descent)
/// are kept only when they end no larger than they started.
pub fn simplify_tagged(t: &mut Tagged, seed: u64) -> SimplifyReport {
    let sk = t.tri.skeleton();
    let tets_before = t.size();
    let vertices_before = sk.vertices.len();
    let mut moves = 0;
    let Some(reference) = fingerprint(t, &sk) else {
        return report(t, seed, tets_before, vertices_before, 0);
    };
    greedy(t, &reference, &mut moves);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let patience = 5 + t.size();
    let mut stale = 0;
    while stale < patience && !t.tri.is_empty() {
        let start = t.clone();
        let start_moves = moves;
        let start_vertices = t.tri.skeleton().vertices.len();
        let walk = 1 + rng.gen_range(0..=t.size().min(8));
        for _ in 0..walk {
            let sk = t.tri.skeleton();
            let mut deg4: Vec<usize> = sk
                .interior_edges()
                .filter(|(_, e)| e.degree() == 4)
                .map(|(k, _)| k)
                .collect();
            deg4.shuffle(&mut rng);
            let stepped = if deg4.is_empty() || rng.gen_bool(0.5) {
                None
            } else {
                deg4.iter()
                    .find_map(|&e| four_four(t, &sk, e, rng.gen_range(0..2)))
            };
            let stepped = stepped.or_else(|| {
                let mut faces: Vec<(usize, usize)> = (0..t.size())
                    .flat_map(|i| (0..4).map(move |f| (i, f)))
                    .collect();
                faces.shuffle(&mut rng);
                let near = |&(i, f): &(usize, usize)| {
                    (0..4).any(|v| v != f && sk.vertices[sk.vertex_of[i][v]].internal())
                };
                faces.sort_by_key(|x| !near(x));
                faces.into_iter().find_map(|(i, f)| two_three(t, i, f))
            });
            match stepped {
                Some(r) => {
                    *t = r;
                    moves += 1;
                }
                None => break,
            }
        }
        greedy(t, &reference, &mut moves);
        let vertices = t.tri.skeleton().vertices.len();
        if (t.size(), vertices) < (start.size(), start_vertices) {
            stale = 0;
        } else {
            if t.size() > start.size() || (t.size() == start.size() && vertices > start_vertices) {
                *t = start;
                moves = start_moves;
            }
            stale += 1;
        }
    }
    report(t, seed, tets_before, vertices_before, moves)
}

fn report(
    t: &Tagged,
    seed: u64,
    tets_before: usize,
    vertices_before: usize,
    moves: usize,
) -> SimplifyReport {
    let sk = t.tri.skeleton();
    SimplifyReport {
        seed,
        tets_before,
        tets_after: t.size(),
        vertices_before,
        vertices_after: sk.vertices.len(),
        moves,
        vertex_condition: sk.vertex_condition(),
    }
}

pub fn simplify(tri: &Triangulation, seed: u64) -> (Triangulation, SimplifyReport) {
    let mut t = Tagged::new(tri.clone());
    let r = simplify_tagged(&mut t, seed);
    (t.tri, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;
    use crate::triangulation::{homology_h1, truncate_ideal_vertices};

    #[test]
    fn fig8_stays_minimal() {
        let t = Triangulation::parse(FIG8).unwrap();
        let (s, r) = simplify(&t, 1);
        assert_eq!(s.size(), 2);
        assert_eq!(r.tets_after, 2);
    }

    #[test]
    fn truncated_fig8_shrinks() {
        let t = truncate_ideal_vertices(&Triangulation::parse(FIG8).unwrap()).unwrap();
        let (s, r) = simplify(&t, 7);
        assert!(r.tets_after < 56, "{r:?}");
        assert!(r.vertex_condition, "{r:?}");
        s.check_manifold().unwrap();
        assert_eq!(homology_h1(&s), homology_h1(&t));
        assert_eq!(s.skeleton().boundary_genera(), vec![1]);
    }

    #[test]
    fn deterministic() {
        let t = truncate_ideal_vertices(&Triangulation::parse(FIG8).unwrap()).unwrap();
        assert_eq!(simplify(&t, 3), simplify(&t, 3));
    }
}
