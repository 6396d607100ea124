use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::vector::StdVector;
use crate::perm::quad_type;
use crate::triangulation::Triangulation;

/// Integer linear equations with one provenance tag per row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingSystem {
    pub rows: Vec<Vec<i64>>,
    pub provenance: Vec<String>,
}

impl MatchingSystem {
    pub fn empty() -> MatchingSystem {
        MatchingSystem {
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn annihilates(&self, x: &[i64]) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    pub fn push(&mut self, row: Vec<i64>, tag: String) {
        self.rows.push(row);
        self.provenance.push(tag);
    }

    /// Reduced row echelon form over the rationals, pivots in increasing column order.
    pub fn rref(&self) -> Vec<(usize, Vec<BigRational>)> {
        let mut m: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut out: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = BigRational::one() / m[r][c].clone();
            for x in m[r].iter_mut() {
                *x *= inv.clone();
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..cols {
                        let t = f.clone() * m[r][j].clone();
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
        for row in m.into_iter().take(r) {
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            out.push((c, row));
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rref().len()
    }
}

/// One row per interior edge: around the edge, each embedding contributes +1 to the quad
/// separating its 0th and 2nd vertices and -1 to the quad separating its 0th and 3rd.
pub fn build_q_matching(tri: &Triangulation) -> MatchingSystem {
    let sk = tri.skeleton();
    let mut sys = MatchingSystem::empty();
    for (k, e) in sk.interior_edges() {
        let mut row = vec![0i64; 3 * tri.size()];
        for emb in &e.embeddings {
            let p = emb.perm;
            row[3 * emb.tet + quad_type(p.apply(0), p.apply(2))] += 1;
            row[3 * emb.tet + quad_type(p.apply(0), p.apply(3))] -= 1;
        }
        sys.push(row, format!("edge {k}"));
    }
    sys
}

/// Three rows per internal face, one for each normal arc type in that face.
pub fn build_std_matching(tri: &Triangulation) -> MatchingSystem {
    let sk = tri.skeleton();
    let mut sys = MatchingSystem::empty();
    for (k, fc) in sk.faces.iter().enumerate() {
        if fc.boundary() {
            continue;
        }
        let (t, f) = fc.sides[0];
        let (j, p) = tri.gluing(t, f).unwrap();
        for v in (0..4).filter(|&v| v != f) {
            let mut row = vec![0i64; 7 * tri.size()];
            row[StdVector::tri_index(t, v)] += 1;
            row[StdVector::quad_index(t, quad_type(v, f))] += 1;
            row[StdVector::tri_index(j, p.apply(v))] -= 1;
            row[StdVector::quad_index(j, quad_type(p.apply(v), p.apply(f)))] -= 1;
            sys.push(row, format!("face {k} vertex {v}"));
        }
    }
    sys
}
