use serde::{Deserialize, Serialize};

use crate::coords::{boundary_basis, boundary_functional, build_q_matching};
use crate::error::Result;
use crate::triangulation::Triangulation;

/// A cone `{x >= 0, A x = 0}` with admissibility triples: at most one coordinate of each
/// triple may be positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub dim: usize,
    pub equalities: Vec<Vec<i64>>,
    pub triples: Vec<[usize; 3]>,
}

impl ConeSpec {
    pub fn new(dim: usize, equalities: Vec<Vec<i64>>, triples: Vec<[usize; 3]>) -> ConeSpec {
        debug_assert!(equalities.iter().all(|r| r.len() == dim));
        ConeSpec {
            dim,
            equalities,
            triples,
        }
    }

    /// The Q-matching cone Q(T).
    pub fn q(tri: &Triangulation) -> ConeSpec {
        let m = build_q_matching(tri);
        ConeSpec::new(3 * tri.size(), m.rows, quad_triples(tri.size()))
    }

    /// The closed-surface cone Q0(T): Q(T) cut by both boundary functionals of every torus cusp.
    pub fn q0(tri: &Triangulation) -> Result<ConeSpec> {
        let mut spec = ConeSpec::q(tri);
        let sk = tri.skeleton();
        for (v, vc) in sk.vertices.iter().enumerate() {
            if vc.ideal() {
                for c in boundary_basis(tri, v)? {
                    spec.equalities.push(boundary_functional(tri, &c).coeffs);
                }
            }
        }
        Ok(spec)
    }

    pub fn is_admissible(&self, x: &[i64]) -> bool {
        x.iter().all(|&v| v >= 0)
            && self
                .triples
                .iter()
                .all(|t| t.iter().filter(|&&i| x[i] > 0).count() <= 1)
    }

    pub fn satisfies(&self, x: &[i64]) -> bool {
        self.equalities
            .iter()
            .all(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    /// Admissibility of a support set.
    pub(crate) fn support_admissible(&self, support: &[bool]) -> bool {
        self.triples
            .iter()
            .all(|t| t.iter().filter(|&&i| support[i]).count() <= 1)
    }
}

pub fn quad_triples(tets: usize) -> Vec<[usize; 3]> {
    (0..tets).map(|t| [3 * t, 3 * t + 1, 3 * t + 2]).collect()
}

/// A primitive nonnegative integer vector spanning an extremal ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray(pub Vec<i64>);

impl Ray {
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Sorts rays into the canonical order: descending lexicographic.
pub(crate) fn canonical_order(rays: &mut [Ray]) {
    rays.sort_by(|a, b| b.0.cmp(&a.0));
}
