use serde::{Deserialize, Serialize};

/// Quadrilateral coordinates: three per tetrahedron, in quad-type order 01|23, 02|13, 03|12.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(pub Vec<i64>);

/// Standard coordinates: four triangles then three quads per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StdVector(pub Vec<i64>);

impl QVector {
    pub fn zero(tets: usize) -> QVector {
        QVector(vec![0; 3 * tets])
    }

    pub fn tets(&self) -> usize {
        self.0.len() / 3
    }

    pub fn quad(&self, tet: usize, q: usize) -> i64 {
        self.0[3 * tet + q]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl StdVector {
    pub fn zero(tets: usize) -> StdVector {
        StdVector(vec![0; 7 * tets])
    }

    pub fn tets(&self) -> usize {
        self.0.len() / 7
    }

    pub fn tri(&self, tet: usize, v: usize) -> i64 {
        self.0[7 * tet + v]
    }

    pub fn quad(&self, tet: usize, q: usize) -> i64 {
        self.0[7 * tet + 4 + q]
    }

    pub fn tri_index(tet: usize, v: usize) -> usize {
        7 * tet + v
    }

    pub fn quad_index(tet: usize, q: usize) -> usize {
        7 * tet + 4 + q
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn has_quads(&self) -> bool {
        (0..self.tets()).any(|t| (0..3).any(|q| self.quad(t, q) != 0))
    }

    pub fn scaled(&self, k: i64) -> StdVector {
        StdVector(self.0.iter().map(|x| x * k).collect())
    }
}

pub trait Admissible {
    fn is_admissible(&self) -> bool;
}

fn admissible_quads(quads: impl Iterator<Item = [i64; 3]>) -> bool {
    quads
        .into_iter()
        .all(|q| q.iter().filter(|&&x| x > 0).count() <= 1)
}

impl Admissible for QVector {
    fn is_admissible(&self) -> bool {
        self.0.len() % 3 == 0
            && self.0.iter().all(|&x| x >= 0)
            && admissible_quads(self.0.chunks(3).map(|c| [c[0], c[1], c[2]]))
    }
}

impl Admissible for StdVector {
    fn is_admissible(&self) -> bool {
        self.0.len() % 7 == 0
            && self.0.iter().all(|&x| x >= 0)
            && admissible_quads(self.0.chunks(7).map(|c| [c[4], c[5], c[6]]))
    }
}

pub fn is_admissible<V: Admissible>(x: &V) -> bool {
    x.is_admissible()
}

pub fn project_std_to_q(x: &StdVector) -> QVector {
    QVector(x.0.chunks(7).flat_map(|c| c[4..7].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(is_admissible(&QVector(vec![2, 0, 0, 0, 0, 1])));
        assert!(!is_admissible(&QVector(vec![1, 1, 0, 0, 0, 0])));
        assert!(!is_admissible(&QVector(vec![-1, 0, 0])));
        assert!(is_admissible(&StdVector(vec![1, 1, 1, 1, 0, 0, 0])));
        assert!(!is_admissible(&StdVector(vec![0, 0, 0, 0, 1, 0, 1])));
    }

    #[test]
    fn projection() {
        assert_eq!(project_std_to_q(&StdVector::zero(2)), QVector::zero(2));
        let link = StdVector(vec![1, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0]);
        assert!(project_std_to_q(&link).is_zero());
        let x = StdVector(vec![0, 1, 0, 0, 0, 2, 0]);
        assert_eq!(project_std_to_q(&x), QVector(vec![0, 2, 0]));
    }
}
