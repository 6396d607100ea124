use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A permutation of {0,1,2,3}, stored as its images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm4(images))
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut p = [0, 1, 2, 3];
        p.swap(a, b);
        Perm4(p)
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    pub fn inverse(self) -> Perm4 {
        let mut r = [0u8; 4];
        for i in 0..4 {
            r[self.0[i] as usize] = i as u8;
        }
        Perm4(r)
    }

    pub fn is_odd(self) -> bool {
        let mut inv = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                if self.0[a] > self.0[b] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..24usize).map(|mut k| {
            let mut pool = vec![0u8, 1, 2, 3];
            let mut out = [0u8; 4];
            for (i, slot) in out.iter_mut().enumerate() {
                let f = [6, 2, 1, 1][i];
                *slot = pool.remove(k / f);
                k %= f;
            }
            Perm4(out)
        })
    }

    /// The permutation sending 0,1,2,3 to the given four distinct labels.
    pub fn from_images(a: usize, b: usize, c: usize, d: usize) -> Perm4 {
        Perm4([a as u8, b as u8, c as u8, d as u8])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl FromStr for Perm4 {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let b = s.as_bytes();
        if b.len() != 4 {
            return Err(());
        }
        let mut img = [0u8; 4];
        for i in 0..4 {
            if !(b'0'..=b'3').contains(&b[i]) {
                return Err(());
            }
            img[i] = b[i] - b'0';
        }
        Perm4::new(img).ok_or(())
    }
}

/// Vertex pairs of the six edges of a tetrahedron.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Index of the edge joining vertices `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge between {a} and {b}"),
    }
}

/// Quad type separating `a,b` from the other two vertices: 0 = 01|23, 1 = 02|13, 2 = 03|12.
pub fn quad_type(a: usize, b: usize) -> usize {
    debug_assert!(a != b);
    let other = if a == 0 {
        b
    } else if b == 0 {
        a
    } else {
        6 - a - b
    };
    other - 1
}

/// The two vertex pairs of a quad type, the first containing vertex 0.
pub fn quad_pairs(q: usize) -> [[usize; 2]; 2] {
    match q {
        0 => [[0, 1], [2, 3]],
        1 => [[0, 2], [1, 3]],
        2 => [[0, 3], [1, 2]],
        _ => panic!("bad quad type {q}"),
    }
}

/// Whether quad type `q` crosses the edge joining `a` and `b`.
pub fn quad_meets_edge(q: usize, a: usize, b: usize) -> bool {
    quad_type(a, b) != q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_perms_distinct() {
        let v: Vec<_> = Perm4::all().collect();
        let mut s = v.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 24);
        assert_eq!(v.iter().filter(|p| p.is_odd()).count(), 12);
    }

    #[test]
    fn compose_inverse() {
        for p in Perm4::all() {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                assert_eq!(p.compose(q).is_odd(), p.is_odd() ^ q.is_odd());
            }
        }
    }

    #[test]
    fn quad_types() {
        assert_eq!(quad_type(0, 1), 0);
        assert_eq!(quad_type(2, 3), 0);
        assert_eq!(quad_type(1, 3), 1);
        assert_eq!(quad_type(3, 0), 2);
        assert_eq!(quad_type(1, 2), 2);
        assert!(!quad_meets_edge(0, 2, 3));
        assert!(quad_meets_edge(0, 0, 2));
    }

    #[test]
    fn parse_roundtrip() {
        let p: Perm4 = "1302".parse().unwrap();
        assert_eq!(p.to_string(), "1302");
        assert!("1102".parse::<Perm4>().is_err());
        assert!("0124".parse::<Perm4>().is_err());
    }
}
