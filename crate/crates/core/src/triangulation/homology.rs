use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive};
use serde::Serialize;

use super::Triangulation;

/// First homology as Z^rank ⊕ torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1 {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for H1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 {
                "Z".into()
            } else {
                format!("{} Z", self.rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn snf_diagonal<T>(mut m: Vec<Vec<T>>) -> Option<Vec<T>>
where
    T: Clone + Integer + Signed + CheckedMul + CheckedSub,
{
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // Smallest nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if !m[i][j].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => m[i][j].abs() < m[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                        if m[i][j].abs().is_one() {
                            break;
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        loop {
            let p = m[r0][c0].clone();
            let mut dirty = false;
            for i in r0 + 1..rows {
                if m[i][c0].is_zero() {
                    continue;
                }
                let q = m[i][c0].div_floor(&p);
                for j in c0..cols {
                    let t = q.checked_mul(&m[r0][j])?;
                    m[i][j] = m[i][j].checked_sub(&t)?;
                }
                if !m[i][c0].is_zero() {
                    dirty = true;
                }
            }
            for j in c0 + 1..cols {
                if m[r0][j].is_zero() {
                    continue;
                }
                let q = m[r0][j].div_floor(&p);
                for i in r0..rows {
                    let t = q.checked_mul(&m[i][c0])?;
                    m[i][j] = m[i][j].checked_sub(&t)?;
                }
                if !m[r0][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remaining entry of the pivot row/column into place.
            let mut bi = r0;
            let mut bj = c0;
            for i in r0..rows {
                if !m[i][c0].is_zero() && m[i][c0].abs() < m[bi][bj].abs() {
                    bi = i;
                    bj = c0;
                }
            }
            for j in c0..cols {
                if !m[r0][j].is_zero() && m[r0][j].abs() < m[bi][bj].abs() {
                    bi = r0;
                    bj = j;
                }
            }
            m.swap(r0, bi);
            for row in m.iter_mut() {
                row.swap(c0, bj);
            }
        }
        diag.push(m[r0][c0].abs());
        r0 += 1;
        c0 += 1;
    }
    Some(diag)
}

/// Nonzero invariant factors of an integer matrix, normalised so each divides the next.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let small: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let diag: Vec<BigInt> = match snf_diagonal(small) {
        Some(d) => d.into_iter().map(BigInt::from).collect(),
        None => {
            let big: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            snf_diagonal(big).expect("bigint arithmetic cannot overflow")
        }
    };
    let mut d = diag;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// H1 from the dual cell structure: tetrahedra, interior faces and interior edges.
pub fn homology_h1(tri: &Triangulation) -> H1 {
    let sk = tri.skeleton();
    let n = tri.size();
    let faces: Vec<usize> = (0..sk.faces.len())
        .filter(|&f| !sk.faces[f].boundary())
        .collect();
    let mut fpos = vec![usize::MAX; sk.faces.len()];
    for (k, &f) in faces.iter().enumerate() {
        fpos[f] = k;
    }
    let edges: Vec<usize> = sk.interior_edges().map(|(k, _)| k).collect();

    // rank of the dual-graph incidence map is n minus its component count
    let mut dsu = super::skeleton::Dsu::new(n);
    for &f in &faces {
        let s = &sk.faces[f].sides;
        dsu.union(s[0].0, s[1].0);
    }
    let comps = (0..n).filter(|&i| dsu.find(i) == i).count();
    let rank_d1 = n - comps;

    let mut d2 = vec![vec![0i64; edges.len()]; faces.len()];
    for (c, &e) in edges.iter().enumerate() {
        for emb in &sk.edges[e].embeddings {
            let face = emb.perm.apply(3);
            let fid = sk.face_of[emb.tet][face];
            let sign = if sk.faces[fid].sides[0] == (emb.tet, face) {
                1
            } else {
                -1
            };
            d2[fpos[fid]][c] += sign;
        }
    }
    let inv = smith_invariants(&d2);
    let rank_d2 = inv.len();
    let torsion = inv
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion fits in u64"))
        .collect();
    H1 {
        rank: faces.len() - rank_d1 - rank_d2,
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;

    #[test]
    fn fig8_h1() {
        let t = Triangulation::parse(FIG8).unwrap();
        assert_eq!(
            homology_h1(&t),
            H1 {
                rank: 1,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn ball_h1() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        assert_eq!(
            homology_h1(&t),
            H1 {
                rank: 0,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn snf_known() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = smith_invariants(&m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }
}
