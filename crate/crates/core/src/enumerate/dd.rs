use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::cone::{canonical_order, ConeSpec, Ray};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Candidate {
    v: Vec<BigInt>,
    support: Bits,
}

fn make(v: Vec<BigInt>) -> Candidate {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let v: Vec<BigInt> = if g.is_zero() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    };
    let mut support = Bits::new(v.len());
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            support.set(i);
        }
    }
    Candidate { v, support }
}

fn admissible(spec: &ConeSpec, s: &Bits) -> bool {
    spec.triples
        .iter()
        .all(|t| t.iter().filter(|&&i| s.get(i)).count() <= 1)
}

/// Double description over the nonnegative orthant, one equation at a time. Combinations whose
/// support is not admissible are never formed: any descendant would contain that support.
pub fn enumerate_admissible_rays(spec: &ConeSpec) -> Vec<Ray> {
    let n = spec.dim;
    let mut rays: Vec<Candidate> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(1);
            make(v)
        })
        .collect();
    for row in &spec.equalities {
        if row.iter().all(|&x| x == 0) {
            continue;
        }
        let h: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
        let vals: Vec<BigInt> = rays
            .iter()
            .map(|r| r.v.iter().zip(&h).map(|(a, b)| a * b).sum::<BigInt>())
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let combos: Vec<Candidate> = pos
            .par_iter()
            .flat_map_iter(|&p| {
                let rays = &rays;
                let vals = &vals;
                neg.iter().filter_map(move |&q| {
                    let union = rays[p].support.or(&rays[q].support);
                    if !admissible(spec, &union) {
                        return None;
                    }
                    let blocked = rays
                        .iter()
                        .enumerate()
                        .any(|(k, r)| k != p && k != q && r.support.subset_of(&union));
                    if blocked {
                        return None;
                    }
                    let a = &vals[p];
                    let b = -&vals[q];
                    let v = rays[q]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(x, y)| a * x + &b * y)
                        .collect();
                    Some(make(v))
                })
            })
            .collect();
        let mut next: Vec<Candidate> = Vec::with_capacity(combos.len());
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                next.push(r);
            }
        }
        next.extend(combos);
        rays = next;
    }
    let mut out: Vec<Ray> = rays
        .into_iter()
        .map(|c| {
            Ray(c
                .v
                .iter()
                .map(|x| x.to_i64().expect("ray coordinate exceeds i64"))
                .collect())
        })
        .collect();
    canonical_order(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::tests::FIG8;
    use crate::Triangulation;

    #[test]
    fn fig8_q() {
        let t = Triangulation::parse(FIG8).unwrap();
        let rays = enumerate_admissible_rays(&ConeSpec::q(&t));
        let got: Vec<Vec<i64>> = rays.into_iter().map(|r| r.0).collect();
        assert_eq!(
            got,
            vec![
                vec![2, 0, 0, 0, 0, 1],
                vec![0, 2, 0, 0, 0, 1],
                vec![0, 0, 1, 2, 0, 0],
                vec![0, 0, 1, 0, 2, 0]
            ]
        );
    }

    #[test]
    fn fig8_q0_empty() {
        let t = Triangulation::parse(FIG8).unwrap();
        assert!(enumerate_admissible_rays(&ConeSpec::q0(&t).unwrap()).is_empty());
    }

    #[test]
    fn one_tet_no_equations() {
        let spec = ConeSpec::new(3, vec![], vec![[0, 1, 2]]);
        let got: Vec<Vec<i64>> = enumerate_admissible_rays(&spec)
            .into_iter()
            .map(|r| r.0)
            .collect();
        assert_eq!(got, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }
}
