use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cone::{canonical_order, ConeSpec, Ray};
use crate::error::{Error, Result};

pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Positive primitive generator of the kernel restricted to `support`, when that kernel is a
/// line meeting the open orthant of the support.
fn support_ray(spec: &ConeSpec, support: &[usize]) -> Option<Vec<i64>> {
    let k = support.len();
    let mut m: Vec<Vec<BigRational>> = spec
        .equalities
        .iter()
        .map(|row| {
            support
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(row[c])))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m, k);
    if k - pivots.len() != 1 {
        return None;
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let mut x = vec![BigRational::zero(); k];
    x[free] = BigRational::one();
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -m[r][free].clone();
    }
    let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let mut ints: Vec<BigInt> = x
        .iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    if ints.iter().any(|v| v.is_zero()) {
        return None;
    }
    if ints[0].is_negative() {
        ints.iter_mut().for_each(|v| *v = -v.clone());
    }
    if ints.iter().any(|v| v.is_negative()) {
        return None;
    }
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let mut out = vec![0i64; spec.dim];
    for (&c, v) in support.iter().zip(&ints) {
        out[c] = (v / &g).to_i64()?;
    }
    Some(out)
}

/// Reference enumeration over every admissible support. Exponential; refuses large cones.
pub fn brute_force_rays(spec: &ConeSpec) -> Result<Vec<Ray>> {
    if spec.dim > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(spec.dim));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << spec.dim) {
        let flags: Vec<bool> = (0..spec.dim).map(|i| mask >> i & 1 == 1).collect();
        if !spec.support_admissible(&flags) {
            continue;
        }
        let support: Vec<usize> = (0..spec.dim).filter(|&i| flags[i]).collect();
        if let Some(v) = support_ray(spec, &support) {
            out.push(Ray(v));
        }
    }
    canonical_order(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_admissible_rays;
    use crate::triangulation::tests::FIG8;
    use crate::Triangulation;

    #[test]
    fn agrees_on_fig8() {
        let t = Triangulation::parse(FIG8).unwrap();
        let spec = ConeSpec::q(&t);
        assert_eq!(
            brute_force_rays(&spec).unwrap(),
            enumerate_admissible_rays(&spec)
        );
    }

    #[test]
    fn refuses_large() {
        let spec = ConeSpec::new(13, vec![], vec![]);
        assert!(matches!(brute_force_rays(&spec), Err(Error::TooLarge(_))));
    }
}
