use num_rational::Rational64;

use super::vector::StdVector;
use crate::error::{Error, Result};
use crate::perm::{edge_index, quad_pairs};
use crate::triangulation::Triangulation;

/// Linear functional giving the Euler characteristic of a normal surface from its standard
/// coordinates. Each disc counts one face, minus its arcs (half for arcs in internal faces), plus
/// its corners weighted by the reciprocal of the incidence count of the edge they lie on.
pub fn euler_functional(tri: &Triangulation) -> Result<Vec<Rational64>> {
    let sk = tri.skeleton();
    if sk.vertices.iter().any(|v| v.ideal()) {
        return Err(Error::Ideal);
    }
    let n = tri.size();
    let mut out = vec![Rational64::from_integer(0); 7 * n];
    let arc = |t: usize, f: usize| {
        if tri.gluing(t, f).is_some() {
            Rational64::new(1, 2)
        } else {
            Rational64::from_integer(1)
        }
    };
    let corner = |t: usize, a: usize, b: usize| {
        Rational64::new(1, sk.edge_incidence(t, edge_index(a, b)) as i64)
    };
    for t in 0..n {
        for v in 0..4 {
            let mut c = Rational64::from_integer(1);
            for f in (0..4).filter(|&f| f != v) {
                c -= arc(t, f);
                c += corner(t, v, f);
            }
            out[StdVector::tri_index(t, v)] = c;
        }
        for q in 0..3 {
            let [[a, b], [c, d]] = quad_pairs(q);
            let mut x = Rational64::from_integer(1);
            for f in 0..4 {
                x -= arc(t, f);
            }
            for (u, w) in [(a, c), (a, d), (b, c), (b, d)] {
                x += corner(t, u, w);
            }
            out[StdVector::quad_index(t, q)] = x;
        }
    }
    Ok(out)
}

pub fn evaluate_euler(functional: &[Rational64], x: &StdVector) -> Rational64 {
    functional.iter().zip(&x.0).map(|(c, &v)| c * v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_in_free_tet() {
        let t = Triangulation::parse("tets 1\n- - - -\n").unwrap();
        let chi = euler_functional(&t).unwrap();
        for q in 0..3 {
            let mut x = StdVector::zero(1);
            x.0[4 + q] = 1;
            assert_eq!(evaluate_euler(&chi, &x), Rational64::from_integer(1));
        }
        let mut tri = StdVector::zero(1);
        tri.0[0] = 1;
        assert_eq!(evaluate_euler(&chi, &tri), Rational64::from_integer(1));
    }

    #[test]
    fn ideal_rejected() {
        let t = Triangulation::parse(crate::triangulation::tests::FIG8).unwrap();
        assert_eq!(euler_functional(&t).unwrap_err(), Error::Ideal);
    }
}
