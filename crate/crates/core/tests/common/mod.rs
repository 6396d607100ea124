#![allow(dead_code)]

use nst_core::{Perm4, Triangulation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn load(name: &str) -> Triangulation {
    Triangulation::parse(&std::fs::read_to_string(path(&format!("{name}.tri"))).unwrap()).unwrap()
}

pub fn curves(name: &str) -> String {
    std::fs::read_to_string(path(&format!("{name}.curves.json"))).unwrap()
}

pub fn path(file: &str) -> String {
    format!("{}/../../data/knots/{file}", env!("CARGO_MANIFEST_DIR"))
}

/// A connected orientable triangulation with `n` tetrahedra and at most `open` boundary faces,
/// drawn from `seed`. Retries until the result is a valid triangulation.
pub fn random_triangulation(seed: u64, n: usize, open: usize) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut faces: Vec<(usize, usize)> =
            (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
        faces.shuffle(&mut rng);
        let mut free = rng.gen_range(0..=open.min(4 * n));
        if (4 * n - free) % 2 == 1 {
            free += 1;
        }
        let mut gluings = vec![[None; 4]; n];
        for pair in faces[free..].chunks(2) {
            let [(i, f), (j, g)] = [pair[0], pair[1]];
            let options: Vec<Perm4> = Perm4::all()
                .filter(|p| p.is_odd() && p.apply(f) == g)
                .collect();
            let p = *options.choose(&mut rng).unwrap();
            gluings[i][f] = Some((j, p));
            gluings[j][g] = Some((i, p.inverse()));
        }
        if let Ok(t) = Triangulation::from_gluings(gluings) {
            if t.components().len() == 1 {
                return t;
            }
        }
    }
}

/// Admissible vertex solutions of the standard matching equations, as normal surfaces.
pub fn std_vertex_surfaces(t: &Triangulation) -> Vec<nst_core::surface::NormalSurface> {
    use nst_core::coords::{build_std_matching, StdVector};
    use nst_core::enumerate::{enumerate_admissible_rays, ConeSpec};
    let n = t.size();
    let triples = (0..n)
        .map(|i| [0, 1, 2].map(|q| StdVector::quad_index(i, q)))
        .collect();
    let spec = ConeSpec::new(7 * n, build_std_matching(t).rows, triples);
    enumerate_admissible_rays(&spec)
        .into_iter()
        .map(|r| nst_core::surface::NormalSurface::from_std(t, StdVector(r.0)).unwrap())
        .collect()
}

/// A random admissible sum of up to three vertex solutions with small coefficients.
pub fn random_std_solution(
    rng: &mut ChaCha8Rng,
    vertices: &[nst_core::surface::NormalSurface],
) -> Option<nst_core::coords::StdVector> {
    use nst_core::coords::{is_admissible, StdVector};
    if vertices.is_empty() {
        return None;
    }
    for _ in 0..20 {
        let k = rng.gen_range(1..=3);
        let mut x = StdVector::zero(vertices[0].std().tets());
        for _ in 0..k {
            let v = vertices.choose(rng).unwrap().std();
            let c = rng.gen_range(1..=3);
            for (a, b) in x.0.iter_mut().zip(&v.0) {
                *a += c * b;
            }
        }
        if is_admissible(&x) {
            return Some(x);
        }
    }
    None
}
