mod common;

use nst_core::coords::{build_std_matching, StdVector};
use nst_core::enumerate::{
    enumerate_admissible_rays, find_positive_chi_surface, find_positive_chi_surface_with, ConeSpec,
    SearchOptions,
};
use nst_core::surface::NormalSurface;
use nst_core::triangulation::homology_h1;
use nst_core::{Perm4, Triangulation};
use proptest::prelude::*;

/// Every admissible vertex of the standard solution cone, by double description.
fn std_vertex_surfaces(t: &Triangulation) -> Vec<NormalSurface> {
    let n = t.size();
    let triples = (0..n)
        .map(|i| [0, 1, 2].map(|q| StdVector::quad_index(i, q)))
        .collect();
    let spec = ConeSpec::new(7 * n, build_std_matching(t).rows, triples);
    enumerate_admissible_rays(&spec)
        .into_iter()
        .map(|r| NormalSurface::from_std(t, StdVector(r.0)).unwrap())
        .collect()
}

fn oracle_finds(t: &Triangulation) -> bool {
    std_vertex_surfaces(t)
        .iter()
        .flat_map(|s| s.components())
        .any(|c| c.euler() > 0 && !c.is_vertex_link())
}

fn solid_tori() -> Vec<Triangulation> {
    let mut out = Vec::new();
    for g in 1..4 {
        for p in Perm4::all().filter(|p| p.is_odd() && p.apply(0) == g) {
            let mut gl = vec![[None; 4]];
            gl[0][0] = Some((0, p));
            gl[0][g] = Some((0, p.inverse()));
            let Ok(t) = Triangulation::from_gluings(gl) else {
                continue;
            };
            if !t.is_ideal()
                && t.skeleton().boundary_genera() == vec![1]
                && homology_h1(&t).rank == 1
            {
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn solid_torus_has_meridian_disc() {
    let tori = solid_tori();
    assert!(!tori.is_empty());
    for t in tori {
        let x = find_positive_chi_surface(&t, None)
            .unwrap()
            .expect("meridian disc");
        let c = NormalSurface::from_std(&t, x).unwrap().classify();
        assert!(c.connected && !c.is_vertex_link && c.euler > 0, "{c:?}");
        assert!(oracle_finds(&t));
        let (_, stats) =
            find_positive_chi_surface_with(&t, None, &SearchOptions { parallel: false }).unwrap();
        assert!(stats.nodes >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn agrees_with_vertex_enumeration(seed in any::<u64>(), n in 1usize..=3, open in 0usize..=4) {
        let t = common::random_triangulation(seed, n, open);
        prop_assume!(!t.is_ideal());
        let found = find_positive_chi_surface(&t, None).unwrap();
        if let Some(x) = &found {
            let c = NormalSurface::from_std(&t, x.clone()).unwrap().classify();
            prop_assert!(c.connected && !c.is_vertex_link && c.euler > 0, "{:?}", c);
        }
        prop_assert_eq!(found.is_some(), oracle_finds(&t), "{}", t.to_text());
    }
}
