mod common;

use nst_core::coords::{euler_functional, evaluate_euler};
use nst_core::enumerate::{brute_force_rays, enumerate_admissible_rays, ConeSpec};
use nst_core::modify::crush;
use nst_core::surface::{double, NormalSurface};
use nst_core::triangulation::{homology_h1, simplify};
use nst_core::Triangulation;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn double_description_matches_brute_force(seed in any::<u64>(), n in 1usize..=3, open in 0usize..=4) {
        let t = common::random_triangulation(seed, n, open);
        let spec = ConeSpec::q(&t);
        let mut dd: Vec<Vec<i64>> = enumerate_admissible_rays(&spec).into_iter().map(|r| r.0).collect();
        let mut brute: Vec<Vec<i64>> = brute_force_rays(&spec).unwrap().into_iter().map(|r| r.0).collect();
        dd.sort();
        brute.sort();
        prop_assert_eq!(dd, brute);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..=4, open in 0usize..=4) {
        let t = common::random_triangulation(seed, n, open);
        prop_assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn euler_functional_is_euler_characteristic(seed in any::<u64>(), n in 1usize..=3) {
        let t = common::random_triangulation(seed, n, 4);
        prop_assume!(!t.is_ideal());
        let v = common::std_vertex_surfaces(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(x) = common::random_std_solution(&mut rng, &v) else { return Ok(()) };
        let s = NormalSurface::from_std(&t, x).unwrap();
        let chi = euler_functional(&t).unwrap();
        prop_assert_eq!(evaluate_euler(&chi, s.std()), Rational64::from_integer(s.euler()));
    }

    #[test]
    fn crushing_keeps_quadless_tetrahedra(seed in any::<u64>(), n in 1usize..=3) {
        let t = common::random_triangulation(seed, n, 4);
        prop_assume!(!t.is_ideal());
        let v = common::std_vertex_surfaces(&t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(x) = common::random_std_solution(&mut rng, &v) else { return Ok(()) };
        let s = NormalSurface::from_std(&t, x).unwrap();
        let s = if s.is_two_sided() { s } else { double(&s) };
        let quadless = (0..t.size()).filter(|&i| (0..3).all(|q| s.std().quad(i, q) == 0)).count();
        prop_assert_eq!(crush(&s).0.size(), quadless);
    }

    #[test]
    fn simplification_preserves_topology(seed in any::<u64>(), n in 1usize..=4) {
        let t = common::random_triangulation(seed, n, 4);
        prop_assume!(!t.is_ideal() && t.check_manifold().is_ok());
        let (u, _) = simplify(&t, seed);
        prop_assert!(u.size() <= t.size());
        prop_assert_eq!(homology_h1(&u), homology_h1(&t));
        prop_assert_eq!(u.skeleton().boundary_genera(), t.skeleton().boundary_genera());
    }
}
