use nst_core::coords::{QVector, StdVector};
use nst_core::enumerate::{enumerate_admissible_rays, ConeSpec};
use nst_core::modify::{cut_along, BoundaryLabel, Side};
use nst_core::surface::{reconstruct_from_q, NormalSurface};
use nst_core::Triangulation;

fn load(name: &str) -> Triangulation {
    let p = format!("{}/../../data/knots/{name}.tri", env!("CARGO_MANIFEST_DIR"));
    Triangulation::parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn fig8_link_torus() {
    let t = load("4_1");
    let s = NormalSurface::from_std(
        &t,
        StdVector(
            vec![1; 4]
                .into_iter()
                .chain([0; 3])
                .cycle()
                .take(14)
                .collect(),
        ),
    )
    .unwrap();
    let r = cut_along(&s).unwrap();
    assert_eq!(r.pieces.len(), 2);
    assert_eq!(r.surface_copies(), 2);
    let mut eulers: Vec<i64> = r
        .pieces
        .iter()
        .flat_map(|p| p.boundary.iter().map(|b| b.euler))
        .collect();
    eulers.sort();
    assert_eq!(eulers, vec![0, 0, 0]);
    for p in &r.pieces {
        p.tri.check_structure().unwrap();
        p.tri.check_manifold().unwrap();
    }
    let collar = r.pieces.iter().find(|p| p.boundary.len() == 2).unwrap();
    assert!(collar
        .boundary
        .iter()
        .any(|b| matches!(b.label, BoundaryLabel::Cusp { .. })));
}

#[test]
fn trefoil_genus_two() {
    let t = load("3_1");
    let ray = &enumerate_admissible_rays(&ConeSpec::q0(&t).unwrap())[0];
    let s = reconstruct_from_q(&t, &QVector(ray.0.clone()))
        .unwrap()
        .closed()
        .unwrap();
    let r = cut_along(&s).unwrap();
    assert_eq!(r.pieces.len(), 2);
    let mut sides = Vec::new();
    for p in &r.pieces {
        p.tri.check_manifold().unwrap();
        for b in &p.boundary {
            if let BoundaryLabel::Surface { side } = b.label {
                assert_eq!(b.genus, 2);
                sides.push(side);
            }
        }
    }
    sides.sort_by_key(|s| *s == Side::Minus);
    assert_eq!(sides, vec![Side::Plus, Side::Minus]);
}

#[test]
fn empty_cut_is_identity() {
    let t = Triangulation::parse("tets 2\n1:0132 - - -\n0:0132 - - -\n").unwrap();
    let r = cut_along(&NormalSurface::empty(&t)).unwrap();
    assert_eq!(r.pieces.len(), 1);
    assert!(r.pieces[0].tri.is_isomorphic(&t));
}
