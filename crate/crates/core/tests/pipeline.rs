mod common;

use nst_core::coords::QVector;
use nst_core::pipeline::{
    decide_largeness_with, test_incompressible_with, IncompressibilityVerdict, LargenessReport,
    PipelineOptions, Verdict,
};
use nst_core::surface::{double, reconstruct_from_q};

fn run(name: &str, deterministic: bool) -> LargenessReport {
    let t = common::load(name);
    decide_largeness_with(
        &t,
        &PipelineOptions {
            seed: 1,
            deterministic,
        },
    )
    .unwrap()
}

#[test]
fn trefoil_is_small() {
    let r = run("3_1", false);
    assert_eq!(r.verdict, Verdict::Small);
    assert_eq!(r.rays, 1);
    let c = &r.candidates[0];
    assert_eq!(c.witness.surface.genus, 2);
    let result = c.result.as_ref().unwrap();
    assert_eq!(result.verdict, IncompressibilityVerdict::Compressible);
    assert!(result.trace_decreasing());
}

#[test]
fn trefoil_certificate_rechecks() {
    let t = common::load("3_1");
    let r = run("3_1", true);
    let w = &r.candidates[0].witness;
    let s = reconstruct_from_q(&t, &QVector(w.ray.clone()))
        .unwrap()
        .closed()
        .unwrap();
    let s = if w.doubled { double(&s) } else { s };
    let result = test_incompressible_with(&t, &s, &PipelineOptions::default()).unwrap();
    let cert = result.certificate.unwrap();
    assert!(cert.recheck());
    assert_eq!(cert.genera.iter().filter(|&&g| g == 2).count(), 1);
}

#[test]
fn deterministic_runs_agree() {
    let a = run("3_1", true);
    let b = run("3_1", true);
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.candidates, b.candidates);
}

#[test]
fn eight_sixteen_is_large() {
    let r = run("8_16", false);
    let Verdict::Large { witness } = &r.verdict else {
        panic!("{:?}", r.verdict)
    };
    assert!(witness.surface.genus >= 2);
    assert!(r
        .candidates
        .iter()
        .filter_map(|c| c.result.as_ref())
        .all(|x| x.trace_decreasing()));
}

#[test]
fn eight_seventeen_is_large() {
    let r = run("8_17", false);
    assert!(
        matches!(r.verdict, Verdict::Large { .. }),
        "{:?}",
        r.verdict
    );
}
