mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nst_core::coords::{
    build_q_matching, euler_functional, evaluate_euler, load_peripheral, QVector,
};
use nst_core::enumerate::{brute_force_rays, enumerate_admissible_rays, ConeSpec};
use nst_core::modify::{crush, cut_along, BoundaryLabel};
use nst_core::pipeline::{decide_largeness_with, LargenessReport, PipelineOptions, Verdict};
use nst_core::surface::{
    boundary_slope, double, reconstruct_from_q, NormalSurface, Reconstruction,
};
use nst_core::triangulation::{homology_h1, simplify};
use nst_core::Triangulation;
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check {
        ok,
        detail: detail.into(),
    }
}

fn figure_eight(runs: &mut Vec<(String, LargenessReport)>) -> Check {
    let start = Instant::now();
    let t = common::load("4_1");
    let m = build_q_matching(&t);
    let want = [1, 1, -2, 1, 1, -2];
    let neg: Vec<i64> = want.iter().map(|x| -x).collect();
    if m.rank() != 1 || !m.rows.iter().all(|r| r == &want || r == &neg) {
        return check(false, format!("matching rows {:?}", m.rows));
    }
    let rays = enumerate_admissible_rays(&ConeSpec::q(&t));
    let mut got: Vec<Vec<i64>> = rays.iter().map(|r| r.0.clone()).collect();
    let mut table = vec![
        vec![2, 0, 0, 0, 0, 1],
        vec![0, 2, 0, 0, 0, 1],
        vec![0, 0, 1, 2, 0, 0],
        vec![0, 0, 1, 0, 2, 0],
    ];
    got.sort();
    table.sort();
    if got != table {
        return check(false, format!("rays {got:?}"));
    }
    let per = load_peripheral(&t, &common::curves("4_1")).unwrap();
    let mut nus = Vec::new();
    for r in &rays {
        let Ok(Reconstruction::Spun(rep)) = reconstruct_from_q(&t, &QVector(r.0.clone())) else {
            return check(false, "a figure-eight ray reconstructed as closed");
        };
        let s = boundary_slope(&rep, &per.meridian, &per.longitude).unwrap();
        nus.push((s.nu_meridian, s.nu_longitude));
    }
    let rows = [((1, 4), -4), ((-1, 4), 4), ((-1, -4), -4), ((1, -4), 4)];
    let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .find(|&(em, el)| {
            nus.iter().zip(rows).all(|(&(m, l), ((tm, tl), slope))| {
                (em * m, el * l) == (tm, tl)
                    && Rational64::new(-(el * l), em * m) == Rational64::from_integer(slope)
            })
        });
    let Some((em, el)) = signs else {
        return check(false, format!("no sign choice matches {nus:?}"));
    };
    if !enumerate_admissible_rays(&ConeSpec::q0(&t).unwrap()).is_empty() {
        return check(false, "closed-surface cone is not trivial");
    }
    let report = decide_largeness_with(&t, &PipelineOptions::default()).unwrap();
    let small = report.verdict == Verdict::Small;
    runs.push(("4_1".into(), report));
    let elapsed = start.elapsed();
    check(
        small && elapsed < Duration::from_secs(5),
        format!(
            "4 rays, signs ({em},{el}), slopes -4,4,-4,4, closed cone empty, small, {elapsed:.2?}"
        ),
    )
}

fn census(runs: &mut Vec<(String, LargenessReport)>) -> Check {
    let expected = [
        ("3_1", "small"),
        ("4_1", "small"),
        ("5_2", "small"),
        ("8_16", "large"),
        ("8_17", "large"),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (knot, want) in expected {
        let t = common::load(knot);
        let h1 = homology_h1(&t);
        let valid = nst_core::pipeline::check_knot_complement(&t).is_ok()
            && h1.rank == 1
            && h1.torsion.is_empty();
        let start = Instant::now();
        let report = decide_largeness_with(&t, &PipelineOptions::default()).unwrap();
        let elapsed = start.elapsed();
        let got = report.verdict.name();
        ok &= valid && got == want && elapsed < Duration::from_secs(30 * 60);
        parts.push(format!("{knot} {got} ({elapsed:.1?})"));
        if knot != "4_1" {
            runs.push((knot.into(), report));
        }
    }
    check(ok, parts.join(", "))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut rays = 0;
    for seed in 0..100u64 {
        let n = 1 + (seed % 3) as usize;
        let t = common::random_triangulation(seed, n, (seed % 5) as usize);
        let spec = ConeSpec::q(&t);
        let mut dd: Vec<Vec<i64>> = enumerate_admissible_rays(&spec)
            .into_iter()
            .map(|r| r.0)
            .collect();
        let mut brute: Vec<Vec<i64>> = brute_force_rays(&spec)
            .unwrap()
            .into_iter()
            .map(|r| r.0)
            .collect();
        dd.sort();
        brute.sort();
        rays += dd.len();
        if dd != brute {
            bad.push(seed);
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < Duration::from_secs(120),
        format!("100 triangulations, {rays} rays, mismatched seeds {bad:?}, {elapsed:.2?}"),
    )
}

/// Compact triangulations with their standard vertex solutions.
fn compact_fixtures() -> Vec<(Triangulation, Vec<NormalSurface>)> {
    let mut out = Vec::new();
    let mut seed = 1000;
    while out.len() < 12 {
        seed += 1;
        let t = common::random_triangulation(seed, 1 + (seed % 3) as usize, 4);
        if t.is_ideal() {
            continue;
        }
        let v = common::std_vertex_surfaces(&t);
        if v.iter().any(|s| s.std().has_quads()) {
            out.push((t, v));
        }
    }
    let t = common::load("3_1");
    let ray = enumerate_admissible_rays(&ConeSpec::q0(&t).unwrap()).remove(0);
    let s = reconstruct_from_q(&t, &QVector(ray.0))
        .unwrap()
        .closed()
        .unwrap();
    for piece in cut_along(&s).unwrap().pieces {
        if piece
            .boundary
            .iter()
            .any(|b| matches!(b.label, BoundaryLabel::Cusp { .. }))
        {
            continue;
        }
        let (u, _) = simplify(&piece.tri, 1);
        let v = common::std_vertex_surfaces(&u);
        out.push((u, v));
    }
    out
}

fn euler_property(fixtures: &[(Triangulation, Vec<NormalSurface>)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tested, mut bad) = (0, 0);
    let mut k = 0;
    while tested < 100 && k < 10_000 {
        let (t, v) = &fixtures[k % fixtures.len()];
        k += 1;
        let Some(x) = common::random_std_solution(&mut rng, v) else {
            continue;
        };
        let chi = euler_functional(t).unwrap();
        let s = NormalSurface::from_std(t, x).unwrap();
        tested += 1;
        if evaluate_euler(&chi, s.std()) != Rational64::from_integer(s.euler()) {
            bad += 1;
        }
    }
    check(
        tested == 100 && bad == 0,
        format!(
            "{tested} solutions on {} fixtures, {bad} mismatches",
            fixtures.len()
        ),
    )
}

fn crush_property(fixtures: &[(Triangulation, Vec<NormalSurface>)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut tested, mut bad) = (0, 0);
    let mut k = 0;
    while tested < 50 && k < 10_000 {
        let (t, v) = &fixtures[k % fixtures.len()];
        k += 1;
        let Some(x) = common::random_std_solution(&mut rng, v) else {
            continue;
        };
        let s = NormalSurface::from_std(t, x).unwrap();
        let s = if s.is_two_sided() { s } else { double(&s) };
        let quadless = (0..t.size())
            .filter(|&i| (0..3).all(|q| s.std().quad(i, q) == 0))
            .count();
        let (out, _) = crush(&s);
        tested += 1;
        if out.size() != quadless {
            bad += 1;
        }
    }
    check(
        tested == 50 && bad == 0,
        format!("{tested} surfaces, {bad} count mismatches"),
    )
}

fn termination(runs: &[(String, LargenessReport)]) -> Check {
    let mut loops = 0;
    let mut cuts = 0;
    let mut bad = Vec::new();
    for (knot, report) in runs {
        for c in &report.candidates {
            let Some(r) = &c.result else { continue };
            cuts += 1;
            loops += r.trace.len();
            if !r.trace_decreasing() || r.cut_sizes.contains(&0) {
                bad.push(format!("{knot} ray {}", c.witness.ray_index));
            }
        }
    }
    check(
        bad.is_empty() && runs.len() == 5,
        format!(
            "{} knots, {cuts} cuts into two pieces, {loops} crush steps, failures {bad:?}",
            runs.len()
        ),
    )
}

fn timing(runs: &[(String, LargenessReport)]) -> Check {
    let t = common::load("4_1");
    let start = Instant::now();
    let n = enumerate_admissible_rays(&ConeSpec::q(&t)).len();
    let elapsed = start.elapsed();
    let stages: Vec<String> = runs
        .iter()
        .map(|(k, r)| {
            format!(
                "{k}: enum {:.3}s test {:.3}s",
                r.timings.enumeration, r.timings.incompressibility
            )
        })
        .collect();
    check(
        n == 4 && elapsed < Duration::from_secs(1),
        format!("figure-eight rays in {elapsed:.2?}; {}", stages.join("; ")),
    )
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    let fixtures = compact_fixtures();
    let results = [
        ("figure-eight golden", figure_eight(&mut runs)),
        ("census spot-check", census(&mut runs)),
        ("enumeration oracle equivalence", oracle_equivalence()),
        ("euler functional", euler_property(&fixtures)),
        ("crush postcondition", crush_property(&fixtures)),
        ("termination trace", termination(&runs)),
        ("timing", timing(&runs)),
    ];
    let mut failed = 0;
    for (k, (name, c)) in results.iter().enumerate() {
        println!(
            "criterion {} {name}: {} ({})",
            k + 1,
            if c.ok { "PASS" } else { "FAIL" },
            c.detail
        );
        failed += usize::from(!c.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
