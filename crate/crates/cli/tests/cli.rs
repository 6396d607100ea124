use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn knot(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../data/knots/{name}.tri"))
}

fn nst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nst"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    serde_json::from_str(&stdout(&nst(&args))).unwrap()
}

fn assert_schema(name: &str, v: &Value) {
    let path =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn fig8_rays_in_table_order() {
    let k = knot("4_1");
    let v = json(&["rays", k.to_str().unwrap()]);
    assert_schema("rays", &v);
    assert_eq!(
        v["rays"],
        serde_json::json!([
            [2, 0, 0, 0, 0, 1],
            [0, 2, 0, 0, 0, 1],
            [0, 0, 1, 2, 0, 0],
            [0, 0, 1, 0, 2, 0]
        ])
    );
    let text = stdout(&nst(&["rays", k.to_str().unwrap()]));
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("3: 0 0 1 0 2 0"));
}

#[test]
fn fig8_closed_cone_is_empty() {
    let k = knot("4_1");
    let v = json(&["rays", k.to_str().unwrap(), "--q0"]);
    assert_schema("rays", &v);
    assert_eq!(v["count"], 0);
    assert_eq!(v["rays"], serde_json::json!([]));
}

#[test]
fn fig8_is_small() {
    let k = knot("4_1");
    let v = json(&["largeness", k.to_str().unwrap()]);
    assert_schema("verdict", &v);
    assert_eq!(v["verdict"], "small");
    assert_eq!(v["knot"], "4_1");
}

#[test]
fn matchings_and_surfaces() {
    let k = knot("4_1");
    let v = json(&["matchings", k.to_str().unwrap()]);
    assert_schema("matchings", &v);
    assert_eq!(v["rank"], 1);
    for ray in 0..4 {
        let v = json(&["surface", k.to_str().unwrap(), "--ray", &ray.to_string()]);
        assert_schema("surface", &v);
        assert_eq!(v["kind"], "spun");
        assert!(v["slope"]["value"].as_str().unwrap().ends_with('4'));
    }
    let t = knot("3_1");
    let v = json(&["surface", t.to_str().unwrap(), "--q0", "--ray", "0"]);
    assert_schema("surface", &v);
    assert_eq!(v["kind"], "closed");
    assert_eq!(v["surface"]["genus"], 2);
}

#[test]
fn human_and_json_agree() {
    let t = knot("3_1");
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let v = json(&["largeness", t.to_str().unwrap(), "--cache", cache]);
    let text = stdout(&nst(&["largeness", t.to_str().unwrap(), "--cache", cache]));
    for (key, field) in [
        ("rays", &v["rays"]),
        ("seed", &v["seed"]),
        ("timings.enumeration", &v["timings"]["enumeration"]),
        (
            "timings.incompressibility",
            &v["timings"]["incompressibility"],
        ),
    ] {
        assert!(
            text.contains(&format!("{key} {field}\n")),
            "{key} missing from {text}"
        );
    }
}

#[test]
fn cache_returns_identical_payload() {
    let t = knot("3_1");
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["largeness", t.to_str().unwrap(), "--json", "--cache", cache];
    let first = stdout(&nst(&args));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = stdout(&nst(&args));
    assert_eq!(first, second);

    let copy = dir.path().join("renamed.tri");
    fs::copy(&t, &copy).unwrap();
    let renamed = stdout(&nst(&[
        "largeness",
        copy.to_str().unwrap(),
        "--json",
        "--cache",
        cache,
    ]));
    assert_eq!(first, renamed);

    stdout(&nst(&[
        "largeness",
        t.to_str().unwrap(),
        "--json",
        "--cache",
        cache,
        "--seed",
        "7",
    ]));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn errors_are_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tri");
    fs::write(&bad, "tets 1\n0:0132 - - -\n").unwrap();
    for args in [
        vec!["rays", bad.to_str().unwrap()],
        vec!["largeness", "/no/such/file.tri"],
        vec!["surface", knot("4_1").to_str().unwrap(), "--ray", "9"],
    ] {
        let o = nst(&args);
        assert!(!o.status.success());
        let e: Value = serde_json::from_slice(&o.stderr).unwrap();
        assert_schema("error", &e);
    }
}

#[test]
fn batch_summary() {
    let dir = tempfile::tempdir().unwrap();
    for k in ["3_1", "4_1", "5_2"] {
        fs::copy(knot(k), dir.path().join(format!("{k}.tri"))).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let csv = stdout(&nst(&["batch", d, "--deterministic"]));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("knot,verdict,rays,seconds_enum,seconds_test,seed")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[1] == "small" && r[5] == "1"));
    assert_eq!(rows[0][2], "1");

    let v = json(&["batch", d]);
    let all = v.as_array().unwrap();
    assert_eq!(all.len(), 3);
    for r in all {
        assert_schema("verdict", r);
    }
}
