//! Shared fixture loading for the benchmarks.

use std::path::PathBuf;

use nst_core::Triangulation;

pub fn knot_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/knots")
        .join(format!("{name}.tri"))
}

pub fn load(name: &str) -> Triangulation {
    Triangulation::parse(&std::fs::read_to_string(knot_path(name)).unwrap()).unwrap()
}
