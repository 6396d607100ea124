use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use nst_core::coords::{build_q_matching, load_peripheral, QVector};
use nst_core::enumerate::{enumerate_admissible_rays, ConeSpec};
use nst_core::pipeline::{decide_largeness_with, PipelineOptions, Verdict};
use nst_core::surface::{boundary_slope, reconstruct_from_q, Reconstruction};
use nst_core::{Error, Triangulation};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::{Cli, Command};

struct Input {
    knot: String,
    bytes: Vec<u8>,
}

impl Input {
    fn read(path: &Path) -> Result<Input> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let knot = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Input { knot, bytes })
    }

    fn triangulation(&self) -> Result<Triangulation> {
        Ok(Triangulation::parse(&String::from_utf8_lossy(&self.bytes))?)
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    let cache = cli.cache.as_deref().map(Cache::open).transpose()?;
    let options = PipelineOptions {
        seed: cli.seed,
        deterministic: cli.deterministic,
    };
    if let Command::Batch { dir } = &cli.command {
        return batch(cli, dir, cache.as_ref(), &options);
    }
    let (file, name) = match &cli.command {
        Command::Matchings { file } => (file, "matchings".to_string()),
        Command::Rays { file, q0 } => (file, format!("rays q0={q0}")),
        Command::Surface {
            file,
            ray,
            q0,
            curves,
        } => {
            let side = match curves {
                Some(c) => fs::read_to_string(c)?,
                None => fs::read_to_string(file.with_extension("curves.json")).unwrap_or_default(),
            };
            (file, format!("surface ray={ray} q0={q0} curves={side}"))
        }
        Command::Largeness { file } => (file, "largeness".to_string()),
        Command::Batch { .. } => unreachable!(),
    };
    let input = Input::read(file)?;
    let payload = cached(cache.as_ref(), &input, &name, cli.seed, || {
        match &cli.command {
            Command::Matchings { .. } => matchings(&input),
            Command::Rays { q0, .. } => rays(&input, *q0),
            Command::Surface {
                file,
                ray,
                q0,
                curves,
            } => surface(&input, *ray, *q0, &curves_path(file, curves.as_ref())),
            Command::Largeness { .. } => largeness(&input, &options),
            Command::Batch { .. } => unreachable!(),
        }
    })?;
    if cli.json {
        return Ok(format!("{payload}\n"));
    }
    let value: Value = serde_json::from_str(&payload)?;
    Ok(match &cli.command {
        Command::Matchings { .. } => human_matchings(&value),
        Command::Rays { .. } => human_rays(&value),
        _ => human_fields(&value),
    })
}

fn curves_path(file: &Path, given: Option<&PathBuf>) -> Option<PathBuf> {
    match given {
        Some(p) => Some(p.clone()),
        None => Some(file.with_extension("curves.json")).filter(|p| p.exists()),
    }
}

fn cached(
    cache: Option<&Cache>,
    input: &Input,
    command: &str,
    seed: u64,
    compute: impl FnOnce() -> Result<Value>,
) -> Result<String> {
    let key = Cache::key(&input.bytes, command, seed);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let payload = compute()?.to_string();
    if let Some(c) = cache {
        c.put(&key, &payload)?;
    }
    Ok(payload)
}

fn matchings(input: &Input) -> Result<Value> {
    let t = input.triangulation()?;
    let m = build_q_matching(&t);
    Ok(json!({
        "knot": input.knot,
        "rank": m.rank(),
        "rows": m.rows,
        "edges": m.provenance,
    }))
}

fn rays(input: &Input, q0: bool) -> Result<Value> {
    let t = input.triangulation()?;
    let start = Instant::now();
    let spec = if q0 {
        ConeSpec::q0(&t)?
    } else {
        ConeSpec::q(&t)
    };
    let rays: Vec<Vec<i64>> = enumerate_admissible_rays(&spec)
        .into_iter()
        .map(|r| r.0)
        .collect();
    Ok(json!({
        "knot": input.knot,
        "cone": if q0 { "q0" } else { "q" },
        "count": rays.len(),
        "rays": rays,
        "seconds": start.elapsed().as_secs_f64(),
    }))
}

fn surface(input: &Input, k: usize, q0: bool, curves: &Option<PathBuf>) -> Result<Value> {
    let t = input.triangulation()?;
    let spec = if q0 {
        ConeSpec::q0(&t)?
    } else {
        ConeSpec::q(&t)
    };
    let rays = enumerate_admissible_rays(&spec);
    let ray = rays
        .get(k)
        .ok_or_else(|| Error::OutOfRange(format!("ray {k} of {}", rays.len())))?;
    let mut out = Map::new();
    out.insert("knot".into(), json!(input.knot));
    out.insert("cone".into(), json!(if q0 { "q0" } else { "q" }));
    out.insert("ray".into(), json!(k));
    out.insert("quads".into(), json!(ray.0));
    match reconstruct_from_q(&t, &QVector(ray.0.clone()))? {
        Reconstruction::Closed(s) => {
            out.insert("kind".into(), json!("closed"));
            out.insert("surface".into(), serde_json::to_value(s.classify())?);
        }
        Reconstruction::Spun(rep) => {
            out.insert("kind".into(), json!("spun"));
            out.insert("nu".into(), serde_json::to_value(&rep.nu)?);
            if let Some(path) = curves {
                let per = load_peripheral(&t, &fs::read_to_string(path)?)?;
                let slope = match boundary_slope(&rep, &per.meridian, &per.longitude) {
                    Ok(s) => serde_json::to_value(s)?,
                    Err(Error::InfiniteSlope) => json!({ "value": "1/0" }),
                    Err(e) => return Err(e.into()),
                };
                out.insert("slope".into(), slope);
            }
        }
    }
    Ok(Value::Object(out))
}

fn largeness(input: &Input, options: &PipelineOptions) -> Result<Value> {
    let t = input.triangulation()?;
    let r = decide_largeness_with(&t, options)?;
    let mut out = Map::new();
    out.insert("knot".into(), json!(input.knot));
    out.insert("verdict".into(), json!(r.verdict.name()));
    match &r.verdict {
        Verdict::Large { witness } => {
            out.insert("witness".into(), serde_json::to_value(witness)?);
        }
        Verdict::InconclusiveTorus { tori } => {
            out.insert("tori".into(), serde_json::to_value(tori)?);
        }
        Verdict::Small => {}
    }
    out.insert("rays".into(), json!(r.rays));
    out.insert("timings".into(), serde_json::to_value(&r.timings)?);
    out.insert("seed".into(), json!(r.seed));
    Ok(Value::Object(out))
}

fn batch(
    cli: &Cli,
    dir: &Path,
    cache: Option<&Cache>,
    options: &PipelineOptions,
) -> Result<String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "tri"));
    files.sort();
    let one = |path: &PathBuf| -> Value {
        let result = Input::read(path).and_then(|input| {
            let payload = cached(cache, &input, "largeness", cli.seed, || {
                largeness(&input, options)
            })?;
            Ok(serde_json::from_str::<Value>(&payload)?)
        });
        result.unwrap_or_else(|e| {
            let kind = e.downcast_ref::<Error>().map_or("io", Error::kind);
            let knot = path.file_stem().unwrap_or_default().to_string_lossy();
            eprintln!(
                "{}",
                json!({ "knot": knot, "error": kind, "message": format!("{e:#}") })
            );
            json!({ "knot": knot, "verdict": "error", "error": kind })
        })
    };
    let rows: Vec<Value> = if cli.deterministic {
        files.iter().map(one).collect()
    } else {
        files.par_iter().map(one).collect()
    };
    if cli.json {
        return Ok(format!("{}\n", Value::Array(rows)));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "knot",
        "verdict",
        "rays",
        "seconds_enum",
        "seconds_test",
        "seed",
    ])?;
    for r in &rows {
        let field = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            v => v.to_string(),
        };
        w.write_record([
            field(&r["knot"]),
            field(&r["verdict"]),
            field(&r["rays"]),
            field(&r["timings"]["enumeration"]),
            field(&r["timings"]["incompressibility"]),
            field(&r["seed"]),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn human_matchings(v: &Value) -> String {
    let mut out = format!("rank {}\n", v["rank"]);
    for (row, edge) in v["rows"]
        .as_array()
        .into_iter()
        .flatten()
        .zip(v["edges"].as_array().into_iter().flatten())
    {
        out += &format!("{}: {}\n", edge.as_str().unwrap_or_default(), join(row));
    }
    out
}

fn human_rays(v: &Value) -> String {
    let mut out = format!("{} rays\n", v["count"]);
    for (k, r) in v["rays"].as_array().into_iter().flatten().enumerate() {
        out += &format!("{k}: {}\n", join(r));
    }
    out
}

fn join(row: &Value) -> String {
    row.as_array()
        .into_iter()
        .flatten()
        .map(Value::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// One `key value` line per leaf, with nested keys joined by dots.
fn human_fields(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, x, out);
                }
            }
            Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            Value::Array(_) => *out += &format!("{prefix} {}\n", join(v)),
            Value::String(s) => *out += &format!("{prefix} {s}\n"),
            x => *out += &format!("{prefix} {x}\n"),
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}
