//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and are what the native tests call.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use lipderiv::envelope::{baire_lower, baire_upper};
use lipderiv::scales::{scale_profile, RadiusGrid};
use lipderiv::{io, zoo, Norm, SampledMap};
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest sample the page will profile; beyond this the browser stalls.
pub const MAX_POINTS: usize = 4000;
/// Largest number of grid cells inside the biggest ball.
pub const MAX_CELLS_PER_BALL: f64 = 400.0;

type Result<T> = std::result::Result<T, String>;

fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn grid(r_max: f64, q: f64, steps: usize) -> Result<RadiusGrid> {
    let steps = steps.max(1);
    RadiusGrid::new(r_max, q, steps, steps.min(3)).map_err(|e| e.to_string())
}

fn first_coord(f: &SampledMap, i: usize) -> Option<f64> {
    f.domain().coords(i).map(|c| c[0])
}

#[derive(Serialize)]
struct Estimate {
    id: String,
    x: Option<f64>,
    nearest: f64,
    lip: f64,
    big: f64,
    loc: f64,
    divergent: bool,
}

fn estimates(f: &SampledMap, grid: &RadiusGrid) -> Result<Vec<Estimate>> {
    let prof = scale_profile(f, grid).map_err(|e| e.to_string())?;
    Ok(prof
        .points
        .iter()
        .map(|p| Estimate {
            id: f.domain().id(p.point).to_string(),
            x: first_coord(f, p.point),
            nearest: p.nearest,
            lip: p.lip_hat,
            big: p.big_hat,
            loc: p.loc_hat,
            divergent: p.divergent,
        })
        .collect())
}

pub fn zoo_names_json() -> String {
    let entries: Vec<Value> = zoo::NAMES
        .iter()
        .filter_map(|n| zoo::entry(n, 0.1).ok())
        .filter(|e| e.map.domain().embedding().is_some_and(|m| m.dim() == 1))
        .map(|e| json!({ "name": e.name, "description": e.description }))
        .collect();
    Value::Array(entries).to_string()
}

/// Estimates and analytic values along a one-dimensional zoo entry.
pub fn profile_zoo_json(name: &str, resolution: f64, r_max: f64, q: f64, steps: usize) -> Result<String> {
    if !(resolution > 0.0) || r_max / resolution > MAX_CELLS_PER_BALL {
        return Err(format!("r_max / resolution must stay below {MAX_CELLS_PER_BALL}"));
    }
    let e = zoo::entry(name, resolution).map_err(|e| e.to_string())?;
    if e.map.len() > MAX_POINTS {
        return Err(format!("{} points at this resolution; the demo stops at {MAX_POINTS}", e.map.len()));
    }
    if e.map.domain().embedding().map(|m| m.dim()) != Some(1) {
        return Err(format!("'{name}' is not a function on an interval"));
    }
    let est = estimates(&e.map, &grid(r_max, q, steps)?)?;
    let values = e.map.real_values().ok_or("entry is not real-valued")?;
    let points: Vec<Value> = est
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let o = e.oracle[i];
            json!({
                "x": s.x,
                "value": values[i],
                "lip": number(s.lip),
                "big": number(s.big),
                "loc": number(s.loc),
                "oracle": { "lip": number(o.lip), "big": number(o.big), "loc": number(o.loc) },
            })
        })
        .collect();
    Ok(json!({ "name": e.name, "description": e.description, "points": points }).to_string())
}

/// Per-point estimates for a pasted point cloud (`id,x1,..,xn,value`).
pub fn profile_csv_json(csv: &str, norm: &str, r_max: f64, q: f64, steps: usize) -> Result<String> {
    let norm = Norm::parse(norm).map_err(|e| e.to_string())?;
    let cloud = io::read_point_cloud(csv.as_bytes()).map_err(|e| e.to_string())?;
    if cloud.ids.len() > MAX_POINTS {
        return Err(format!("{} points; the demo stops at {MAX_POINTS}", cloud.ids.len()));
    }
    let f = cloud.into_map(norm, Norm::L2).map_err(|e| e.to_string())?;
    let est = estimates(&f, &grid(r_max, q, steps)?)?;
    serde_json::to_string(&est).map_err(|e| e.to_string())
}

/// Lower and upper envelopes of a pasted field (`id,x1,..,xn,value`; `inf`
/// and `-inf` allowed).
pub fn envelope_csv_json(csv: &str, h: f64) -> Result<String> {
    let cloud = io::read_point_cloud(csv.as_bytes()).map_err(|e| e.to_string())?;
    if cloud.value_names.len() != 1 {
        return Err("need exactly one value column".into());
    }
    if cloud.ids.len() > MAX_POINTS * 5 {
        return Err(format!("{} points; the demo stops at {}", cloud.ids.len(), MAX_POINTS * 5));
    }
    let space = std::sync::Arc::new(cloud.space(Norm::L2).map_err(|e| e.to_string())?);
    let g = lipderiv::ScalarField::new(space.clone(), cloud.values.iter().map(|v| v[0]).collect())
        .map_err(|e| e.to_string())?;
    let upper = baire_upper(&g, h).map_err(|e| e.to_string())?;
    let lower = baire_lower(&g, h).map_err(|e| e.to_string())?;
    let points: Vec<Value> = (0..g.len())
        .map(|i| {
            json!({
                "id": space.id(i),
                "x": space.coords(i).map(|c| c[0]),
                "lower": number(lower.value(i)),
                "value": number(g.value(i)),
                "upper": number(upper.value(i)),
            })
        })
        .collect();
    Ok(Value::Array(points).to_string())
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn zoo_names() -> String {
    zoo_names_json()
}

#[wasm_bindgen]
pub fn profile_zoo(
    name: &str,
    resolution: f64,
    r_max: f64,
    q: f64,
    steps: usize,
) -> std::result::Result<String, JsError> {
    js(profile_zoo_json(name, resolution, r_max, q, steps))
}

#[wasm_bindgen]
pub fn profile_csv(csv: &str, norm: &str, r_max: f64, q: f64, steps: usize) -> std::result::Result<String, JsError> {
    js(profile_csv_json(csv, norm, r_max, q, steps))
}

#[wasm_bindgen]
pub fn envelope_csv(csv: &str, h: f64) -> std::result::Result<String, JsError> {
    js(envelope_csv_json(csv, h))
}
