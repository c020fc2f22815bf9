//! Browser bindings. Every export takes plain numbers and returns a JSON
//! string; the `*_json` functions are the same operations for native callers.

use serde::Serialize;
use serde_json::json;
use sidon_codes::{
    table_row, verify_construction, ConstructionParams, Family, FieldTower, GeneratorRecord, Level,
    Params1, Params2,
};
use wasm_bindgen::prelude::*;

/// Largest top field the page will build; keeps a click under a second or so.
pub const MAX_TOP_FIELD: u64 = 1 << 16;
pub const MAX_GENERATORS: usize = 96;

fn code_for(
    construction: u8,
    q: u32,
    k: usize,
    n: usize,
    r: usize,
) -> Result<(FieldTower, ConstructionParams, Vec<GeneratorRecord>), String> {
    let n = match construction {
        1 => n,
        2 => 2 * r * k,
        c => return Err(format!("unknown construction {c}")),
    };
    let top = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if top > MAX_TOP_FIELD {
        return Err(format!(
            "q^n = {q}^{n} exceeds the demo limit of {MAX_TOP_FIELD}; use the CLI"
        ));
    }
    let t = FieldTower::with_q(q as u64, k, n).map_err(|e| e.to_string())?;
    let params = if construction == 1 {
        Params1::new(q, k, n, r).map(ConstructionParams::One)
    } else {
        Params2::new(&t, r).map(ConstructionParams::Two)
    }
    .map_err(|e| e.to_string())?;
    let records = params.enumerate(&t).map_err(|e| e.to_string())?;
    if records.len() > MAX_GENERATORS {
        return Err(format!(
            "{} generators exceeds the demo limit of {MAX_GENERATORS}",
            records.len()
        ));
    }
    Ok((t, params, records))
}

fn label(r: &GeneratorRecord) -> String {
    let m = &r.meta;
    let family = match m.family {
        Family::U1 => "1-U",
        Family::V1 => "1-V",
        Family::U2 => "2",
        Family::Custom => "custom",
    };
    let mut s = format!("{family} l={} i={:?}", m.ell, m.i_vec);
    if let Some(b) = m.b {
        s += &format!(" b={b}");
    }
    if let Some(j) = m.j {
        s += &format!(" j={j}");
    }
    s
}

#[derive(Serialize)]
struct GeneratorView {
    label: String,
    dim: usize,
    /// Basis vectors as top-field codes.
    basis: Vec<u32>,
}

/// Bound comparison rows for k in `k_min..=k_max`, both regimes.
pub fn bound_table_json(q: u32, k_min: usize, k_max: usize, r_max: usize) -> Result<String, String> {
    if k_min < 2 || k_max < k_min || k_max > 12 || !(2..=6).contains(&r_max) {
        return Err("need 2 ≤ k_min ≤ k_max ≤ 12 and 2 ≤ r_max ≤ 6".into());
    }
    let mut rows = Vec::new();
    for k in k_min..=k_max {
        rows.push(table_row(4 * k, k, q, 2, None).map_err(|e| e.to_string())?);
        for r in 2..=r_max {
            rows.push(table_row((2 * r + 1) * k, k, q, r, None).map_err(|e| e.to_string())?);
        }
    }
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Builds a construction, verifies it and lists its generators.
pub fn build_and_verify_json(
    construction: u8,
    q: u32,
    k: usize,
    n: usize,
    r: usize,
) -> Result<String, String> {
    let (t, params, records) = code_for(construction, q, k, n, r)?;
    let report = verify_construction(&t, &params, &records).map_err(|e| e.to_string())?;
    let gens: Vec<GeneratorView> = records
        .iter()
        .map(|rec| GeneratorView {
            label: label(rec),
            dim: rec.subspace.dim(),
            basis: t.basis(&rec.subspace).iter().map(|x| x.code()).collect(),
        })
        .collect();
    let params = match &params {
        ConstructionParams::One(p) => serde_json::to_value(p),
        ConstructionParams::Two(p) => serde_json::to_value(p),
    }
    .map_err(|e| e.to_string())?;
    let out = json!({
        "params": params,
        "certified": report.certified(),
        "report": report,
        "generators": gens,
    });
    Ok(out.to_string())
}

/// Histogram of dim(U_a ∩ αU_b) over the projective shifts α.
pub fn shift_profile_json(
    construction: u8,
    q: u32,
    k: usize,
    n: usize,
    r: usize,
    a: usize,
    b: usize,
) -> Result<String, String> {
    let (t, _, records) = code_for(construction, q, k, n, r)?;
    let pick = |i: usize| {
        records
            .get(i)
            .map(|rec| &rec.subspace)
            .ok_or_else(|| format!("generator index {i} out of range 0..{}", records.len()))
    };
    let (u, v) = (pick(a)?, pick(b)?);
    let check = t.shiftwise_ok(u, v).map_err(|e| e.to_string())?;
    let out = json!({
        "a": label(&records[a]),
        "b": label(&records[b]),
        "histogram": check.histogram,
        "shifts_checked": check.shifts_checked,
        "coincidences": check.coincidences(u.dim()),
        "max_intersection": check.max_intersection,
        "min_distance": check.min_distance(u.dim(), v.dim()),
        "pairwise_ok": t.pairwise_ok(u, v).map_err(|e| e.to_string())?,
        "ok": check.ok,
        "projective_shifts": t.projective_count(),
        "top_field": t.size(Level::Top),
    });
    Ok(out.to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound_table(q: u32, k_min: usize, k_max: usize, r_max: usize) -> Result<String, JsValue> {
    js(bound_table_json(q, k_min, k_max, r_max))
}

#[wasm_bindgen]
pub fn build_and_verify(
    construction: u8,
    q: u32,
    k: usize,
    n: usize,
    r: usize,
) -> Result<String, JsValue> {
    js(build_and_verify_json(construction, q, k, n, r))
}

#[wasm_bindgen]
pub fn shift_profile(
    construction: u8,
    q: u32,
    k: usize,
    n: usize,
    r: usize,
    a: usize,
    b: usize,
) -> Result<String, JsValue> {
    js(shift_profile_json(construction, q, k, n, r, a, b))
}
