//! Browser bindings: a level/obstruction explorer, the center action on a
//! rank-2 alcove, and the SU(N)/Z_k level grid. Every export returns JSON.

use gerbe_core::center_action::{center_action, generic_interior_point};
use gerbe_core::centers::bundled_levels;
use gerbe_core::exact::{q_to_f64, q_to_string, QVec};
use gerbe_core::obstruction::{admits_equivariant_extension, classical_name, corollary_listed, obstruction_order, su_condition};
use gerbe_core::{Family, GroupData, LieType, RootSystem};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_RANK: usize = 8;
const MAX_GRID_N: u32 = 24;

fn lie_type(family: &str, rank: u32) -> Result<LieType, String> {
    let t: LieType = format!("{family}{rank}").parse().map_err(|e: gerbe_core::GerbeError| e.to_string())?;
    if t.rank > MAX_RANK && t.family != Family::A {
        return Err(format!("rank is limited to {MAX_RANK} here"));
    }
    if t.rank > MAX_GRID_N as usize {
        return Err(format!("rank is limited to {MAX_GRID_N} here"));
    }
    Ok(t)
}

/// All quotients `G/Z` of one type with their levels and the verdict at `level`.
pub fn explore_json(family: &str, rank: u32, level: u32) -> Result<Value, String> {
    if level == 0 {
        return Err("level must be positive".into());
    }
    let t = lie_type(family, rank)?;
    let data = GroupData::new(t).with_levels(bundled_levels());
    let rows: Vec<Value> = data
        .subgroups
        .iter()
        .map(|z| {
            json!({
                "id": z.id,
                "group": classical_name(&data, z),
                "order": z.order(),
                "invariants": z.invariants.invariant_factors,
                "ell_b": z.ell_b,
                "ell_f": z.ell_f.as_ref().map(|d| d.value),
                "listed": corollary_listed(&data, z),
                "admits": admits_equivariant_extension(z, level as u64),
                "obstruction_order": obstruction_order(z, level as u64),
            })
        })
        .collect();
    Ok(json!({
        "lie_type": t.to_string(),
        "level": level,
        "center_invariants": data.center.group.invariant_factors,
        "subgroups": rows,
    }))
}

/// Orthonormal plane coordinates of a point of `t` for a rank-2 Gram matrix.
fn planar(rs: &RootSystem, xi: &[gerbe_core::exact::Q]) -> [f64; 2] {
    let g = |i, j| q_to_f64(&rs.gram[(i, j)]);
    let l11 = g(0, 0).sqrt();
    let l21 = g(1, 0) / l11;
    let l22 = (g(1, 1) - l21 * l21).sqrt();
    let (x, y) = (q_to_f64(&xi[0]), q_to_f64(&xi[1]));
    [l11 * x + l21 * y, l22 * y]
}

/// The fundamental alcove of a rank-2 type and how each central element permutes it.
pub fn alcove_json(family: &str) -> Result<Value, String> {
    let t = lie_type(family, 2)?;
    let data = GroupData::new(t);
    let rs = &data.rs;
    let vertices: Vec<QVec> = rs.alcove().vertices;
    let actions = center_action(rs, &data.center).map_err(|e| e.to_string())?;
    let xi = generic_interior_point(rs);
    let elements: Vec<Value> = actions
        .iter()
        .map(|a| {
            let image = a.apply_affine(&xi);
            json!({
                "node": a.z.node,
                "coweight": a.z.rep.iter().map(q_to_string).collect::<Vec<_>>(),
                "vertex_perm": a.vertex_perm,
                "word": a.w_z.word,
                "point_image": planar(rs, &image),
            })
        })
        .collect();
    Ok(json!({
        "lie_type": t.to_string(),
        "vertices": vertices.iter().map(|v| planar(rs, v)).collect::<Vec<_>>(),
        "vertex_labels": vertices.iter().map(|v| v.iter().map(q_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "marks": rs.marks,
        "point": planar(rs, &xi),
        "elements": elements,
    }))
}

/// For each `N <= max_n` and `k | N`: levels of `SU(N)/Z_k` and the condition on `(N, k)`.
pub fn su_grid_json(max_n: u32) -> Result<Value, String> {
    if !(2..=MAX_GRID_N).contains(&max_n) {
        return Err(format!("N must be between 2 and {MAX_GRID_N}"));
    }
    let rows: Vec<Value> = (2..=max_n)
        .map(|n| {
            let data = GroupData::new(LieType::new(Family::A, n as usize - 1).expect("n >= 2")).with_levels(bundled_levels());
            let cells: Vec<Value> = data
                .subgroups
                .iter()
                .map(|z| {
                    let k = z.order() as u64;
                    json!({
                        "k": k,
                        "ell_b": z.ell_b,
                        "ell_f": z.ell_f.as_ref().map(|d| d.value),
                        "su_condition": su_condition(n as u64, k).ok(),
                    })
                })
                .collect();
            json!({ "n": n, "cells": cells })
        })
        .collect();
    Ok(json!({ "rows": rows }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn explore(family: &str, rank: u32, level: u32) -> Result<String, JsValue> {
    to_js(explore_json(family, rank, level))
}

#[wasm_bindgen]
pub fn alcove(family: &str) -> Result<String, JsValue> {
    to_js(alcove_json(family))
}

#[wasm_bindgen]
pub fn su_grid(max_n: u32) -> Result<String, JsValue> {
    to_js(su_grid_json(max_n))
}
