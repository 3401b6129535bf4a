//! Browser bindings for three read-only views of the crate: the picture of an
//! arrangement, its braid monodromy with a wiring diagram, and the Burau image
//! of a braid word over GF(5).
//!
//! Each export is a thin wrapper over a plain function that returns
//! `linearr::Result`, so the logic is testable off the browser.

use linearr::arrangement::{build_c_arrangement, build_h_arrangement, intersection_lattice, RealArrangement, Sign};
use linearr::braid::BraidWord;
use linearr::burau::burau;
use linearr::monodromy::{affine_part, braid_monodromy, wiring_diagram};
use linearr::{Error, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn arrangement(which: &str, sign: &str) -> Result<RealArrangement> {
    let sign: Sign = sign.parse()?;
    match which {
        "C" | "c" => Ok(build_c_arrangement(sign)),
        "H" | "h" => Ok(build_h_arrangement(sign)),
        _ => Err(Error::Validation(format!("unknown arrangement {which:?} (expected C or H)"))),
    }
}

/// Lines and finite intersection points in floating point, ready to draw.
///
/// Vertical lines come back as `{"label", "x"}`, the others as
/// `{"label", "slope", "intercept"}`; the line at infinity is omitted.
pub fn scene(which: &str, sign: &str) -> Result<Value> {
    let arr = arrangement(which, sign)?;
    let mut lines = Vec::new();
    for (label, l) in arr.iter() {
        let [a, b, c] = l.coeffs().clone().map(|x| x.to_f64());
        if b != 0.0 {
            lines.push(json!({ "label": label, "slope": -a / b, "intercept": -c / b }));
        } else if a != 0.0 {
            lines.push(json!({ "label": label, "x": -c / a }));
        }
    }
    let lat = intersection_lattice(&arr)?;
    let c = &lat.combinatorics;
    let points: Vec<Value> = c
        .points()
        .iter()
        .zip(&lat.coords)
        .filter_map(|(p, x)| {
            let (px, py) = x.affine()?;
            let labels: Vec<String> = p.iter().map(|&i| c.label(i)).collect();
            Some(json!({ "x": px.to_f64(), "y": py.to_f64(), "exact": x.to_string(), "lines": labels }))
        })
        .collect();
    Ok(json!({ "lines": lines, "points": points }))
}

/// Braid monodromy words and wiring diagram as text.
pub fn monodromy_text(which: &str, sign: &str) -> Result<String> {
    let lines = affine_part(&arrangement(which, sign)?);
    let tuple = braid_monodromy(&lines)?;
    let wiring = wiring_diagram(&lines)?;
    Ok(format!("{tuple}\nwiring diagram\n{wiring}"))
}

/// Parse a five-strand word written as signed generator indices, e.g. `1 -2 3`.
pub fn parse_word(s: &str) -> Result<BraidWord> {
    let letters = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| Error::Validation(format!("bad generator {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(5, letters)
}

/// Burau image over GF(5) at `t`, with its determinant and order.
pub fn burau_json(word: &str, t: i64) -> Result<Value> {
    let w = parse_word(word)?;
    let m = burau(&w, t)?;
    let rows: Vec<Vec<u8>> = (0..4).map(|r| (0..4).map(|c| m.get(r, c)).collect()).collect();
    Ok(json!({
        "word": w.to_sigma_string(),
        "matrix": rows,
        "det": m.det(),
        "order": m.order(),
        "pure": w.is_pure(),
    }))
}

fn js<T>(r: Result<T>) -> std::result::Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = scene)]
pub fn scene_js(which: &str, sign: &str) -> std::result::Result<String, JsValue> {
    js(scene(which, sign).map(|v| v.to_string()))
}

#[wasm_bindgen(js_name = monodromy)]
pub fn monodromy_js(which: &str, sign: &str) -> std::result::Result<String, JsValue> {
    js(monodromy_text(which, sign))
}

#[wasm_bindgen(js_name = burau)]
pub fn burau_js(word: &str, t: i32) -> std::result::Result<String, JsValue> {
    js(burau_json(word, t.into()).map(|v| v.to_string()))
}
