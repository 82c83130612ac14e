//! Browser bindings: analyse a sprout, square it, draw a planar system.
//!
//! Every export takes and returns strings so the page can keep documents in
//! text areas. Failures come back as thrown JavaScript strings.

use serde_json::{json, Value};
use sprout_core::geometry::{extract_sprout, render_svg, PlanarIfs, RenderOptions};
use sprout_core::main_tree::ramification_report;
use sprout_core::random::{random_sprout, RandomConfig};
use sprout_core::refine::square;
use sprout_core::{Admissibility, IndexDiagram, Sprout};
use wasm_bindgen::prelude::*;

fn parse(text: &str) -> Result<Sprout, String> {
    Sprout::parse(text).map_err(|e| e.to_string())
}

/// Validation, address classes, admissibility and, when defined, the orders
/// of points of the main tree.
pub fn analyze(text: &str) -> Result<Value, String> {
    let s = parse(text)?;
    let validation = s.validate();
    if !validation.is_valid() {
        return Ok(json!({ "validation": validation }));
    }
    let d = IndexDiagram::new(&s);
    let classes: Vec<Value> = s.points().map(|p| json!({ "point": s.point_name(p), "class": d.classify(p) })).collect();
    let admissible = match d.admissibility() {
        Admissibility::Admissible => json!({ "admissible": true }),
        Admissibility::Inadmissible { p, q, shared } => {
            json!({ "admissible": false, "p": s.point_name(p), "q": s.point_name(q), "shared": shared })
        }
    };
    let report = match ramification_report(&s) {
        Ok(rows) => json!(rows),
        Err(e) => json!({ "refused": e.to_string() }),
    };
    Ok(json!({ "validation": validation, "classes": classes, "admissibility": admissible, "report": report }))
}

pub fn squared(text: &str) -> Result<String, String> {
    Ok(square(&parse(text)?).to_json())
}

pub fn random(seed: u64) -> Result<String, String> {
    random_sprout(seed, &RandomConfig::default())
        .map(|s| s.to_json())
        .ok_or_else(|| format!("no usable sprout for seed {seed}"))
}

/// SVG of the system with its boundary and critical points marked, plus the
/// extracted sprout (or why there is none).
pub fn draw(text: &str, depth: Option<u32>) -> Result<Value, String> {
    let ifs = PlanarIfs::parse(text).map_err(|e| e.to_string())?;
    let extracted = extract_sprout(&ifs, 10, 1e-9);
    let options = RenderOptions { depth, ..RenderOptions::default() };
    let svg = render_svg(&ifs, extracted.as_ref().ok(), &options);
    Ok(match extracted {
        Ok(r) => json!({ "svg": svg, "sprout": r.sprout.to_json() }),
        Err(e) => json!({ "svg": svg, "error": e.to_string() }),
    })
}

fn thrown<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = analyzeSprout)]
pub fn analyze_sprout(text: &str) -> Result<String, JsValue> {
    thrown(analyze(text).map(|v| serde_json::to_string_pretty(&v).expect("serializable")))
}

#[wasm_bindgen(js_name = squareSprout)]
pub fn square_sprout(text: &str) -> Result<String, JsValue> {
    thrown(squared(text))
}

#[wasm_bindgen(js_name = randomSprout)]
pub fn random_sprout_json(seed: u32) -> Result<String, JsValue> {
    thrown(random(seed as u64))
}

/// `depth` 0 picks a depth automatically.
#[wasm_bindgen(js_name = renderIfs)]
pub fn render_ifs(text: &str, depth: u32) -> Result<String, JsValue> {
    thrown(draw(text, (depth > 0).then_some(depth)).map(|v| v.to_string()))
}
