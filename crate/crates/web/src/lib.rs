//! Browser bindings for a few `unionclosed` operations.
//!
//! Each export takes and returns plain strings; the `*_json` functions do
//! the work and are callable (and tested) natively.

use serde_json::json;
use unionclosed::closure::close;
use unionclosed::constructions::{
    all_ksets_construction, colex_segment, maxlex_segment, minus_construction, plus_construction,
};
use unionclosed::orders::{initial_segment, OrderKind};
use unionclosed::Family;
use wasm_bindgen::prelude::*;

/// Members listed before the closure output is cut short.
const MEMBER_LIMIT: usize = 512;

/// Closure of a family given in the text format.
pub fn closure_json(text: &str) -> Result<String, String> {
    let family = Family::parse(text).map_err(|e| e.to_string())?;
    let closure = close(&family).map_err(|e| e.to_string())?;
    let members: Vec<String> = closure
        .members()
        .iter()
        .take(MEMBER_LIMIT)
        .map(|m| m.to_string())
        .collect();
    Ok(json!({
        "generators": family.len(),
        "k": family.k(),
        "size": closure.len(),
        "members": members,
        "truncated": closure.len() > MEMBER_LIMIT,
    })
    .to_string())
}

/// First `n` `k`-sets of an order; `universe` 0 means unbounded.
pub fn segment_json(order: &str, k: u32, n: usize, universe: u32) -> Result<String, String> {
    let kind: OrderKind = order.parse().map_err(|e: unionclosed::Error| e.to_string())?;
    let universe = (universe > 0).then_some(universe);
    let family = initial_segment(kind, k, n, universe).map_err(|e| e.to_string())?;
    let size = close(&family).map_err(|e| e.to_string())?.len();
    Ok(json!({ "text": family.to_text(), "closure_size": size }).to_string())
}

/// A construction with its predicted and actual closure sizes.
pub fn construction_json(kind: &str, k: u32, t: u32, n: usize, l: usize) -> Result<String, String> {
    let c = match kind {
        "all-ksets" => all_ksets_construction(t, k),
        "colex" => colex_segment(k, n),
        "max-lex" => maxlex_segment(k, n),
        "minus" => minus_construction(t, k, l),
        "plus" => plus_construction(t, k, l),
        other => return Err(format!("unknown construction `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let actual = close(&c.family).map_err(|e| e.to_string())?.len();
    Ok(json!({
        "text": c.family.to_text(),
        "sets": c.n,
        "predicted": c.predicted_size.map(|p| p.to_string()),
        "actual": actual,
    })
    .to_string())
}

fn js(result: Result<String, String>) -> Result<String, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn closure(text: &str) -> Result<String, JsValue> {
    js(closure_json(text))
}

#[wasm_bindgen]
pub fn segment(order: &str, k: u32, n: usize, universe: u32) -> Result<String, JsValue> {
    js(segment_json(order, k, n, universe))
}

#[wasm_bindgen]
pub fn construction(kind: &str, k: u32, t: u32, n: usize, l: usize) -> Result<String, JsValue> {
    js(construction_json(kind, k, t, n, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn closure_of_path() {
        let v = parse(closure_json("1 2\n2 3\n3 4\n").unwrap());
        assert_eq!(v["size"], 6);
        assert_eq!(v["members"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn closure_reports_line_numbers() {
        let err = closure_json("1 2\n1 2 3\n").unwrap_err();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn segments() {
        let v = parse(segment_json("max-lex", 3, 7, 0).unwrap());
        assert_eq!(v["closure_size"], 12);
        assert!(segment_json("lex", 2, 3, 0).is_err());
        let v = parse(segment_json("lex", 2, 3, 4).unwrap());
        assert_eq!(v["text"], "1 2\n1 3\n1 4\n");
    }

    #[test]
    fn constructions_match() {
        let v = parse(construction_json("plus", 3, 5, 0, 2).unwrap());
        assert_eq!(v["predicted"].as_str().unwrap(), v["actual"].to_string());
        assert!(construction_json("nope", 3, 5, 0, 2).is_err());
    }
}
