//! Browser bindings for the demo page in `www/`.
//!
//! Each export takes plain strings or numbers and returns rendered text, so
//! the page needs no glue beyond the generated module. The string-returning
//! cores are ordinary Rust functions and are tested natively.

use wasm_bindgen::prelude::*;

use dtl_core::chern::{chern_tensor_formula, chern_tensor_oracle, obstruction_membership, obstruction_solve};
use dtl_core::cycles::tensor_cycles;
use dtl_core::parse::{parse_cycle, parse_polynomial};
use dtl_core::poly::DEFAULT_TERM_CAP;
use dtl_core::psi::tensor_fast;

/// Keeps a browser tab responsive; far below the command-line default.
pub const WEB_TERM_CAP: usize = DEFAULT_TERM_CAP / 20;

pub fn tensor_text(f: &str, g: &str) -> Result<String, String> {
    let f = parse_polynomial(f).map_err(|e| format!("f: {e}"))?;
    let g = parse_polynomial(g).map_err(|e| format!("g: {e}"))?;
    let out = tensor_fast(&f, &g, WEB_TERM_CAP).map_err(|e| e.to_string())?;
    Ok(format!("{out}\n\n{} terms, degree {}", out.len(), out.degree()))
}

pub fn cycle_tensor_text(eta: &str, xi: &str) -> Result<String, String> {
    let eta = parse_cycle(eta).map_err(|e| format!("left cycle: {e}"))?;
    let xi = parse_cycle(xi).map_err(|e| format!("right cycle: {e}"))?;
    let out = tensor_cycles(&eta, &xi, WEB_TERM_CAP).map_err(|e| e.to_string())?;
    Ok(format!(
        "{out}\n\ndegrees: {} (x) {} = {}",
        eta.degree(),
        xi.degree(),
        out.degree()
    ))
}

pub fn chern_text(rank: usize, index: usize) -> Result<String, String> {
    let formula = chern_tensor_formula(rank, index).map_err(|e| e.to_string())?;
    let roots = chern_tensor_oracle(rank, index).map_err(|e| e.to_string())?;
    let check = if roots == formula {
        "agrees with the expansion over Chern roots"
    } else {
        "DIFFERS from the expansion over Chern roots"
    };
    Ok(format!("c{index}(E (x) L) = {formula}\n\n{check}"))
}

pub fn obstruction_text(a: &str, b: &str) -> Result<String, String> {
    let a = a.trim().parse().map_err(|_| format!("a: not a rational number: {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("b: not a rational number: {b:?}"))?;
    let s = obstruction_solve().map_err(|e| e.to_string())?;
    let m = obstruction_membership(2, &a, &b).map_err(|e| e.to_string())?;
    let mut out = String::from("forcing equations:\n");
    for e in &s.equations {
        out.push_str(&format!("  {e}\n"));
    }
    out.push_str(&format!("solution: a = {}, b = {}\n\n", s.a, s.b));
    out.push_str(&format!("target: {}\n", m.target));
    if m.is_member {
        out.push_str("in the image of the projection pullback: no obstruction");
    } else {
        out.push_str(&format!("not in the image; witness {}", m.residue));
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn tensor(f: &str, g: &str) -> Result<String, JsValue> {
    tensor_text(f, g).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = cycleTensor)]
pub fn cycle_tensor(eta: &str, xi: &str) -> Result<String, JsValue> {
    cycle_tensor_text(eta, xi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn chern(rank: usize, index: usize) -> Result<String, JsValue> {
    chern_text(rank, index).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn obstruction(a: &str, b: &str) -> Result<String, JsValue> {
    obstruction_text(a, b).map_err(|e| JsValue::from_str(&e))
}
