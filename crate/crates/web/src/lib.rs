//! wasm-bindgen entry points for the browser demo in `www/`.

mod api;
pub mod svg;

use wasm_bindgen::prelude::*;

pub use api::MAX_DEMO_K;

/// SVG of the capacitated graph (`"capgraph"`) or the links graph (`"links"`).
#[wasm_bindgen]
pub fn render_svg(k: usize, view: &str) -> Result<String, JsValue> {
    api::render(k, view).map_err(|e| JsValue::from_str(&e))
}

/// Certificate document as JSON; `trials = 0` skips the contraction probe.
#[wasm_bindgen]
pub fn certify(k: usize, trials: usize, seed: u32) -> Result<String, JsValue> {
    api::certify(k, trials, seed).map_err(|e| JsValue::from_str(&e))
}

/// `A`, its reduced form, and the per-row traces as JSON.
#[wasm_bindgen]
pub fn reduction(k: usize) -> Result<String, JsValue> {
    api::reduction(k).map_err(|e| JsValue::from_str(&e))
}
