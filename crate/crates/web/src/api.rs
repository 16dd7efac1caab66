//! Plain-Rust bodies of the exported functions, so they can be tested natively.

use serde_json::json;

use smallcuts::certify::full_reduction;
use smallcuts::construction::{build_circulant, build_incidence_matrix};
use smallcuts::io::pipeline::verify_instance;
use smallcuts::io::{Strategy, VerifyOptions};
use smallcuts::{build_instance, IntMatrix};

use crate::svg;

/// Browser builds stop here; larger instances are for the CLI.
pub const MAX_DEMO_K: usize = 12;

fn instance(k: usize) -> Result<smallcuts::Instance, String> {
    if k > MAX_DEMO_K {
        return Err(format!("the demo supports k up to {MAX_DEMO_K}"));
    }
    build_instance(k).map_err(|e| e.to_string())
}

fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows().expect("0/1 and small entries")
}

pub fn render(k: usize, view: &str) -> Result<String, String> {
    let inst = instance(k)?;
    match view {
        "capgraph" => Ok(svg::capgraph_svg(&inst)),
        "links" => Ok(svg::links_svg(&inst)),
        other => Err(format!("unknown view {other:?}")),
    }
}

pub fn certify(k: usize, trials: usize, seed: u32) -> Result<String, String> {
    let inst = instance(k)?;
    let opts = VerifyOptions {
        strategy: Strategy::Flow,
        trials: (trials > 0).then_some(trials),
        seed: seed.into(),
        ..Default::default()
    };
    let doc = verify_instance(&inst, &opts).map_err(|e| e.to_string())?;
    Ok(doc.to_json())
}

pub fn reduction(k: usize) -> Result<String, String> {
    let inst = instance(k)?;
    let a = build_incidence_matrix(&inst);
    let r = full_reduction(&inst).map_err(|e| e.to_string())?;
    let labels: Vec<String> = inst.listed_cuts().iter().map(ToString::to_string).collect();
    Ok(json!({
        "k": k,
        "m": inst.m(),
        "row_labels": labels,
        "a": rows(&a),
        "reduced": rows(&r.reduced),
        "circulant": rows(&build_circulant(k).map_err(|e| e.to_string())?),
        "traces": r.traces,
    })
    .to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_views() {
        assert!(render(4, "capgraph").unwrap().contains("<svg"));
        assert!(render(4, "links").unwrap().contains("ℓ10"));
        assert!(render(4, "matrix").is_err());
        assert!(render(5, "links").is_err());
        assert!(render(14, "links").is_err());
    }

    #[test]
    fn certify_k6() {
        let v: serde_json::Value = serde_json::from_str(&certify(6, 200, 1).unwrap()).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["certificate"]["max_coordinate"], "1/6");
        assert_eq!(v["probe"]["contained"], true);
    }

    #[test]
    fn reduction_k4() {
        let v: serde_json::Value = serde_json::from_str(&reduction(4).unwrap()).unwrap();
        assert_eq!(v["reduced"][0], json!([1, 0, 1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(v["row_labels"][3], "N_1");
        assert_eq!(v["traces"][2]["steps"].as_array().unwrap().len(), 2);
    }
}
