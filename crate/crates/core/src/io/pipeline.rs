//! Build → enumerate → certify, and the text report of the row reduction.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{full_reduction, verify_basic, CertifyError, ReductionTrace};
use crate::construction::{build_instance, BuildError, Instance};
use crate::cuts::{
    enumerate_bruteforce_with_guard, enumerate_flow, karger_probe, CutError, CutFamily,
    BRUTE_FORCE_MAX_NODES,
};
use crate::io::docs::{CertificateDoc, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Brute,
    Flow,
    Both,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(Strategy::Brute),
            "flow" => Ok(Strategy::Flow),
            "both" => Ok(Strategy::Both),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    /// Contraction trials for the random probe; `None` skips it.
    pub trials: Option<usize>,
    pub seed: u64,
    pub brute_guard: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            strategy: Strategy::Flow,
            trials: None,
            seed: 0,
            brute_guard: BRUTE_FORCE_MAX_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub seed: u64,
    pub found: usize,
    /// Every probed cut belongs to the certified family.
    pub contained: bool,
    pub outside: Vec<Vec<usize>>,
}

/// Runs the whole certification for `k` and reports it as a document.
pub fn run_verify(k: usize, opts: &VerifyOptions) -> Result<CertificateDoc, PipelineError> {
    let inst = build_instance(k)?;
    verify_instance(&inst, opts)
}

pub fn verify_instance(
    inst: &Instance,
    opts: &VerifyOptions,
) -> Result<CertificateDoc, PipelineError> {
    let g = &inst.graph;
    let (family, agree): (CutFamily, Option<bool>) = match opts.strategy {
        Strategy::Brute => (enumerate_bruteforce_with_guard(g, opts.brute_guard)?, None),
        Strategy::Flow => (enumerate_flow(g)?, None),
        Strategy::Both => {
            let brute = enumerate_bruteforce_with_guard(g, opts.brute_guard)?;
            let flow = enumerate_flow(g)?;
            let same = brute == flow;
            (flow, Some(same))
        }
    };
    let mut certificate = verify_basic(inst, &family);
    if agree == Some(false) {
        certificate.failures.insert(0, "strategies_agree".into());
    }
    let probe = opts.trials.map(|trials| {
        let found = karger_probe(g, trials, opts.seed);
        let outside: Vec<Vec<usize>> = found
            .cuts
            .iter()
            .filter(|c| !family.cuts.contains(c))
            .map(|c| c.side().iter().collect())
            .collect();
        ProbeReport {
            trials,
            seed: opts.seed,
            found: found.len(),
            contained: outside.is_empty(),
            outside,
        }
    });
    if probe.as_ref().is_some_and(|p| !p.contained) {
        certificate.failures.push("probe_contained".into());
    }
    let ok =
        certificate.all_ok() && agree != Some(false) && probe.as_ref().is_none_or(|p| p.contained);
    Ok(CertificateDoc {
        schema_version: SCHEMA_VERSION.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        strategy: opts.strategy,
        family_size: family.len(),
        strategies_agree: agree,
        probe,
        timing_ms: None,
        ok,
        certificate,
    })
}

fn link_set(ids: &[usize]) -> String {
    let names: Vec<String> = ids.iter().map(|i| format!("l{i}")).collect();
    format!("{{{}}}", names.join(", "))
}

/// Human-readable replay of the Q-row reduction.
pub fn reduce_report(k: usize) -> Result<(String, Vec<ReductionTrace>), PipelineError> {
    let inst = build_instance(k)?;
    let reduction = full_reduction(&inst)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "k = {k}: reducing {} Q-rows of A ({m} x {m})",
        k - 1,
        m = inst.m()
    );
    for t in &reduction.traces {
        let _ = writeln!(out, "Q_{}: g = {}, h = {}", t.j, t.g, t.h);
        let _ = writeln!(out, "  row      {}", link_set(&t.q_links));
        let _ = writeln!(
            out,
            "  step h={} g={} -> 2 x {}",
            t.h,
            t.g,
            link_set(&t.halved)
        );
        for s in &t.steps {
            let _ = writeln!(out, "  step h={} g={} -> {}", s.h, s.g, link_set(&s.links));
        }
        let phi: Vec<String> = t.phi.iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "  final    {}  phi = {{{}}}",
            link_set(&t.final_links),
            phi.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "top-left block = (A^PQ)^T, top-right block = 0, A22 unit lower-triangular"
    );
    Ok((out, reduction.traces))
}
