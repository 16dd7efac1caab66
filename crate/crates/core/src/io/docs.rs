//! Versioned JSON documents for instances and certificates. Rationals are
//! written as `"num/den"` strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::Certificate;
use crate::construction::{
    link_count, node_count, validate_k, BuildError, CapGraph, Edge, Instance, Link, PathSystem,
    QSet,
};
use crate::exactmath::Rat;
use crate::io::pipeline::{ProbeReport, Strategy};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("unsupported schema version {0:?}")]
    Schema(String),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub schema_version: String,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub lambda: i64,
    /// `[lo, hi, cap]`
    pub edges: Vec<[i64; 3]>,
    /// `[first, last]`
    pub qsets: Vec<[usize; 2]>,
    /// `[id, lo, hi, path]`
    pub links: Vec<[usize; 4]>,
    pub xstar: Vec<Rat>,
}

impl From<&Instance> for InstanceDoc {
    fn from(inst: &Instance) -> Self {
        InstanceDoc {
            schema_version: SCHEMA_VERSION.to_string(),
            k: inst.k,
            n: inst.n(),
            m: inst.m(),
            lambda: inst.lambda(),
            edges: inst
                .graph
                .edges()
                .iter()
                .map(|e| [e.lo as i64, e.hi as i64, e.cap])
                .collect(),
            qsets: inst.qsets.iter().map(|q| [q.first, q.last]).collect(),
            links: inst
                .links
                .iter()
                .map(|l| [l.id, l.lo, l.hi, l.path])
                .collect(),
            xstar: inst.xstar.clone(),
        }
    }
}

impl InstanceDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance documents always serialize")
    }

    /// Rebuilds the instance, reconstructing the path system from the links.
    pub fn to_instance(&self) -> Result<Instance, DocError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocError::Schema(self.schema_version.clone()));
        }
        let bad = |msg: String| Err(DocError::Inconsistent(msg));
        let k = self.k;
        validate_k(k)?;
        let n = node_count(k);
        if self.n != n || self.m != link_count(k) {
            return bad(format!(
                "n = {}, m = {} do not match k = {k}",
                self.n, self.m
            ));
        }
        if self.links.len() != self.m || self.xstar.len() != self.m || self.qsets.len() != k - 1 {
            return bad("list lengths do not match n, m, k".into());
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[lo, hi, cap] in &self.edges {
            if lo < 1 || hi < 1 {
                return bad(format!("edge ({lo}, {hi})"));
            }
            edges.push(Edge {
                lo: lo as usize,
                hi: hi as usize,
                cap,
            });
        }
        let graph = CapGraph::new(n, edges, self.lambda)?;
        let qsets = self
            .qsets
            .iter()
            .enumerate()
            .map(|(i, &[first, last])| QSet {
                index: i + 1,
                first,
                last,
            })
            .collect::<Vec<_>>();

        let mut links = Vec::with_capacity(self.m);
        for (idx, &[id, lo, hi, path]) in self.links.iter().enumerate() {
            if id != idx + 1 || lo == 0 || lo >= hi || hi > n || path == 0 || path > k {
                return bad(format!("link {:?}", [id, lo, hi, path]));
            }
            links.push(Link { id, lo, hi, path });
        }

        let mut paths: Vec<Vec<usize>> = vec![Vec::new(); k];
        for l in &links {
            paths[l.path - 1].extend([l.lo, l.hi]);
        }
        for p in &mut paths {
            p.sort_unstable();
            p.dedup();
        }
        let path_of = |v: usize| {
            paths
                .iter()
                .position(|p| p[1..p.len().saturating_sub(1)].contains(&v))
                .map(|i| i + 1)
        };
        let mut assignment = Vec::with_capacity(k - 1);
        for q in &qsets {
            let mut pairs = Vec::new();
            for v in q.nodes() {
                if let Some(p) = path_of(v) {
                    pairs.push((p, v));
                }
            }
            assignment.push(pairs);
        }
        Ok(Instance {
            k,
            graph,
            qsets,
            paths: PathSystem { paths, assignment },
            links,
            xstar: self.xstar.clone(),
        })
    }
}

/// Certificate plus provenance of the run that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub schema_version: String,
    pub tool_version: String,
    pub strategy: Strategy,
    pub family_size: usize,
    /// Set when both exact enumerators ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategies_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<ProbeReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<f64>,
    /// Overall verdict; the process exits 0 exactly when this holds.
    pub ok: bool,
    pub certificate: Certificate,
}

impl CertificateDoc {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate documents always serialize")
    }
}
