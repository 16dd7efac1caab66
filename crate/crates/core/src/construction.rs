//! The counterexample family: for an even `k >= 4`, a capacitated path graph with
//! `k-1` chords, a links graph made of `k` internally disjoint `s,t`-paths, and the
//! point `x* = (1/k, ..., 1/k)`.
//!
//! Nodes are 1-based (`v_1 = s`, `v_n = t`). Edges and links are stored with
//! `lo < hi`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactmath::{IntMatrix, Rat};

/// Threshold below which a cut is small.
pub const LAMBDA: i64 = 5;

/// Largest supported `k`; keeps `n` within the 128-node bitsets used by the cut code.
pub const MAX_K: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("k must be an even integer >= 4, got {0}")]
    InvalidK(usize),
    #[error("k = {k} exceeds the supported maximum {max}")]
    TooLarge { k: usize, max: usize },
    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("edge ({lo}, {hi}) is invalid for a graph on {n} nodes")]
    BadEdge { lo: usize, hi: usize, n: usize },
    #[error("edge ({lo}, {hi}) has non-positive capacity {cap}")]
    BadCapacity { lo: usize, hi: usize, cap: i64 },
    #[error("graph must have between 2 and 128 nodes, got {0}")]
    BadNodeCount(usize),
}

/// Returns `k/2` after checking the family's hypothesis on `k`.
pub fn validate_k(k: usize) -> Result<usize, BuildError> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(BuildError::InvalidK(k));
    }
    if k > MAX_K {
        return Err(BuildError::TooLarge { k, max: MAX_K });
    }
    Ok(k / 2)
}

/// Node count `2 + k(k-1)/2`.
pub fn node_count(k: usize) -> usize {
    2 + k * (k - 1) / 2
}

/// Link count `n + k - 2`; also the number of small cuts.
pub fn link_count(k: usize) -> usize {
    node_count(k) + k - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub cap: i64,
}

/// Undirected graph with positive integer capacities and a small-cut threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapGraph {
    n: usize,
    edges: Vec<Edge>,
    lambda: i64,
}

impl CapGraph {
    pub fn new(n: usize, edges: Vec<Edge>, lambda: i64) -> Result<Self, BuildError> {
        if !(2..=128).contains(&n) {
            return Err(BuildError::BadNodeCount(n));
        }
        for e in &edges {
            if e.lo == 0 || e.lo >= e.hi || e.hi > n {
                return Err(BuildError::BadEdge {
                    lo: e.lo,
                    hi: e.hi,
                    n,
                });
            }
            if e.cap <= 0 {
                return Err(BuildError::BadCapacity {
                    lo: e.lo,
                    hi: e.hi,
                    cap: e.cap,
                });
            }
        }
        Ok(CapGraph { n, edges, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    pub fn with_lambda(&self, lambda: i64) -> Self {
        CapGraph {
            lambda,
            ..self.clone()
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(u) = stack.pop() {
            for e in &self.edges {
                let v = if e.lo == u {
                    e.hi
                } else if e.hi == u {
                    e.lo
                } else {
                    continue;
                };
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen[1..].iter().all(|&s| s)
    }
}

/// The `j`-th interval of `k/2` consecutive internal nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QSet {
    pub index: usize,
    pub first: usize,
    pub last: usize,
}

impl QSet {
    pub fn contains(&self, node: usize) -> bool {
        (self.first..=self.last).contains(&node)
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        self.first..=self.last
    }
}

pub fn qset(k: usize, j: usize) -> Result<QSet, BuildError> {
    let half = validate_k(k)?;
    check_index("Q-set", j, k - 1)?;
    Ok(QSet {
        index: j,
        first: 2 + (j - 1) * half,
        last: 1 + j * half,
    })
}

/// Index of the Q-set holding an internal node; `None` for `s` and `t`.
pub fn qset_of(k: usize, node: usize) -> Option<usize> {
    let n = node_count(k);
    if node < 2 || node >= n {
        return None;
    }
    Some((node - 2) / (k / 2) + 1)
}

fn check_index(what: &'static str, index: usize, max: usize) -> Result<(), BuildError> {
    if index == 0 || index > max {
        Err(BuildError::IndexOutOfRange { what, index, max })
    } else {
        Ok(())
    }
}

/// Capacity of the path edge `v_i v_{i+1}`.
pub fn edge_capacity(k: usize, i: usize) -> Result<i64, BuildError> {
    validate_k(k)?;
    let n = node_count(k);
    check_index("path edge", i, n - 1)?;
    if i == 1 || i == n - 1 {
        return Ok(2);
    }
    Ok(if qset_of(k, i) == qset_of(k, i + 1) {
        3
    } else {
        1
    })
}

/// Endpoints of the `j`-th chord, which always has capacity 1.
pub fn e2_endpoints(k: usize, j: usize) -> Result<(usize, usize), BuildError> {
    let half = validate_k(k)?;
    check_index("chord", j, k - 1)?;
    Ok((1 + (j - 1) * half, 2 + j * half))
}

/// Whether path `P_i` meets `Q_j`: `Q_i` and the next `k/2 - 1` Q-sets, cyclically.
pub fn path_q_incidence(k: usize, i: usize, j: usize) -> bool {
    let half = k / 2;
    if i == 0 || j == 0 || i >= k || j >= k {
        return false;
    }
    if j >= i {
        j <= (i + half - 1).min(k - 1)
    } else {
        j + half <= i
    }
}

/// The `(k-1)×(k-1)` path/Q-set incidence matrix (rows are paths).
pub fn build_circulant(k: usize) -> Result<IntMatrix, BuildError> {
    validate_k(k)?;
    let mut m = IntMatrix::zeros(k - 1, k - 1);
    for i in 1..k {
        for j in 1..k {
            if path_q_incidence(k, i, j) {
                m.set(i - 1, j - 1, BigInt::one());
            }
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    /// `paths[i-1]` is the node sequence of `P_i`, from 1 to n.
    pub paths: Vec<Vec<usize>>,
    /// `assignment[j-1]` lists `(path, node)` for every path meeting `Q_j`.
    pub assignment: Vec<Vec<(usize, usize)>>,
}

impl PathSystem {
    pub fn path(&self, i: usize) -> &[usize] {
        &self.paths[i - 1]
    }

    /// Which path passes through an internal node.
    pub fn path_of_node(&self, node: usize) -> Option<usize> {
        self.paths
            .iter()
            .position(|p| p[1..p.len() - 1].contains(&node))
            .map(|i| i + 1)
    }
}

/// Builds the `k` paths. Within each Q-set, the paths meeting it take its nodes
/// in order: ascending path index to ascending node index.
pub fn build_path_system(k: usize) -> Result<PathSystem, BuildError> {
    validate_k(k)?;
    let n = node_count(k);
    let mut internal: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut assignment = Vec::with_capacity(k - 1);
    for j in 1..k {
        let q = qset(k, j)?;
        let meeting: Vec<usize> = (1..k).filter(|&i| path_q_incidence(k, i, j)).collect();
        debug_assert_eq!(meeting.len(), k / 2);
        let pairs: Vec<(usize, usize)> = meeting.into_iter().zip(q.nodes()).collect();
        for &(path, node) in &pairs {
            internal[path - 1].push(node);
        }
        assignment.push(pairs);
    }
    let paths = internal
        .into_iter()
        .map(|mut nodes| {
            nodes.sort_unstable();
            let mut p = Vec::with_capacity(nodes.len() + 2);
            p.push(1);
            p.extend(nodes);
            p.push(n);
            p
        })
        .collect();
    Ok(PathSystem { paths, assignment })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Link {
    pub id: usize,
    pub lo: usize,
    pub hi: usize,
    pub path: usize,
}

impl Link {
    /// Whether the link crosses `δ(N_i)`, i.e. `lo <= i < hi`.
    pub fn crosses_nested(&self, i: usize) -> bool {
        self.lo <= i && i < self.hi
    }

    pub fn crosses_qset(&self, q: &QSet) -> bool {
        q.contains(self.lo) != q.contains(self.hi)
    }
}

/// A cut listed by the construction: `δ(Q_j)` or `δ(N_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ListedCut {
    Q(usize),
    Nested(usize),
}

impl fmt::Display for ListedCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ListedCut::Q(j) => write!(f, "Q_{j}"),
            ListedCut::Nested(i) => write!(f, "N_{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub k: usize,
    pub graph: CapGraph,
    pub qsets: Vec<QSet>,
    pub paths: PathSystem,
    /// `links[id-1]`.
    pub links: Vec<Link>,
    pub xstar: Vec<Rat>,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.links.len()
    }

    pub fn half(&self) -> usize {
        self.k / 2
    }

    pub fn lambda(&self) -> i64 {
        self.graph.lambda()
    }

    pub fn link(&self, id: usize) -> &Link {
        &self.links[id - 1]
    }

    pub fn qset(&self, j: usize) -> &QSet {
        &self.qsets[j - 1]
    }

    /// Small cuts in matrix row order: `Q_1..Q_{k-1}` then `N_1..N_{n-1}`.
    pub fn listed_cuts(&self) -> Vec<ListedCut> {
        (1..self.k)
            .map(ListedCut::Q)
            .chain((1..self.n()).map(ListedCut::Nested))
            .collect()
    }

    /// Matrix row of a listed cut (0-based).
    pub fn row_of(&self, cut: ListedCut) -> usize {
        match cut {
            ListedCut::Q(j) => j - 1,
            ListedCut::Nested(i) => self.k - 2 + i,
        }
    }

    pub fn crosses(&self, link: &Link, cut: ListedCut) -> bool {
        match cut {
            ListedCut::Q(j) => link.crosses_qset(self.qset(j)),
            ListedCut::Nested(i) => link.crosses_nested(i),
        }
    }

    /// Link ids crossing a listed cut, ascending.
    pub fn cut_links(&self, cut: ListedCut) -> Vec<usize> {
        self.links
            .iter()
            .filter(|l| self.crosses(l, cut))
            .map(|l| l.id)
            .collect()
    }

    /// Node membership of the listed cut's defining set (`N_i` or `Q_j`).
    pub fn cut_contains(&self, cut: ListedCut, node: usize) -> bool {
        match cut {
            ListedCut::Q(j) => self.qset(j).contains(node),
            ListedCut::Nested(i) => node <= i,
        }
    }
}

/// Builds the whole instance for an even `k >= 4`.
pub fn build_instance(k: usize) -> Result<Instance, BuildError> {
    let half = validate_k(k)?;
    let n = node_count(k);

    let mut edges = Vec::with_capacity(n - 1 + k - 1);
    for i in 1..n {
        edges.push(Edge {
            lo: i,
            hi: i + 1,
            cap: edge_capacity(k, i)?,
        });
    }
    for j in 1..k {
        let (lo, hi) = e2_endpoints(k, j)?;
        edges.push(Edge { lo, hi, cap: 1 });
    }
    let graph = CapGraph::new(n, edges, LAMBDA)?;

    let qsets = (1..k).map(|j| qset(k, j)).collect::<Result<Vec<_>, _>>()?;
    let paths = build_path_system(k)?;
    debug_assert!(paths.paths[..k - 1].iter().all(|p| p.len() == half + 2));

    // ℓ_1..ℓ_k leave s along P_1..P_k; ℓ_{k+i-1} is the forward link of v_i.
    let mut links = Vec::with_capacity(n + k - 2);
    for (idx, p) in paths.paths.iter().enumerate() {
        links.push(Link {
            id: idx + 1,
            lo: 1,
            hi: p[1],
            path: idx + 1,
        });
    }
    let mut forward = vec![None; n + 1];
    for (idx, p) in paths.paths.iter().enumerate() {
        for w in p.windows(2).skip(1) {
            forward[w[0]] = Some((w[1], idx + 1));
        }
    }
    for (i, fwd) in forward.iter().enumerate().take(n).skip(2) {
        let (hi, path) = fwd.expect("every internal node lies on a path");
        links.push(Link {
            id: k + i - 1,
            lo: i,
            hi,
            path,
        });
    }

    let m = links.len();
    Ok(Instance {
        k,
        graph,
        qsets,
        paths,
        links,
        xstar: vec![Rat::new(1, k as i64); m],
    })
}

/// The `m×m` 0/1 matrix of listed small cuts (rows) against links (columns).
pub fn build_incidence_matrix(inst: &Instance) -> IntMatrix {
    let m = inst.m();
    let cuts = inst.listed_cuts();
    let mut a = IntMatrix::zeros(cuts.len(), m);
    for (r, &cut) in cuts.iter().enumerate() {
        for link in &inst.links {
            if inst.crosses(link, cut) {
                a.set(r, link.id - 1, BigInt::one());
            }
        }
    }
    a
}
