//! Cut evaluation and exact enumeration of every cut below the threshold.
//!
//! Three enumerators share one result type:
//! - [`enumerate_bruteforce`] walks all `2^(n-1) - 1` canonical sides in Gray-code
//!   order, updating the capacity incrementally.
//! - [`enumerate_flow`] branches on node placement and prunes with a max-flow
//!   lower bound; exact at any size the family stays small.
//! - [`karger_probe`] samples capacity-weighted random contractions. It can only
//!   ever report a subset of the true family.
//!
//! A cut is identified by the side that does not contain `v_1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construction::CapGraph;

/// Default node limit for exhaustive enumeration.
pub const BRUTE_FORCE_MAX_NODES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("cut side must be a nonempty proper subset of the nodes")]
    Trivial,
    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("exhaustive enumeration over {n} nodes exceeds the guard of {max}; use flow enumeration or raise the guard")]
    TooLargeForBruteForce { n: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("source and sink sets must be nonempty and disjoint")]
    BadTerminals,
}

/// Set of 1-based nodes, at most 128 of them.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeSet(u128);

impl NodeSet {
    pub const fn empty() -> Self {
        NodeSet(0)
    }

    /// All nodes `1..=n`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            NodeSet(u128::MAX)
        } else {
            NodeSet((1u128 << n) - 1)
        }
    }

    pub fn from_bits(bits: u128) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn contains(self, node: usize) -> bool {
        (1..=128).contains(&node) && self.0 >> (node - 1) & 1 == 1
    }

    pub fn insert(&mut self, node: usize) {
        self.0 |= 1u128 << (node - 1);
    }

    pub fn with(mut self, node: usize) -> Self {
        self.insert(node);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        NodeSet(!self.0 & Self::full(n).0)
    }

    pub fn intersects(self, other: NodeSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: NodeSet) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..128)
            .filter(move |b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A cut `δ(S)`, stored by its side not containing `v_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cut {
    side: NodeSet,
    capacity: i64,
}

impl Cut {
    /// Canonicalizes `side` (either shore of the partition) and evaluates it.
    pub fn new(g: &CapGraph, side: NodeSet) -> Result<Self, CutError> {
        let side = canonical_side(g.n(), side)?;
        Ok(Cut {
            side,
            capacity: capacity_of(g, side),
        })
    }

    pub fn side(&self) -> NodeSet {
        self.side
    }

    pub fn capacity(&self) -> i64 {
        self.capacity
    }

    /// Whether the segment `a b` has exactly one end on the side.
    pub fn separates(&self, a: usize, b: usize) -> bool {
        self.side.contains(a) != self.side.contains(b)
    }
}

fn canonical_side(n: usize, side: NodeSet) -> Result<NodeSet, CutError> {
    if let Some(v) = side.iter().find(|&v| v > n) {
        return Err(CutError::NodeOutOfRange { node: v, n });
    }
    let side = if side.contains(1) {
        side.complement(n)
    } else {
        side
    };
    if side.is_empty() {
        return Err(CutError::Trivial);
    }
    Ok(side)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutFamily {
    pub cuts: BTreeSet<Cut>,
    pub lambda: i64,
}

impl CutFamily {
    pub fn new(lambda: i64) -> Self {
        CutFamily {
            cuts: BTreeSet::new(),
            lambda,
        }
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn sides(&self) -> BTreeSet<NodeSet> {
        self.cuts.iter().map(Cut::side).collect()
    }

    pub fn contains_side(&self, side: NodeSet) -> bool {
        self.cuts.iter().any(|c| c.side == side)
    }

    pub fn is_subset_of(&self, other: &CutFamily) -> bool {
        self.cuts.is_subset(&other.cuts)
    }
}

fn capacity_of(g: &CapGraph, side: NodeSet) -> i64 {
    g.edges()
        .iter()
        .filter(|e| side.contains(e.lo) != side.contains(e.hi))
        .map(|e| e.cap)
        .sum()
}

/// Capacity of `δ(side)`.
pub fn cut_capacity(g: &CapGraph, side: NodeSet) -> Result<i64, CutError> {
    let side = canonical_side(g.n(), side)?;
    Ok(capacity_of(g, side))
}

fn adjacency(g: &CapGraph) -> Vec<Vec<(usize, i64)>> {
    let mut adj = vec![Vec::new(); g.n() + 1];
    for e in g.edges() {
        adj[e.lo].push((e.hi, e.cap));
        adj[e.hi].push((e.lo, e.cap));
    }
    adj
}

/// Every cut of capacity below `g.lambda()`, by exhaustive scan. Refuses graphs
/// with more than [`BRUTE_FORCE_MAX_NODES`] nodes.
pub fn enumerate_bruteforce(g: &CapGraph) -> Result<CutFamily, CutError> {
    enumerate_bruteforce_with_guard(g, BRUTE_FORCE_MAX_NODES)
}

pub fn enumerate_bruteforce_with_guard(
    g: &CapGraph,
    max_nodes: usize,
) -> Result<CutFamily, CutError> {
    let n = g.n();
    if n > max_nodes || n > 64 {
        return Err(CutError::TooLargeForBruteForce {
            n,
            max: max_nodes.min(64),
        });
    }
    let adj = adjacency(g);
    // Gray-code index i covers nodes 2..=n through bits 0..n-1.
    let total: u64 = 1u64 << (n - 1);
    const CHUNK: u64 = 1 << 16;
    let chunks = total.div_ceil(CHUNK);

    let scan = |c: u64| -> Vec<Cut> {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut found = Vec::new();
        let mut code = start ^ (start >> 1);
        let mut side = NodeSet((code as u128) << 1);
        let mut cap = capacity_of(g, side);
        let mut i = start;
        loop {
            if code != 0 && cap < g.lambda() {
                found.push(Cut {
                    side,
                    capacity: cap,
                });
            }
            i += 1;
            if i >= end {
                break;
            }
            let bit = i.trailing_zeros() as usize;
            let v = bit + 2;
            let inside = side.contains(v);
            for &(u, c) in &adj[v] {
                if side.contains(u) == inside {
                    cap += c;
                } else {
                    cap -= c;
                }
            }
            code ^= 1 << bit;
            side = NodeSet((code as u128) << 1);
        }
        found
    };

    #[cfg(feature = "parallel")]
    let found: Vec<Cut> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().flat_map_iter(scan).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let found: Vec<Cut> = (0..chunks).flat_map(scan).collect();

    Ok(CutFamily {
        cuts: found.into_iter().collect(),
        lambda: g.lambda(),
    })
}

/// Residual network for Edmonds–Karp on an undirected graph, with node 0 as the
/// super source and `n+1` as the super sink.
struct FlowNet {
    size: usize,
    cap: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(g: &CapGraph, source: NodeSet, sink: NodeSet) -> Self {
        let size = g.n() + 2;
        let mut net = FlowNet {
            size,
            cap: vec![0; size * size],
            adj: vec![Vec::new(); size],
        };
        let inf: i64 = g.edges().iter().map(|e| e.cap).sum::<i64>() + 1;
        for e in g.edges() {
            net.add(e.lo, e.hi, e.cap);
            net.add(e.hi, e.lo, e.cap);
        }
        for v in source.iter() {
            net.add(0, v, inf);
        }
        for v in sink.iter() {
            net.add(v, size - 1, inf);
        }
        net
    }

    fn add(&mut self, u: usize, v: usize, c: i64) {
        if self.cap[u * self.size + v] == 0 && self.cap[v * self.size + u] == 0 {
            self.adj[u].push(v);
            self.adj[v].push(u);
        }
        self.cap[u * self.size + v] += c;
    }

    /// Pushes flow until none is left or `limit` is reached.
    fn run(&mut self, limit: i64) -> i64 {
        let (s, t) = (0, self.size - 1);
        let mut flow = 0;
        let mut parent = vec![usize::MAX; self.size];
        while flow < limit {
            parent.fill(usize::MAX);
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &v in &self.adj[u] {
                    if parent[v] == usize::MAX && self.cap[u * self.size + v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut v = t;
            while v != s {
                let u = parent[v];
                bottleneck = bottleneck.min(self.cap[u * self.size + v]);
                v = u;
            }
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.cap[u * self.size + v] -= bottleneck;
                self.cap[v * self.size + u] += bottleneck;
                v = u;
            }
            flow += bottleneck;
        }
        flow
    }
}

fn check_terminals(g: &CapGraph, source: NodeSet, sink: NodeSet) -> Result<(), CutError> {
    if source.is_empty() || sink.is_empty() || source.intersects(sink) {
        return Err(CutError::BadTerminals);
    }
    let all = source.union(sink);
    if let Some(v) = all.iter().find(|&v| v > g.n()) {
        return Err(CutError::NodeOutOfRange { node: v, n: g.n() });
    }
    Ok(())
}

/// Minimum capacity of a cut with `source` on one side and `sink` on the other.
pub fn max_flow(g: &CapGraph, source: NodeSet, sink: NodeSet) -> Result<i64, CutError> {
    check_terminals(g, source, sink)?;
    Ok(FlowNet::new(g, source, sink).run(i64::MAX))
}

/// Like [`max_flow`] but stops once the value reaches `limit`.
pub fn max_flow_bounded(
    g: &CapGraph,
    source: NodeSet,
    sink: NodeSet,
    limit: i64,
) -> Result<i64, CutError> {
    check_terminals(g, source, sink)?;
    Ok(FlowNet::new(g, source, sink).run(limit))
}

/// Counters from a branch-and-bound run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowStats {
    pub branches: u64,
    pub pruned: u64,
    pub flow_calls: u64,
}

/// Every cut of capacity below `g.lambda()`, by branch-and-bound with a
/// min-cut lower bound on each partial assignment.
pub fn enumerate_flow(g: &CapGraph) -> Result<CutFamily, CutError> {
    enumerate_flow_with_stats(g).map(|(f, _)| f)
}

pub fn enumerate_flow_with_stats(g: &CapGraph) -> Result<(CutFamily, FlowStats), CutError> {
    if !g.is_connected() {
        return Err(CutError::Disconnected);
    }
    let mut family = CutFamily::new(g.lambda());
    let mut stats = FlowStats::default();
    branch(
        g,
        2,
        NodeSet::empty().with(1),
        NodeSet::empty(),
        &mut family,
        &mut stats,
    );
    Ok((family, stats))
}

// `outside` holds v_1's shore, `inside` the canonical side.
fn branch(
    g: &CapGraph,
    next: usize,
    outside: NodeSet,
    inside: NodeSet,
    family: &mut CutFamily,
    stats: &mut FlowStats,
) {
    if next > g.n() {
        if !inside.is_empty() {
            let capacity = capacity_of(g, inside);
            if capacity < g.lambda() {
                family.cuts.insert(Cut {
                    side: inside,
                    capacity,
                });
            }
        }
        return;
    }
    for put_inside in [false, true] {
        stats.branches += 1;
        let (out2, in2) = if put_inside {
            (outside, inside.with(next))
        } else {
            (outside.with(next), inside)
        };
        if !in2.is_empty() {
            stats.flow_calls += 1;
            let bound = FlowNet::new(g, out2, in2).run(g.lambda());
            if bound >= g.lambda() {
                stats.pruned += 1;
                continue;
            }
        }
        branch(g, next + 1, out2, in2, family, stats);
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Runs `trials` capacity-weighted random contractions down to two super-nodes
/// and keeps every distinct cut below the threshold. The same seed always
/// yields the same family.
pub fn karger_probe(g: &CapGraph, trials: usize, seed: u64) -> CutFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let edges = g.edges();
    let mut family = CutFamily::new(g.lambda());
    let mut order: Vec<(f64, usize)> = Vec::with_capacity(edges.len());
    for _ in 0..trials {
        // Contracting in order of exponential clocks with rate `cap` picks each
        // next edge with probability proportional to its capacity.
        order.clear();
        for (idx, e) in edges.iter().enumerate() {
            let u: f64 = 1.0 - rng.gen::<f64>();
            order.push((-u.ln() / e.cap as f64, idx));
        }
        order.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut uf = UnionFind::new(n + 1);
        let mut components = n;
        for &(_, idx) in &order {
            if components == 2 {
                break;
            }
            let e = edges[idx];
            if uf.union(e.lo, e.hi) {
                components -= 1;
            }
        }
        let root = uf.find(1);
        let side: NodeSet = (2..=n).filter(|&v| uf.find(v) != root).collect();
        if side.is_empty() {
            continue;
        }
        let capacity = capacity_of(g, side);
        if capacity < g.lambda() {
            family.cuts.insert(Cut { side, capacity });
        }
    }
    family
}
