//! Certificates for a built [`Instance`]: small-cut capacities, exactness of the
//! small-cut family, tightness of `x*`, full rank of the basis matrix, and an
//! executable replay of the row operations that reduce the Q-rows of `A` to the
//! transposed path/Q-set matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::construction::{
    build_circulant, build_incidence_matrix, validate_k, BuildError, Instance, ListedCut,
};
use crate::cuts::{Cut, CutFamily, NodeSet};
use crate::exactmath::{IntMatrix, MathError, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("cut {cut} has capacity {capacity}, not below {lambda}")]
    NotSmall {
        cut: ListedCut,
        capacity: i64,
        lambda: i64,
    },
    #[error("reduction of row Q_{row}: {message}")]
    Reduction { row: usize, message: String },
    #[error("link set {links:?}: {message}")]
    LinkSet { links: Vec<usize>, message: String },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Math(#[from] MathError),
}

impl Serialize for ListedCut {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ListedCut {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for ListedCut {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| format!("bad cut label {s:?}"))
        };
        if let Some(j) = s.strip_prefix("Q_") {
            Ok(ListedCut::Q(parse(j)?))
        } else if let Some(i) = s.strip_prefix("N_") {
            Ok(ListedCut::Nested(parse(i)?))
        } else {
            Err(format!("bad cut label {s:?}"))
        }
    }
}

/// Canonical side (the shore without `v_1`) of a listed cut.
pub fn listed_side(inst: &Instance, cut: ListedCut) -> NodeSet {
    match cut {
        ListedCut::Q(j) => inst.qset(j).nodes().collect(),
        ListedCut::Nested(i) => NodeSet::range(i + 1, inst.n()),
    }
}

pub fn listed_cut(inst: &Instance, cut: ListedCut) -> Cut {
    Cut::new(&inst.graph, listed_side(inst, cut)).expect("listed cuts are proper")
}

/// `x*(δ(S))`, exactly.
pub fn coverage(inst: &Instance, cut: &Cut) -> Rat {
    inst.links
        .iter()
        .filter(|l| cut.separates(l.lo, l.hi))
        .map(|l| &inst.xstar[l.id - 1])
        .sum()
}

pub fn listed_capacities(inst: &Instance) -> BTreeMap<ListedCut, i64> {
    inst.listed_cuts()
        .into_iter()
        .map(|c| (c, listed_cut(inst, c).capacity()))
        .collect()
}

/// Capacities of every nested cut and Q-cut; fails on the first one that is
/// not below the threshold.
pub fn verify_prop1(inst: &Instance) -> Result<BTreeMap<ListedCut, i64>, CertifyError> {
    let caps = listed_capacities(inst);
    for (&cut, &capacity) in &caps {
        if capacity >= inst.lambda() {
            return Err(CertifyError::NotSmall {
                cut,
                capacity,
                lambda: inst.lambda(),
            });
        }
    }
    Ok(caps)
}

/// Result of comparing an enumerated family against the listed small cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub exact: bool,
    pub expected: usize,
    pub found: usize,
    pub missing: Vec<ListedCut>,
    /// Canonical sides of unexpected cuts, as node lists.
    pub surplus: Vec<Vec<usize>>,
}

/// Whether `family` is exactly `{δ(N_i)} ∪ {δ(Q_j)}`, with witnesses either way.
pub fn verify_prop2(inst: &Instance, family: &CutFamily) -> FamilyCheck {
    let listed: BTreeMap<NodeSet, ListedCut> = inst
        .listed_cuts()
        .into_iter()
        .map(|c| (listed_side(inst, c), c))
        .collect();
    let found = family.sides();
    let missing: Vec<ListedCut> = listed
        .iter()
        .filter(|(side, _)| !found.contains(side))
        .map(|(_, &c)| c)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let surplus: Vec<Vec<usize>> = found
        .iter()
        .filter(|s| !listed.contains_key(s))
        .map(|s| s.iter().collect())
        .collect();
    FamilyCheck {
        exact: missing.is_empty() && surplus.is_empty(),
        expected: listed.len(),
        found: found.len(),
        missing,
        surplus,
    }
}

/// Verdicts about a candidate basis matrix against the instance's `x*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCheck {
    /// Rows where `(A x*)_r != 1`.
    pub untight_rows: Vec<usize>,
    pub rank: usize,
}

impl MatrixCheck {
    pub fn tight(&self) -> bool {
        self.untight_rows.is_empty()
    }
}

pub fn check_basis_matrix(inst: &Instance, a: &IntMatrix) -> MatrixCheck {
    let one = Rat::one();
    let untight_rows = a
        .mul_vec(&inst.xstar)
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != one)
        .map(|(r, _)| r)
        .collect();
    MatrixCheck {
        untight_rows,
        rank: a.rank(),
    }
}

fn bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn bigint_parse<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

/// Everything certified about one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub lambda: i64,
    pub family: FamilyCheck,
    pub listed_capacities: BTreeMap<ListedCut, i64>,
    /// Every listed cut is below the threshold.
    pub listed_small: bool,
    /// `x*` covers every cut of the family at least once.
    pub feasible: bool,
    /// Every listed cut is in the family and covered exactly once.
    pub tight: bool,
    /// `0 < x*_l < 1` for all links, so no bound constraint is tight.
    pub bounds_strict: bool,
    pub rank_a: usize,
    /// Rank of the family rows that `x*` covers with equality.
    pub rank_tight: usize,
    #[serde(serialize_with = "bigint_string", deserialize_with = "bigint_parse")]
    pub det_a: BigInt,
    #[serde(serialize_with = "bigint_string", deserialize_with = "bigint_parse")]
    pub det_circulant: BigInt,
    pub is_basic: bool,
    pub max_coordinate: Rat,
    /// `max_coordinate < 1/2`.
    pub below_half: bool,
    pub reduction_ok: bool,
    pub traces: Vec<ReductionTrace>,
    pub failures: Vec<String>,
}

impl Certificate {
    /// All verdicts hold.
    pub fn all_ok(&self) -> bool {
        self.is_basic && self.family.exact && self.listed_small && self.reduction_ok
    }

    /// Name of the first failing verdict, if any.
    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}

/// Certifies that `x*` is a vertex of the small-cut covering polyhedron defined
/// by `family`: feasible, no tight bounds, and tight constraints of rank `m`.
pub fn verify_basic(inst: &Instance, family: &CutFamily) -> Certificate {
    let m = inst.m();
    let mut failures = Vec::new();
    let one = Rat::one();

    let family_check = verify_prop2(inst, family);
    if !family_check.exact {
        failures.push(format!(
            "family_exact: missing {:?}, surplus {:?}",
            family_check.missing, family_check.surplus
        ));
    }

    let caps = listed_capacities(inst);
    let listed_small = caps.values().all(|&c| c < inst.lambda());
    if !listed_small {
        failures.push("listed_small".into());
    }

    let links_matrix = |cuts: &[Cut]| -> IntMatrix {
        let mut rows = IntMatrix::zeros(cuts.len(), m);
        for (r, c) in cuts.iter().enumerate() {
            for l in &inst.links {
                if c.separates(l.lo, l.hi) {
                    rows.set(r, l.id - 1, BigInt::one());
                }
            }
        }
        rows
    };

    let mut feasible = true;
    let mut tight_cuts = Vec::new();
    for cut in &family.cuts {
        let cov = coverage(inst, cut);
        if cov < one {
            feasible = false;
            failures.push(format!("feasible: cut {:?} covered {}", cut.side(), cov));
        } else if cov == one {
            tight_cuts.push(*cut);
        }
    }

    let mut tight = true;
    for c in inst.listed_cuts() {
        let side = listed_side(inst, c);
        if !family.contains_side(side) {
            tight = false;
            failures.push(format!("tight: {c} not in family"));
            continue;
        }
        let cov = coverage(inst, &listed_cut(inst, c));
        if cov != one {
            tight = false;
            failures.push(format!("tight: {c} covered {cov}"));
        }
    }

    let a = build_incidence_matrix(inst);
    let matrix = check_basis_matrix(inst, &a);
    if !matrix.tight() {
        tight = false;
        failures.push(format!(
            "tight: rows {:?} of A x* differ from 1",
            matrix.untight_rows
        ));
    }

    let zero = Rat::zero();
    let bounds_strict = inst.xstar.len() == m && inst.xstar.iter().all(|x| *x > zero && *x < one);
    if !bounds_strict {
        failures.push("bounds_strict".into());
    }

    let rank_tight = links_matrix(&tight_cuts).rank();
    if rank_tight != m {
        failures.push(format!(
            "rank: tight constraints have rank {rank_tight} < {m}"
        ));
    }
    let det_a = a.det_bareiss().expect("A is square");
    let det_circulant = build_circulant(inst.k)
        .map(|c| c.det_bareiss().expect("square"))
        .unwrap_or_else(|_| BigInt::zero());

    let is_basic = feasible && tight && bounds_strict && rank_tight == m;

    let max_coordinate = inst
        .xstar
        .iter()
        .filter(|x| x.is_positive())
        .max()
        .cloned()
        .unwrap_or_else(Rat::zero);
    let below_half = max_coordinate < Rat::new(1, 2);

    let (reduction_ok, traces) = match full_reduction(inst) {
        Ok(r) => (true, r.traces),
        Err(e) => {
            failures.push(format!("reduction: {e}"));
            (false, Vec::new())
        }
    };

    Certificate {
        k: inst.k,
        n: inst.n(),
        m,
        lambda: inst.lambda(),
        family: family_check,
        listed_capacities: caps,
        listed_small,
        feasible,
        tight,
        bounds_strict,
        rank_a: matrix.rank,
        rank_tight,
        det_a,
        det_circulant,
        is_basic,
        max_coordinate,
        below_half,
        reduction_ok,
        traces,
        failures,
    }
}

/// `(g, h)` for row `Q_j`: the last nested set disjoint from `Q_j` and the first
/// one containing it.
pub fn q_row_gh(k: usize, j: usize) -> Result<(usize, usize), BuildError> {
    let half = validate_k(k)?;
    if j == 0 || j >= k {
        return Err(BuildError::IndexOutOfRange {
            what: "Q-set",
            index: j,
            max: k - 1,
        });
    }
    Ok((1 + (j - 1) * half, 1 + j * half))
}

/// One application of `χ^{L'} - χ^{δ(N_h)} + χ^{δ(N_g)} = χ^{L''}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveStep {
    pub h: usize,
    pub g: usize,
    /// `L''`, link ids ascending.
    pub links: Vec<usize>,
}

/// The row operations applied to one Q-row of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub j: usize,
    pub g: usize,
    pub h: usize,
    /// Links of `δ(Q_j)`.
    pub q_links: Vec<usize>,
    /// `L'` after subtracting `δ(N_h)`, adding `δ(N_g)` and halving.
    pub halved: Vec<usize>,
    pub steps: Vec<MoveStep>,
    /// Final support of the row; always a subset of `ℓ_1..ℓ_{k-1}`.
    pub final_links: Vec<usize>,
    /// Path indices meeting the original row, `φ(δ(Q_j))`.
    pub phi: Vec<usize>,
}

/// The reduced matrix and the per-row traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: IntMatrix,
    pub traces: Vec<ReductionTrace>,
}

fn support(row: &[BigInt]) -> Vec<usize> {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, _)| c + 1)
        .collect()
}

fn phi(inst: &Instance, links: &[usize]) -> BTreeSet<usize> {
    links.iter().map(|&id| inst.link(id).path).collect()
}

fn nested_row(inst: &Instance, i: usize) -> usize {
    inst.row_of(ListedCut::Nested(i))
}

/// Applies the Q-row operation to `work` in place, then halves the row.
/// Returns `(g, h, L')`.
fn apply_q_step(
    inst: &Instance,
    work: &mut IntMatrix,
    j: usize,
) -> Result<(usize, usize, Vec<usize>), CertifyError> {
    let err = |message: String| CertifyError::Reduction { row: j, message };
    let (g, h) = q_row_gh(inst.k, j)?;
    let row = inst.row_of(ListedCut::Q(j));
    work.row_combine_in_place(row, &[(-1, nested_row(inst, h)), (1, nested_row(inst, g))])?;
    let two = BigInt::from(2);
    if let Some(bad) = work.row(row).iter().find(|v| !v.is_zero() && **v != two) {
        return Err(err(format!("entry {bad} outside {{0, 2}}")));
    }
    let lp = support(work.row(row));
    if lp.len() != inst.half() {
        return Err(err(format!(
            "|L'| = {}, expected {}",
            lp.len(),
            inst.half()
        )));
    }
    if lp.contains(&inst.k) {
        return Err(err("L' contains the link st".into()));
    }
    let q_cut: BTreeSet<usize> = inst.cut_links(ListedCut::Q(j)).into_iter().collect();
    let g_cut: BTreeSet<usize> = inst.cut_links(ListedCut::Nested(g)).into_iter().collect();
    let expected: Vec<usize> = q_cut.intersection(&g_cut).copied().collect();
    if lp != expected {
        return Err(err(format!(
            "L' = {lp:?}, expected δ(Q_j) ∩ δ(N_g) = {expected:?}"
        )));
    }
    work.divide_row_exact(row, 2)?;
    Ok((g, h, lp))
}

/// Smallest `i` with `links ⊆ δ(N_i)`, if any.
fn smallest_nested_containing(inst: &Instance, links: &[usize]) -> Option<usize> {
    let lo = links.iter().map(|&id| inst.link(id).lo).max()?;
    let hi = links.iter().map(|&id| inst.link(id).hi).min()?;
    (lo < hi).then_some(lo)
}

/// Repeats the move step on `work[row]` (a 0/1 row `χ^{L'}`) until the support
/// lies in `δ(N_1)`.
fn apply_moves(
    inst: &Instance,
    work: &mut IntMatrix,
    row: usize,
) -> Result<(Vec<usize>, Vec<MoveStep>), CertifyError> {
    let start = support(work.row(row));
    let err = |links: &[usize], message: String| CertifyError::LinkSet {
        links: links.to_vec(),
        message,
    };
    let target_phi = phi(inst, &start);
    let mut steps = Vec::new();
    let mut current = start.clone();
    let mut last_h = usize::MAX;
    loop {
        if work.row(row).iter().any(|v| !v.is_zero() && !v.is_one()) {
            return Err(err(&current, "row is not 0/1".into()));
        }
        if current.len() != inst.half() || current.contains(&inst.k) {
            return Err(err(
                &current,
                format!("expected {} links avoiding st", inst.half()),
            ));
        }
        let h = smallest_nested_containing(inst, &current)
            .ok_or_else(|| err(&current, "not contained in any nested cut".into()))?;
        if h >= last_h {
            return Err(err(
                &current,
                format!("h did not decrease ({last_h} -> {h})"),
            ));
        }
        if h == 1 {
            break;
        }
        if steps.len() > inst.n() {
            return Err(err(&current, "move loop did not terminate".into()));
        }
        last_h = h;
        let h_cut: BTreeSet<usize> = inst.cut_links(ListedCut::Nested(h)).into_iter().collect();
        let complement: Vec<usize> = h_cut
            .iter()
            .filter(|l| !current.contains(l))
            .copied()
            .collect();
        let g = smallest_nested_containing(inst, &complement)
            .ok_or_else(|| err(&complement, "complement not in a nested cut".into()))?;
        if g >= h {
            return Err(err(&current, format!("g = {g} not below h = {h}")));
        }
        work.row_combine_in_place(row, &[(-1, nested_row(inst, h)), (1, nested_row(inst, g))])?;
        let next = support(work.row(row));
        let expected: Vec<usize> = inst
            .cut_links(ListedCut::Nested(g))
            .into_iter()
            .filter(|l| !complement.contains(l))
            .collect();
        if next != expected {
            return Err(err(
                &current,
                format!("step gave {next:?}, expected {expected:?}"),
            ));
        }
        if phi(inst, &next) != target_phi {
            return Err(err(&current, "path map changed".into()));
        }
        steps.push(MoveStep {
            h,
            g,
            links: next.clone(),
        });
        current = next;
    }
    let hat: Vec<usize> = target_phi.iter().copied().collect();
    if current != hat {
        return Err(err(&current, format!("final set differs from φ = {hat:?}")));
    }
    Ok((current, steps))
}

/// `L'` for row `Q_j`, after checking that the row operation yields `2χ^{L'}`.
pub fn reduce_q_row(inst: &Instance, j: usize) -> Result<Vec<usize>, CertifyError> {
    let mut work = build_incidence_matrix(inst);
    apply_q_step(inst, &mut work, j).map(|(_, _, lp)| lp)
}

/// Moves `χ^{L'}` to `χ^{L̂}` with `L̂ = {ℓ_i : i ∈ φ(L')}` by nested-row operations.
pub fn move_linkset(
    inst: &Instance,
    links: &[usize],
) -> Result<(Vec<usize>, Vec<MoveStep>), CertifyError> {
    let a = build_incidence_matrix(inst);
    let m = inst.m();
    let mut entries: Vec<BigInt> = (0..a.rows()).flat_map(|r| a.row(r).to_vec()).collect();
    let mut extra = vec![BigInt::zero(); m];
    for &id in links {
        if id == 0 || id > m {
            return Err(CertifyError::LinkSet {
                links: links.to_vec(),
                message: format!("link {id} out of range"),
            });
        }
        extra[id - 1] = BigInt::one();
    }
    entries.extend(extra);
    let mut work = IntMatrix::from_entries(a.rows() + 1, m, entries)?;
    apply_moves(inst, &mut work, a.rows())
}

/// Reduces every Q-row of the instance's `A`; see [`reduce_matrix`].
pub fn full_reduction(inst: &Instance) -> Result<Reduction, CertifyError> {
    reduce_matrix(inst, &build_incidence_matrix(inst))
}

/// Runs the Q-row operation and the move steps on each Q-row of `a`, then
/// checks the block shape: top-left `(A^PQ)^T`, top-right zero, bottom-right
/// unit lower-triangular.
pub fn reduce_matrix(inst: &Instance, a: &IntMatrix) -> Result<Reduction, CertifyError> {
    let k = inst.k;
    let m = inst.m();
    let mut work = a.clone();
    let mut traces = Vec::with_capacity(k - 1);
    for j in 1..k {
        let q_links = support(a.row(inst.row_of(ListedCut::Q(j))));
        let (g, h, halved) = apply_q_step(inst, &mut work, j)?;
        let (final_links, steps) =
            apply_moves(inst, &mut work, j - 1).map_err(|e| CertifyError::Reduction {
                row: j,
                message: e.to_string(),
            })?;
        let phi_q: Vec<usize> = phi(inst, &q_links).into_iter().collect();
        if final_links != phi_q {
            return Err(CertifyError::Reduction {
                row: j,
                message: format!(
                    "final support {final_links:?} differs from φ(δ(Q_j)) = {phi_q:?}"
                ),
            });
        }
        traces.push(ReductionTrace {
            j,
            g,
            h,
            q_links,
            halved,
            steps,
            final_links,
            phi: phi_q,
        });
    }

    let shape = |message: &str| CertifyError::Reduction {
        row: 0,
        message: message.to_string(),
    };
    if work.submatrix(0..k - 1, 0..k - 1) != build_circulant(k)?.transpose() {
        return Err(shape("top-left block is not the transposed circulant"));
    }
    if !work.submatrix(0..k - 1, k - 1..m).is_zero() {
        return Err(shape("top-right block is not zero"));
    }
    let a22 = work.submatrix(k - 1..m, k - 1..m);
    if !a22.is_lower_triangular() || !(0..a22.rows()).all(|i| a22.get(i, i).is_one()) {
        return Err(shape("nested block is not unit lower-triangular"));
    }
    if work.rank() != a.rank() {
        return Err(shape("row operations changed the rank"));
    }
    Ok(Reduction {
        reduced: work,
        traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_instance;
    use crate::cuts::{enumerate_bruteforce, enumerate_flow};

    fn inst(k: usize) -> Instance {
        build_instance(k).unwrap()
    }

    #[test]
    fn coverage_examples_k4() {
        let i4 = inst(4);
        assert_eq!(
            coverage(&i4, &listed_cut(&i4, ListedCut::Nested(3))),
            Rat::one()
        );
        assert_eq!(coverage(&i4, &listed_cut(&i4, ListedCut::Q(2))), Rat::one());
        let t = Cut::new(&i4.graph, NodeSet::empty().with(8)).unwrap();
        assert_eq!(coverage(&i4, &t), Rat::one());
    }

    #[test]
    fn prop1_k4() {
        let caps = verify_prop1(&inst(4)).unwrap();
        assert_eq!(caps[&ListedCut::Nested(1)], 3);
        assert_eq!(caps[&ListedCut::Nested(7)], 3);
        assert_eq!(caps[&ListedCut::Nested(2)], 4);
        assert_eq!(caps[&ListedCut::Q(2)], 4);
    }

    #[test]
    fn prop1_reports_offender() {
        let mut i4 = inst(4);
        i4.graph = i4.graph.with_lambda(4);
        match verify_prop1(&i4) {
            Err(CertifyError::NotSmall {
                cut, capacity: 4, ..
            }) => assert_eq!(cut, ListedCut::Q(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prop2_detects_missing_cut() {
        let i4 = inst(4);
        let mut fam = enumerate_bruteforce(&i4.graph).unwrap();
        assert!(verify_prop2(&i4, &fam).exact);
        let q3 = listed_cut(&i4, ListedCut::Q(3));
        fam.cuts.remove(&q3);
        let check = verify_prop2(&i4, &fam);
        assert!(!check.exact);
        assert_eq!(check.missing, vec![ListedCut::Q(3)]);
        assert!(check.surplus.is_empty());
    }

    #[test]
    fn prop2_k6_flow() {
        let i6 = inst(6);
        assert!(verify_prop2(&i6, &enumerate_flow(&i6.graph).unwrap()).exact);
    }

    #[test]
    fn gh_examples() {
        assert_eq!(q_row_gh(4, 1), Ok((1, 3)));
        assert_eq!(q_row_gh(4, 2), Ok((3, 5)));
        assert_eq!(q_row_gh(4, 3), Ok((5, 7)));
        assert!(q_row_gh(4, 4).is_err());
    }

    // g, h straight from their definitions.
    #[test]
    fn gh_matches_definition() {
        for k in (4..=12).step_by(2) {
            let i = inst(k);
            for j in 1..k {
                let q = i.qset(j);
                let g = (1..i.n())
                    .filter(|&t| q.nodes().all(|v| v > t))
                    .max()
                    .unwrap();
                let h = (1..i.n()).find(|&t| q.nodes().all(|v| v <= t)).unwrap();
                assert_eq!(q_row_gh(k, j), Ok((g, h)));
            }
        }
    }

    #[test]
    fn q_row_examples() {
        let i4 = inst(4);
        assert_eq!(reduce_q_row(&i4, 1).unwrap(), vec![1, 3]);
        assert_eq!(reduce_q_row(&i4, 2).unwrap(), vec![2, 5]);
        assert_eq!(reduce_q_row(&i4, 3).unwrap(), vec![6, 8]);
    }

    #[test]
    fn q_step_difference_is_twice_indicator() {
        let i4 = inst(4);
        let a = build_incidence_matrix(&i4);
        let out = a
            .row_combine(
                0,
                &[
                    (-1, i4.row_of(ListedCut::Nested(3))),
                    (1, i4.row_of(ListedCut::Nested(1))),
                ],
            )
            .unwrap();
        assert_eq!(out.row_i64(0).unwrap(), vec![2, 0, 2, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn move_examples() {
        let i4 = inst(4);
        let (hat, steps) = move_linkset(&i4, &[2, 5]).unwrap();
        assert_eq!(hat, vec![1, 2]);
        assert_eq!(
            steps,
            vec![MoveStep {
                h: 2,
                g: 1,
                links: vec![1, 2]
            }]
        );

        let (hat, steps) = move_linkset(&i4, &[6, 8]).unwrap();
        assert_eq!(hat, vec![2, 3]);
        assert_eq!(
            steps,
            vec![
                MoveStep {
                    h: 5,
                    g: 4,
                    links: vec![2, 6]
                },
                MoveStep {
                    h: 3,
                    g: 2,
                    links: vec![2, 3]
                },
            ]
        );

        let (hat, steps) = move_linkset(&i4, &[1, 3]).unwrap();
        assert_eq!(hat, vec![1, 3]);
        assert!(steps.is_empty());
    }

    #[test]
    fn move_rejects_bad_sets() {
        let i4 = inst(4);
        assert!(move_linkset(&i4, &[4, 1]).is_err());
        assert!(move_linkset(&i4, &[1]).is_err());
        assert!(move_linkset(&i4, &[1, 11]).is_err());
        // ℓ_1 = (1,2) and ℓ_10 = (7,8) share no nested cut.
        assert!(move_linkset(&i4, &[1, 10]).is_err());
    }

    #[test]
    fn reduction_k4_phi_sets() {
        let r = full_reduction(&inst(4)).unwrap();
        let phis: Vec<Vec<usize>> = r.traces.iter().map(|t| t.phi.clone()).collect();
        assert_eq!(phis, vec![vec![1, 3], vec![1, 2], vec![2, 3]]);
        let top = r.reduced.submatrix(0..3, 0..3);
        assert_eq!(
            top,
            IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]).transpose()
        );
    }

    #[test]
    fn reduction_invariants() {
        for k in [4, 6, 8] {
            let i = inst(k);
            let r = full_reduction(&i).unwrap();
            for t in &r.traces {
                assert_eq!(t.final_links.len(), k / 2);
                assert_eq!(t.q_links.len(), k);
            }
            // det(A) = 2^{k-1} det(reduced) since only the halvings rescale rows.
            let det_a = build_incidence_matrix(&i).det_bareiss().unwrap();
            let det_r = r.reduced.det_bareiss().unwrap();
            assert_eq!(det_r, BigInt::from(k / 2));
            assert_eq!(det_a, det_r * BigInt::from(1u64 << (k - 1)));
        }
    }

    #[test]
    fn nested_cuts_meet_every_path_once() {
        for k in [4, 6, 8] {
            let i = inst(k);
            for n in 1..i.n() {
                let links = i.cut_links(ListedCut::Nested(n));
                let paths = phi(&i, &links);
                assert_eq!(links.len(), k);
                assert_eq!(paths, (1..=k).collect());
            }
        }
    }

    #[test]
    fn basic_k4() {
        let i4 = inst(4);
        let fam = enumerate_bruteforce(&i4.graph).unwrap();
        let cert = verify_basic(&i4, &fam);
        assert!(cert.all_ok(), "{:?}", cert.failures);
        assert_eq!(cert.rank_a, 10);
        assert_eq!(cert.max_coordinate, Rat::new(1, 4));
        assert!(cert.below_half);
    }

    #[test]
    fn basic_k4_perturbed() {
        let mut i4 = inst(4);
        let fam = enumerate_bruteforce(&i4.graph).unwrap();
        i4.xstar[0] = Rat::new(1, 2);
        let cert = verify_basic(&i4, &fam);
        assert!(!cert.is_basic);
        assert!(!cert.tight);
        assert!(cert.failures.iter().any(|f| f.contains("N_1")));
    }

    #[test]
    fn listed_cut_labels_round_trip() {
        for c in [ListedCut::Q(3), ListedCut::Nested(12)] {
            assert_eq!(c.to_string().parse::<ListedCut>(), Ok(c));
        }
        assert!("X_1".parse::<ListedCut>().is_err());
    }
}
