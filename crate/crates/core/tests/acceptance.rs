//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smallcuts::certify::{
    check_basis_matrix, full_reduction, listed_capacities, move_linkset, q_row_gh, reduce_q_row,
    verify_basic, verify_prop2,
};
use smallcuts::construction::{build_circulant, build_incidence_matrix, build_instance, ListedCut};
use smallcuts::cuts::{enumerate_bruteforce, enumerate_flow, karger_probe, CutFamily};
use smallcuts::exactmath::{IntMatrix, Rat};

/// The 10×10 small-cut/link incidence matrix for k = 4, rows Q_1..Q_3, N_1..N_7.
const GOLDEN_A_K4: [[i64; 10]; 10] = [
    [1, 0, 1, 0, 1, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 1, 1, 1],
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 1, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 1, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(
        took < limit,
        format!("{what} took {took:?}, limit {limit:?}"),
    )
}

fn ac1_golden_matrix() -> Outcome {
    let start = Instant::now();
    let inst = build_instance(4).map_err(|e| e.to_string())?;
    let a = build_incidence_matrix(&inst);
    ensure(
        a == IntMatrix::from_rows(&GOLDEN_A_K4),
        format!("A differs: {a:?}"),
    )?;
    let apq = build_circulant(4).map_err(|e| e.to_string())?;
    ensure(
        apq == IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]),
        "A^PQ differs",
    )?;
    within(start, Duration::from_secs(1), "golden check")?;
    Ok(format!(
        "A (10x10) and A^PQ match exactly in {:?}",
        start.elapsed()
    ))
}

fn ac2_circulant() -> Outcome {
    let start = Instant::now();
    for k in [4, 6, 8, 10, 12] {
        let c = build_circulant(k).map_err(|e| e.to_string())?;
        let det = c.det_bareiss().map_err(|e| e.to_string())?;
        ensure(det == BigInt::from(k / 2), format!("k={k}: det = {det}"))?;
        ensure(c.rank() == k - 1, format!("k={k}: rank = {}", c.rank()))?;
    }
    within(start, Duration::from_secs(1), "circulant checks")?;
    Ok("det(A^PQ) = k/2, rank = k-1 for k in {4,...,12}".into())
}

fn ac3_small_cut_capacities() -> Outcome {
    let start = Instant::now();
    for k in [4, 6, 8, 10] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let n = inst.n();
        for (cut, cap) in listed_capacities(&inst) {
            ensure(cap < 5, format!("k={k}: {cut} has capacity {cap}"))?;
            match cut {
                ListedCut::Q(_) => ensure(cap == 4, format!("k={k}: {cut} has capacity {cap}"))?,
                ListedCut::Nested(i) if i == 1 || i == n - 1 => {
                    ensure(cap == 3, format!("k={k}: {cut} has capacity {cap}"))?
                }
                ListedCut::Nested(_) => ensure(
                    cap == 3 || cap == 4,
                    format!("k={k}: {cut} has capacity {cap}"),
                )?,
            }
        }
    }
    within(start, Duration::from_secs(1), "capacity checks")?;
    Ok("nested cuts 3 or 4 (ends 3), Q-cuts 4, for k in {4,6,8,10}".into())
}

fn ac4_family_exactness() -> Outcome {
    let mut notes = Vec::new();
    let mut families: Vec<(usize, CutFamily)> = Vec::new();
    for (k, expected) in [(4, 10), (6, 21)] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let brute = enumerate_bruteforce(&inst.graph).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(1), &format!("brute force k={k}"))?;
        ensure(
            brute.len() == expected,
            format!("k={k}: brute force found {}", brute.len()),
        )?;
        ensure(
            verify_prop2(&inst, &brute).exact,
            format!("k={k}: brute-force family is not the listed one"),
        )?;
        let flow = enumerate_flow(&inst.graph).map_err(|e| e.to_string())?;
        ensure(
            flow == brute,
            format!("k={k}: flow and brute force disagree"),
        )?;
        notes.push(format!("k={k}: {expected} cuts"));
        families.push((k, flow));
    }
    let inst8 = build_instance(8).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let flow8 = enumerate_flow(&inst8.graph).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(300), "flow enumeration k=8")?;
    ensure(
        flow8.len() == 36,
        format!("k=8: flow found {}", flow8.len()),
    )?;
    ensure(
        verify_prop2(&inst8, &flow8).exact,
        "k=8: flow family is not the listed one",
    )?;
    notes.push(format!("k=8: 36 cuts by flow in {:?}", start.elapsed()));

    for (k, seed) in [(8, 0x5eed_0008u64), (10, 0x5eed_0010u64)] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let probe = karger_probe(&inst.graph, 100_000, seed);
        let check = verify_prop2(&inst, &probe);
        ensure(
            check.surplus.is_empty(),
            format!(
                "k={k}: probe found cuts outside the family: {:?}",
                check.surplus
            ),
        )?;
        ensure(
            probe
                .cuts
                .iter()
                .all(|c| c.capacity() == 3 || c.capacity() == 4),
            format!("k={k}: probe capacity outside {{3,4}}"),
        )?;
        notes.push(format!(
            "k={k}: probe saw {} family cuts, none outside",
            probe.len()
        ));
    }
    Ok(notes.join("; "))
}

fn ac5_basic_solution() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (k, m) in [(4, 10), (6, 21), (8, 36), (10, 55)] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let family = enumerate_flow(&inst.graph).map_err(|e| e.to_string())?;
        let cert = verify_basic(&inst, &family);
        ensure(
            cert.is_basic,
            format!("k={k}: not basic: {:?}", cert.failures),
        )?;
        ensure(
            cert.rank_a == m,
            format!("k={k}: rank(A) = {}", cert.rank_a),
        )?;
        ensure(
            cert.max_coordinate == Rat::new(1, k as i64),
            format!("k={k}: max coordinate {}", cert.max_coordinate),
        )?;
        notes.push(format!("k={k} rank {m} det(A) {}", cert.det_a));
    }
    within(
        start,
        Duration::from_secs(30),
        "basic-solution certification",
    )?;
    Ok(notes.join("; "))
}

fn ac6_worked_example() -> Outcome {
    let start = Instant::now();
    let inst = build_instance(4).map_err(|e| e.to_string())?;
    let gh: Vec<(usize, usize)> = (1..4).map(|j| q_row_gh(4, j).unwrap()).collect();
    ensure(
        gh == vec![(1, 3), (3, 5), (5, 7)],
        format!("(g,h) = {gh:?}"),
    )?;
    let halved: Vec<Vec<usize>> = (1..4).map(|j| reduce_q_row(&inst, j).unwrap()).collect();
    ensure(
        halved == vec![vec![1, 3], vec![2, 5], vec![6, 8]],
        format!("L' = {halved:?}"),
    )?;

    let (hat, steps) = move_linkset(&inst, &[2, 5]).map_err(|e| e.to_string())?;
    let path: Vec<Vec<usize>> = steps.iter().map(|s| s.links.clone()).collect();
    ensure(
        hat == vec![1, 2] && path == vec![vec![1, 2]],
        format!("Q_2 moves {path:?}"),
    )?;
    let (hat, steps) = move_linkset(&inst, &[6, 8]).map_err(|e| e.to_string())?;
    let path: Vec<Vec<usize>> = steps.iter().map(|s| s.links.clone()).collect();
    ensure(
        hat == vec![2, 3] && path == vec![vec![2, 6], vec![2, 3]],
        format!("Q_3 moves {path:?}"),
    )?;

    let reduction = full_reduction(&inst).map_err(|e| e.to_string())?;
    let phis: Vec<Vec<usize>> = reduction.traces.iter().map(|t| t.phi.clone()).collect();
    ensure(
        phis == vec![vec![1, 3], vec![1, 2], vec![2, 3]],
        format!("phi sets {phis:?}"),
    )?;
    within(start, Duration::from_secs(1), "worked example")?;
    Ok("(g,h), L', move chains and phi sets reproduced".into())
}

fn ac7_block_structure() -> Outcome {
    let start = Instant::now();
    for k in [4, 6, 8, 10] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let r = full_reduction(&inst).map_err(|e| format!("k={k}: {e}"))?;
        let m = inst.m();
        let top_left = r.reduced.submatrix(0..k - 1, 0..k - 1);
        ensure(
            top_left == build_circulant(k).unwrap().transpose(),
            format!("k={k}: top-left block"),
        )?;
        ensure(
            r.reduced.submatrix(0..k - 1, k - 1..m).is_zero(),
            format!("k={k}: top-right block"),
        )?;
        let a22 = r.reduced.submatrix(k - 1..m, k - 1..m);
        ensure(
            a22.is_lower_triangular() && (0..a22.rows()).all(|i| a22.get(i, i).is_one()),
            format!("k={k}: A22 not unit lower-triangular"),
        )?;
    }
    within(start, Duration::from_secs(10), "reductions")?;
    Ok("block shape holds for k in {4,6,8,10}".into())
}

fn ac8_mutations() -> Outcome {
    const PER_KIND: usize = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0xdead_beef);
    let mut total = 0;
    for k in [4, 6] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let family = enumerate_bruteforce(&inst.graph).map_err(|e| e.to_string())?;
        let m = inst.m();
        let baseline = verify_basic(&inst, &family);
        ensure(
            baseline.all_ok(),
            format!("k={k}: unmutated instance fails"),
        )?;

        for _ in 0..PER_KIND {
            let mut bad = inst.clone();
            let idx = rng.gen_range(0..m);
            let mut value = Rat::new(rng.gen_range(1..20i64), 20);
            if value == bad.xstar[idx] {
                value = Rat::new(1, 3);
            }
            bad.xstar[idx] = value.clone();
            let cert = verify_basic(&bad, &family);
            ensure(
                !cert.tight && !cert.is_basic,
                format!("k={k}: x*[{}] = {value} undetected", idx + 1),
            )?;
            total += 1;
        }
        for _ in 0..PER_KIND {
            let mut fewer = family.clone();
            let victim = *fewer
                .cuts
                .iter()
                .nth(rng.gen_range(0..fewer.len()))
                .unwrap();
            fewer.cuts.remove(&victim);
            let check = verify_prop2(&inst, &fewer);
            let cert = verify_basic(&inst, &fewer);
            ensure(
                !check.exact && check.missing.len() == 1 && !cert.is_basic,
                format!("k={k}: removal of {:?} undetected", victim.side()),
            )?;
            total += 1;
        }
        let a = build_incidence_matrix(&inst);
        for _ in 0..PER_KIND {
            let (r, c) = (rng.gen_range(0..m), rng.gen_range(0..m));
            let flipped = if a.get(r, c).is_one() { 0 } else { 1 };
            let mut bad = a.clone();
            bad.set(r, c, BigInt::from(flipped));
            ensure(
                !check_basis_matrix(&inst, &bad).tight(),
                format!("k={k}: flip of A[{r}][{c}] undetected"),
            )?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} mutations detected ({} per k)",
        3 * PER_KIND
    ))
}

fn ac9_jain_threshold() -> Outcome {
    let mut previous: Option<Rat> = None;
    let mut shown = Vec::new();
    for k in [4, 6, 8, 10] {
        let inst = build_instance(k).map_err(|e| e.to_string())?;
        let family = enumerate_flow(&inst.graph).map_err(|e| e.to_string())?;
        let cert = verify_basic(&inst, &family);
        ensure(cert.is_basic, format!("k={k}: not certified"))?;
        ensure(
            cert.below_half && cert.max_coordinate < Rat::new(1, 2),
            format!("k={k}: max not below 1/2"),
        )?;
        if let Some(p) = &previous {
            ensure(
                cert.max_coordinate < *p,
                format!("k={k}: max coordinate not decreasing"),
            )?;
        }
        shown.push(format!("k={k}: {}", cert.max_coordinate));
        previous = Some(cert.max_coordinate);
    }
    Ok(format!(
        "max coordinate {} (all < 1/2, decreasing)",
        shown.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "golden incidence matrix k=4", ac1_golden_matrix),
        ("AC2", "circulant determinant and rank", ac2_circulant),
        ("AC3", "listed cuts are small", ac3_small_cut_capacities),
        ("AC4", "small-cut family exactness", ac4_family_exactness),
        ("AC5", "x* is a basic solution", ac5_basic_solution),
        ("AC6", "worked reduction example k=4", ac6_worked_example),
        ("AC7", "reduced block structure", ac7_block_structure),
        ("AC8", "mutation detection", ac8_mutations),
        ("AC9", "all coordinates below 1/2", ac9_jain_threshold),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("{id} PASS {name} [{:.2?}] {detail}", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {name} [{:.2?}] {why}", start.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
