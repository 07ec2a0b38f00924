//! One test per acceptance criterion. Each prints a single line
//! `criterion N: PASS|FAIL ...` and then asserts.
//!
//! Run with `cargo test -p princ-oracle --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use princ_oracle as oracle;

use princ_core::census::{enumerate_lattices, probe_problem4, render_census, run_census};
use princ_core::congruence::{con_lattice, princ_order, principal_congruence};
use princ_core::construct::{render_exhaustive, verify_exhaustive, verify_theorem1, BuildOptions};
use princ_core::lattice::{builtin, Lattice};
use princ_core::parallel::with_jobs;
use princ_core::poset::{enumerate_bounded_posets, order_isomorphism, Poset};

const THEOREM_LIMIT: Duration = Duration::from_secs(600);
const SN7_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const CENSUS_LIMIT: Duration = Duration::from_secs(600);

fn report(criterion: u8, failures: &[String], detail: String) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS {detail}");
    } else {
        println!("criterion {criterion}: FAIL {detail}; {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {criterion}: {failures:?}");
}

fn within(limit: Duration, start: Instant, failures: &mut Vec<String>) -> Duration {
    let took = start.elapsed();
    if took > limit {
        failures.push(format!("took {took:?}, limit {limit:?}"));
    }
    took
}

fn order_of(p: &Poset) -> oracle::Order {
    (0..p.size())
        .map(|x| (0..p.size()).map(|y| p.leq(x, y)).collect())
        .collect()
}

fn tables_of(l: &Lattice) -> oracle::Tables {
    let n = l.size();
    oracle::Tables {
        join: (0..n).map(|x| (0..n).map(|y| l.join(x, y)).collect()).collect(),
        meet: (0..n).map(|x| (0..n).map(|y| l.meet(x, y)).collect()).collect(),
    }
}

/// Enumerated classes against the oracle: same count, and every oracle
/// class is isomorphic to some enumerated one.
fn classes_agree(found: &[oracle::Order], n: usize, lattices_only: bool) -> Result<(), String> {
    let expected = oracle::bounded_orders(n, lattices_only);
    if found.len() != expected.len() {
        return Err(format!(
            "n={n}: enumerated {} classes, oracle {}",
            found.len(),
            expected.len()
        ));
    }
    if !expected.iter().all(|o| found.iter().any(|f| oracle::isomorphic(f, o))) {
        return Err(format!("n={n}: an oracle class is missing"));
    }
    Ok(())
}

#[test]
fn criterion_1_theorem_exhaustive_up_to_six() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let posets = enumerate_bounded_posets(6).unwrap();
    for n in 1..=6 {
        let found: Vec<oracle::Order> = posets.iter().filter(|p| p.size() == n).map(order_of).collect();
        if let Err(e) = classes_agree(&found, n, false) {
            failures.push(e);
        }
    }
    for p in &posets {
        match verify_theorem1(p) {
            Ok(r) => {
                let princ = princ_order(&con_lattice(&r.construction.k));
                if !r.iso().is_valid(p, &princ) || order_isomorphism(p, &princ).is_none() {
                    failures.push(format!("witness map rejected on a {}-element poset", p.size()));
                }
            }
            Err(e) => failures.push(format!("{}-element poset: {e}", p.size())),
        }
    }
    let took = within(THEOREM_LIMIT, start, &mut failures);
    report(
        1,
        &failures,
        format!(
            "{} bounded posets with <= 6 elements, P ≅ Princ K for all, {took:?}",
            posets.len()
        ),
    );
}

#[test]
fn criterion_2_sn7() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let l = builtin("N7").unwrap();
    let cl = con_lattice(&l);
    let b2_plus_1 = Poset::new(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
    if cl.len() != 5 {
        failures.push(format!("con_size {}", cl.len()));
    }
    if order_isomorphism(&cl.as_poset(), &b2_plus_1).is_none() {
        failures.push("Con is not B2 + 1".into());
    }
    if cl.principal_count() != 4 {
        failures.push(format!("princ_size {}", cl.principal_count()));
    }
    let atoms: Vec<usize> = (1..cl.len())
        .filter(|&i| (1..cl.len()).all(|j| !cl.leq(j, i) || j == i))
        .collect();
    let missing: Vec<usize> = (0..cl.len()).filter(|&i| !cl.is_principal(i)).collect();
    let gamma = match atoms.as_slice() {
        [a, b] => cl.join_index(*a, *b),
        _ => None,
    };
    if gamma.is_none() || missing != gamma.into_iter().collect::<Vec<_>>() {
        failures.push(format!("non-principal {missing:?}, join of atoms {gamma:?}"));
    }
    if let Some(g) = gamma {
        if cl.valuation(g) != 2 {
            failures.push(format!("v(γ) = {}", cl.valuation(g)));
        }
    }
    let p = l.predicates();
    if !p.semimodular {
        failures.push("semimodular = false, expected true".into());
    }
    if p.modular {
        failures.push("modular = true, expected false".into());
    }
    let took = within(SN7_LIMIT, start, &mut failures);
    report(
        2,
        &failures,
        format!(
            "N7: con_size {}, princ_size {}, semimodular {}, modular {}, {took:?}",
            cl.len(),
            cl.principal_count(),
            p.semimodular,
            p.modular
        ),
    );
}

#[test]
fn criterion_3_congruence_oracle() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut lattices = 0;
    for n in 1..=6 {
        for l in enumerate_lattices(n).unwrap() {
            lattices += 1;
            let expected = oracle::congruences(&tables_of(&l));
            for a in 0..n {
                for b in 0..n {
                    let least = oracle::least_congruence(&expected, a, b);
                    if principal_congruence(&l, a, b).block_ids() != least.as_slice() {
                        failures.push(format!("con({a},{b}) on a {n}-element lattice"));
                    }
                }
            }
            let engine: BTreeSet<Vec<usize>> = con_lattice(&l)
                .congruences()
                .iter()
                .map(|c| c.block_ids().to_vec())
                .collect();
            let expected: BTreeSet<Vec<usize>> = expected.into_iter().collect();
            if engine != expected {
                failures.push(format!("Con differs on a {n}-element lattice"));
            }
        }
    }
    let took = within(ORACLE_LIMIT, start, &mut failures);
    report(
        3,
        &failures,
        format!("{lattices} lattices with <= 6 elements, {took:?}"),
    );
}

#[test]
fn criterion_4_census_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=7 {
        let found = enumerate_lattices(n).unwrap();
        let orders: Vec<oracle::Order> = found.iter().map(|l| order_of(l.order())).collect();
        if let Err(e) = classes_agree(&orders, n, true) {
            failures.push(e);
        }
        counts.push(found.len());
    }
    let took = within(CENSUS_LIMIT, start, &mut failures);
    report(4, &failures, format!("class counts n=1..7 {counts:?}, {took:?}"));
}

#[test]
fn criterion_5_valuation_axioms() {
    let mut failures = Vec::new();
    let records = run_census(8).unwrap();
    let mut checked = 0;
    for n in 1..=8 {
        for l in enumerate_lattices(n).unwrap() {
            let cl = con_lattice(&l);
            checked += 1;
            if cl.valuation(cl.identity_index()) != 0 {
                failures.push(format!("v(Δ) != 0 on a {n}-element lattice"));
            }
            for a in 0..cl.len() {
                if cl.is_principal(a) != (cl.valuation(a) <= 1) {
                    failures.push(format!("principal flag and v disagree on a {n}-element lattice"));
                }
                for b in 0..cl.len() {
                    let j = cl.join_index(a, b).expect("Con is closed under joins");
                    if cl.valuation(j) > cl.valuation(a) + cl.valuation(b) {
                        failures.push(format!("v(α∨β) > v(α) + v(β) on a {n}-element lattice"));
                    }
                }
            }
        }
    }
    if checked != records.len() {
        failures.push(format!("{checked} lattices checked, census has {}", records.len()));
    }
    report(5, &failures, format!("{checked} census lattices with <= 8 elements"));
}

#[test]
fn criterion_6_problem4() {
    let records = run_census(8).unwrap();
    let findings = probe_problem4(&records, 8);
    let mut failures = Vec::new();
    if findings.princ_sizes.keys().any(|s| !matches!(s, 7 | 8)) {
        failures.push(format!("observed {:?}", findings.princ_sizes));
    }
    if findings.matches.is_empty() {
        failures.push("no lattice with Con ≅ B3".into());
    }
    let text = findings.to_string();
    if !text.contains("n <= 8") {
        failures.push("findings do not state the n <= 8 scope".into());
    }
    report(
        6,
        &failures,
        format!(
            "{} lattices with Con ≅ B3, |Princ| values {:?}, scope n <= 8",
            findings.matches.len(),
            findings.princ_sizes
        ),
    );
}

#[test]
fn criterion_7_determinism() {
    let mut failures = Vec::new();
    let census = |jobs| with_jobs(jobs, || render_census(&run_census(7).unwrap()));
    let verify = |jobs| {
        with_jobs(jobs, || {
            render_exhaustive(&verify_exhaustive(5, BuildOptions::default()).unwrap())
        })
    };
    let census_one = census(1);
    for jobs in [1, 2, 4, 8] {
        if census(jobs) != census_one {
            failures.push(format!("census 7 differs with {jobs} workers"));
        }
    }
    let verify_one = verify(1);
    for jobs in [1, 2, 4, 8] {
        if verify(jobs) != verify_one {
            failures.push(format!("verify --exhaustive 5 differs with {jobs} workers"));
        }
    }
    report(
        7,
        &failures,
        format!(
            "census 7 ({} bytes) and verify --exhaustive 5 ({} bytes) identical for 1, 2, 4, 8 workers",
            census_one.len(),
            verify_one.len()
        ),
    );
}
