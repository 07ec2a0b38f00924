use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;

use princ_core::census::{enumerate_lattices, run_census};
use princ_core::congruence::{check_princ_axioms, con_lattice, principal_congruence};
use princ_core::construct::{build_k, shipped_templates, verify_theorem1_with, BuildOptions};
use princ_core::io::{self, export_dot};
use princ_core::lattice::{builtin, Lattice};
use princ_core::poset::{enumerate_bounded_posets, Poset};

fn census_lattices(max: usize) -> impl Iterator<Item = Lattice> {
    (1..=max).flat_map(|n| enumerate_lattices(n).unwrap())
}

/// Five distinct elements `o < a, b, c < i` forming N5 or M3 as a sublattice.
fn has_sublattice(l: &Lattice, pentagon: bool) -> bool {
    let n = l.size();
    let closed = |o: usize, i: usize, a: usize, b: usize, c: usize| {
        [(a, b), (a, c), (b, c)]
            .iter()
            .all(|&(x, y)| l.join(x, y) == i && l.meet(x, y) == o)
    };
    for o in 0..n {
        for i in 0..n {
            if o == i || !l.leq(o, i) {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let distinct = [o, i, a, b, c]
                            .iter()
                            .enumerate()
                            .all(|(k, x)| [o, i, a, b, c][..k].iter().all(|y| y != x));
                        if !distinct {
                            continue;
                        }
                        if pentagon {
                            // o < a < b < i, c the other arm
                            let ok = l.leq(a, b)
                                && l.join(a, c) == i
                                && l.join(b, c) == i
                                && l.meet(a, c) == o
                                && l.meet(b, c) == o;
                            if ok {
                                return true;
                            }
                        } else if closed(o, i, a, b, c) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn predicates_match_sublattice_characterization() {
    for l in census_lattices(7) {
        let p = l.predicates();
        let n5 = has_sublattice(&l, true);
        let m3 = has_sublattice(&l, false);
        assert_eq!(p.modular, !n5);
        assert_eq!(p.distributive, !n5 && !m3);
    }
}

#[test]
fn predicate_implications_hold_on_census() {
    for l in census_lattices(8) {
        let p = l.predicates();
        assert!(!p.distributive || p.modular);
        assert!(!p.modular || p.semimodular);
    }
}

#[test]
fn census_lattices_satisfy_laws() {
    for l in census_lattices(8) {
        l.check_laws().unwrap();
        assert!(principal_congruence(&l, l.zero(), l.one()).is_total());
        check_princ_axioms(&l).unwrap();
    }
}

#[test]
fn valuation_matches_subset_search() {
    // v(α) is the least number of principal congruences joining to α.
    for l in census_lattices(6) {
        let cl = con_lattice(&l);
        let principal: Vec<usize> = cl
            .principal_indices()
            .into_iter()
            .filter(|&i| i != cl.identity_index())
            .collect();
        let mut best = vec![usize::MAX; cl.len()];
        best[cl.identity_index()] = 0;
        for mask in 1u64..1 << principal.len() {
            let mut acc = cl.get(cl.identity_index()).clone();
            for (k, &i) in principal.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    acc = acc.join(cl.get(i));
                }
            }
            let at = cl.index_of(&acc).unwrap();
            best[at] = best[at].min(mask.count_ones() as usize);
        }
        for (i, &v) in best.iter().enumerate() {
            assert_eq!(cl.valuation(i), v);
        }
    }
}

#[test]
fn census_records_are_consistent() {
    for r in run_census(8).unwrap() {
        assert!(r.princ_size <= r.con_size);
        assert_eq!(r.all_principal, r.princ_size == r.con_size);
        assert_eq!(r.max_valuation == 0, r.n == 1);
    }
}

#[test]
fn every_poset_up_to_seven_both_variants() {
    for p in enumerate_bounded_posets(7).unwrap() {
        for covers_only in [false, true] {
            let r = verify_theorem1_with(&p, BuildOptions { covers_only });
            assert!(r.is_ok(), "{:?}: {:?}", p, r.err());
        }
    }
}

#[test]
fn built_lattices_pass_full_validation() {
    for p in enumerate_bounded_posets(6).unwrap() {
        let c = build_k(&p, BuildOptions::default()).unwrap();
        c.k.check_laws().unwrap();
        for (x, &(a, b)) in c.boundary_map.iter().enumerate() {
            let interior = Some(x) != p.zero() && Some(x) != p.one();
            assert_eq!(a != b, interior);
        }
    }
}

#[test]
fn dot_of_built_lattice_highlights_boundary() {
    let c = build_k(&Poset::chain(4), BuildOptions::default()).unwrap();
    let boundary = c.boundary_elements();
    let dot = export_dot(c.k.order(), Some(&boundary));
    for x in 0..c.k.size() {
        let marked = dot.contains(&format!("n{x} [label=\"{}\", style=filled", c.k.label(x)));
        assert_eq!(marked, boundary.contains(&x), "{}", c.k.label(x));
    }
    assert_eq!(dot.matches(" -> ").count(), c.k.order().covers().len());
}

#[test]
fn n7_dot_has_its_covers() {
    let l = builtin("N7").unwrap();
    let dot = export_dot(l.order(), None);
    assert_eq!(dot.matches(" [label=").count(), 7);
    assert_eq!(dot.matches(" -> ").count(), 8);
}

fn shipped_files() -> Vec<PathBuf> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut out = Vec::new();
    for dir in ["lattices", "templates", "posets"] {
        for entry in fs::read_dir(root.join(dir)).unwrap() {
            out.push(entry.unwrap().path());
        }
    }
    out.sort();
    out
}

#[test]
fn shipped_files_round_trip() {
    let files = shipped_files();
    assert!(files.len() >= 8);
    for path in files {
        let doc = io::parse(&fs::read_to_string(&path).unwrap()).unwrap();
        let text = io::serialize(&doc);
        assert_eq!(io::parse(&text).unwrap(), doc, "{}", path.display());
        assert_eq!(io::serialize(&io::parse(&text).unwrap()), text);
        doc.to_poset().unwrap();
    }
    assert_eq!(shipped_templates().unwrap().len(), 4);
}

proptest! {
    #[test]
    fn congruence_operations_are_lattice_operations(pick in 0usize..53, a in 0usize..7, b in 0usize..7, c in 0usize..7, d in 0usize..7) {
        let l = &enumerate_lattices(7).unwrap()[pick];
        let x = principal_congruence(l, a, b);
        let y = principal_congruence(l, c, d);
        let j = x.join(&y);
        let m = x.meet(&y);
        prop_assert!(j.is_compatible(l));
        prop_assert!(m.is_compatible(l));
        prop_assert!(x.refines(&j) && y.refines(&j));
        prop_assert!(m.refines(&x) && m.refines(&y));
        // con(a,b) = con(a∧b, a∨b)
        prop_assert_eq!(principal_congruence(l, l.meet(a, b), l.join(a, b)), x);
    }
}
