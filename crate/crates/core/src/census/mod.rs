//! Small-lattice census: every lattice up to isomorphism with its
//! congruence data, plus the Problem 4 and Problem 5 probes.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::congruence::con_lattice;
use crate::lattice::{builtin, Lattice, LatticePredicates};
use crate::poset::{canonical_form, generate_orderly, order_isomorphism, CanonicalCode, Extension, Poset, PosetError};

pub const DEFAULT_LATTICE_LIMIT: usize = 8;

/// Lattices with exactly `n` elements, one per isomorphism class, in
/// canonical order.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>, PosetError> {
    enumerate_lattices_with_limit(n, DEFAULT_LATTICE_LIMIT)
}

pub fn enumerate_lattices_with_limit(n: usize, limit: usize) -> Result<Vec<Lattice>, PosetError> {
    Ok(lattice_codes(n, limit)?.iter().map(code_to_lattice).collect())
}

fn lattice_codes(n: usize, limit: usize) -> Result<Vec<CanonicalCode>, PosetError> {
    if n > limit {
        return Err(PosetError::LimitExceeded { requested: n, limit });
    }
    Ok(generate_orderly(n, Extension::Lattice))
}

fn code_to_lattice(code: &CanonicalCode) -> Lattice {
    Lattice::from_poset(code.to_poset()).expect("generated codes are lattices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    /// Canonical code of the lattice; `covers` is read from it.
    pub code: CanonicalCode,
    pub covers: Vec<(usize, usize)>,
    pub n: usize,
    pub con_size: usize,
    pub princ_size: usize,
    /// Canonical code of the join-irreducibles of `Con L`. `Con L` is
    /// distributive, so it is the down-set lattice of this order.
    pub con_shape: CanonicalCode,
    pub max_valuation: usize,
    pub all_principal: bool,
    pub predicates: LatticePredicates,
}

impl CensusRecord {
    pub fn of(code: CanonicalCode) -> Self {
        let l = code_to_lattice(&code);
        let cl = con_lattice(&l);
        let ji = cl.join_irreducibles();
        let shape = Poset::from_leq(ji.len(), |a, b| cl.leq(ji[a], ji[b]));
        Self {
            covers: l.order().covers().to_vec(),
            n: l.size(),
            con_size: cl.len(),
            princ_size: cl.principal_count(),
            con_shape: canonical_form(&shape).0,
            max_valuation: cl.max_valuation(),
            all_principal: cl.principal_count() == cl.len(),
            predicates: l.predicates(),
            code,
        }
    }
}

impl fmt::Display for CensusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self.covers.iter().map(|(x, y)| format!("{x}<{y}")).collect();
        let p = &self.predicates;
        write!(
            f,
            "n={} lattice={} covers={} con={} princ={} shape={} maxv={} all_principal={} distributive={} modular={} semimodular={}",
            self.n,
            self.code,
            covers.join(","),
            self.con_size,
            self.princ_size,
            self.con_shape,
            self.max_valuation,
            self.all_principal,
            p.distributive,
            p.modular,
            p.semimodular
        )
    }
}

/// The lattice of down-sets of `shape`, ordered by inclusion.
pub fn decode_con_shape(shape: &CanonicalCode) -> Poset {
    let j = shape.to_poset();
    let n = j.size();
    let downsets: Vec<BitSet> = (0u64..1 << n)
        .map(|mask| {
            let mut s = BitSet::new(n);
            (0..n).filter(|&x| mask >> x & 1 == 1).for_each(|x| s.insert(x));
            s
        })
        .filter(|s| s.iter().all(|x| j.down_set(x).is_subset(s)))
        .collect();
    Poset::from_leq(downsets.len(), |a, b| downsets[a].is_subset(&downsets[b]))
}

/// Records for every lattice with `n_min..=n_max` elements, ordered by size
/// then canonical code. Work is spread over the current rayon pool; the
/// order does not depend on it.
pub fn run_census_range(n_min: usize, n_max: usize) -> Result<Vec<CensusRecord>, PosetError> {
    let mut codes = Vec::new();
    for n in n_min.max(1)..=n_max {
        codes.extend(lattice_codes(n, DEFAULT_LATTICE_LIMIT)?);
    }
    Ok(codes.into_par_iter().map(CensusRecord::of).collect())
}

pub fn run_census(n_max: usize) -> Result<Vec<CensusRecord>, PosetError> {
    run_census_range(1, n_max)
}

pub fn render_census(records: &[CensusRecord]) -> String {
    records.iter().map(|r| format!("{r}\n")).collect()
}

/// Census lattices with `Con L ≅ B3` and their `|Princ L|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem4Findings {
    pub n_max: usize,
    pub matches: Vec<(CanonicalCode, usize)>,
    /// `|Princ L|` value and how many lattices realize it.
    pub princ_sizes: BTreeMap<usize, usize>,
    /// The first match with `|Princ L|` outside `{7, 8}`.
    pub counterexample: Option<CanonicalCode>,
}

impl Problem4Findings {
    pub fn consistent(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Problem4Findings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lattices with Con L ≅ B3 and at most {} elements: {}",
            self.n_max,
            self.matches.len()
        )?;
        for (code, princ) in &self.matches {
            writeln!(f, "  {code} |Princ L| = {princ}")?;
        }
        let sizes: Vec<String> = self.princ_sizes.iter().map(|(s, c)| format!("{s} (x{c})")).collect();
        writeln!(f, "observed |Princ L|: {}", sizes.join(", "))?;
        match &self.counterexample {
            None => writeln!(f, "consistent with |Princ L| ∈ {{7, 8}}")?,
            Some(code) => writeln!(f, "counterexample: {code}")?,
        }
        writeln!(
            f,
            "scope: only lattices with n <= {} elements were examined; larger lattices are not covered",
            self.n_max
        )
    }
}

pub fn probe_problem4(records: &[CensusRecord], n_max: usize) -> Problem4Findings {
    let b3 = builtin("B3").expect("builtin").order().clone();
    let mut findings = Problem4Findings {
        n_max,
        matches: Vec::new(),
        princ_sizes: BTreeMap::new(),
        counterexample: None,
    };
    for r in records.iter().filter(|r| r.n <= n_max && r.con_size == 8) {
        if order_isomorphism(&decode_con_shape(&r.con_shape), &b3).is_none() {
            continue;
        }
        findings.matches.push((r.code.clone(), r.princ_size));
        *findings.princ_sizes.entry(r.princ_size).or_default() += 1;
        if !matches!(r.princ_size, 7 | 8) && findings.counterexample.is_none() {
            findings.counterexample = Some(r.code.clone());
        }
    }
    findings
}

/// For each `Con` shape: how many census lattices realize it, and the
/// first one (in census order) with every congruence principal, if any.
pub fn problem5_witnesses(records: &[CensusRecord]) -> BTreeMap<CanonicalCode, (usize, Option<CanonicalCode>)> {
    let mut out: BTreeMap<CanonicalCode, (usize, Option<CanonicalCode>)> = BTreeMap::new();
    for r in records {
        let entry = out.entry(r.con_shape.clone()).or_default();
        entry.0 += 1;
        if r.all_principal && entry.1.is_none() {
            entry.1 = Some(r.code.clone());
        }
    }
    out
}
