use std::fmt;

use rayon::prelude::*;

use super::{build_k, BuildOptions, ConstructError, ConstructionResult};
use crate::congruence::{con_lattice, princ_order, principal_congruence};
use crate::poset::{canonical_form, enumerate_bounded_posets, CanonicalCode, OrderIso, Poset, PosetError};

/// The first clause of `P ≅ Princ K` that fails for the canonical witness
/// map `0 ↦ Δ`, `1 ↦ ∇`, `p ↦ con(a_p, b_p)`. Elements are those of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `p` and `q` are sent to the same congruence.
    Collision { p: usize, q: usize },
    /// `p ≤ q` but the images are not comparable that way.
    MissingComparability { p: usize, q: usize },
    /// `p ≰ q` but the image of `p` is below the image of `q`.
    SpuriousComparability { p: usize, q: usize },
    /// A principal congruence of `K` that no element of `P` reaches.
    ExtraPrincipal { congruence: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Collision { p, q } => write!(f, "elements {p} and {q} map to the same congruence"),
            Self::MissingComparability { p, q } => write!(f, "{p} <= {q} is not preserved"),
            Self::SpuriousComparability { p, q } => write!(f, "{p} <= {q} holds in Princ K but not in P"),
            Self::ExtraPrincipal { congruence } => write!(f, "extra principal congruence {congruence}"),
        }
    }
}

/// Sizes from a successful verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremSummary {
    pub poset_size: usize,
    pub k_size: usize,
    pub con_size: usize,
    pub princ_size: usize,
    pub gadgets: usize,
}

impl fmt::Display for TheoremSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P ≅ Princ K, |P| = {}, |K| = {}, |Con K| = {}, |Princ K| = {}, gadgets = {}",
            self.poset_size, self.k_size, self.con_size, self.princ_size, self.gadgets
        )?;
        if self.poset_size == 1 {
            f.write_str(" (singleton P: 0 = 1, K is the one-element lattice)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub summary: TheoremSummary,
    /// `construction.iso` is set: element `p` goes to `iso.forward[p]` of
    /// `princ_order(con_lattice(K))`.
    pub construction: ConstructionResult,
    /// The Con K index of each element's image.
    pub witness: Vec<usize>,
}

impl TheoremReport {
    pub fn iso(&self) -> &OrderIso {
        self.construction.iso.as_ref().expect("set on success")
    }
}

pub fn verify_theorem1(p: &Poset) -> Result<TheoremReport, ConstructError> {
    verify_theorem1_with(p, BuildOptions::default())
}

/// Builds `K` and checks that the canonical witness map is an order
/// isomorphism from `P` onto `Princ K`.
pub fn verify_theorem1_with(p: &Poset, opts: BuildOptions) -> Result<TheoremReport, ConstructError> {
    let mut construction = build_k(p, opts)?;
    let k = &construction.k;
    let cl = con_lattice(k);
    let (zero, one) = (p.zero().expect("bounded"), p.one().expect("bounded"));
    let n = p.size();
    let witness: Vec<usize> = (0..n)
        .map(|x| {
            if x == zero {
                cl.identity_index()
            } else if x == one {
                cl.total_index()
            } else {
                let (a, b) = construction.boundary_map[x];
                cl.index_of(&principal_congruence(k, a, b))
                    .expect("Con K holds every principal congruence")
            }
        })
        .collect();
    let fail = |v| Err(ConstructError::VerificationFailed(v));
    for x in 0..n {
        for y in x + 1..n {
            if witness[x] == witness[y] {
                return fail(Violation::Collision { p: x, q: y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) && !cl.leq(witness[x], witness[y]) {
                return fail(Violation::MissingComparability { p: x, q: y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !p.leq(x, y) && cl.leq(witness[x], witness[y]) {
                return fail(Violation::SpuriousComparability { p: x, q: y });
            }
        }
    }
    let principal = cl.principal_indices();
    if let Some(&extra) = principal.iter().find(|i| !witness.contains(i)) {
        return fail(Violation::ExtraPrincipal {
            congruence: cl.witness_label(extra),
        });
    }
    let forward: Vec<usize> = witness
        .iter()
        .map(|w| principal.iter().position(|i| i == w).expect("images are principal"))
        .collect();
    let mut backward = vec![0; n];
    for (x, &y) in forward.iter().enumerate() {
        backward[y] = x;
    }
    let iso = OrderIso { forward, backward };
    debug_assert!(iso.is_valid(p, &princ_order(&cl)));
    let summary = TheoremSummary {
        poset_size: n,
        k_size: k.size(),
        con_size: cl.len(),
        princ_size: principal.len(),
        gadgets: construction.gadgets.len(),
    };
    construction.iso = Some(iso);
    Ok(TheoremReport {
        summary,
        construction,
        witness,
    })
}

/// One line of an exhaustive run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveEntry {
    pub code: CanonicalCode,
    pub outcome: Result<TheoremSummary, ConstructError>,
}

/// Runs [`verify_theorem1_with`] on every bounded poset with at most `n`
/// elements, in canonical order. Work is spread over the current rayon pool.
pub fn verify_exhaustive(n: usize, opts: BuildOptions) -> Result<Vec<ExhaustiveEntry>, PosetError> {
    let posets = enumerate_bounded_posets(n)?;
    Ok(posets
        .par_iter()
        .map(|p| ExhaustiveEntry {
            code: canonical_form(p).0,
            outcome: verify_theorem1_with(p, opts).map(|r| r.summary),
        })
        .collect())
}

/// Deterministic text rendering: one line per poset and a closing tally.
pub fn render_exhaustive(entries: &[ExhaustiveEntry]) -> String {
    let mut out = String::new();
    let mut failed = 0;
    for (i, e) in entries.iter().enumerate() {
        let line = match &e.outcome {
            Ok(s) => format!(
                "{i:4} {} |K|={} |Con K|={} |Princ K|={} gadgets={} pass",
                e.code, s.k_size, s.con_size, s.princ_size, s.gadgets
            ),
            Err(err) => {
                failed += 1;
                format!("{i:4} {} FAIL {err}", e.code)
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&format!(
        "{} posets, {} passed, {} failed\n",
        entries.len(),
        entries.len() - failed,
        failed
    ));
    out
}
