use std::collections::HashMap;

use thiserror::Error;

use super::{principal_congruence, Congruence};
use crate::bitset::BitSet;
use crate::lattice::Lattice;
use crate::poset::Poset;

/// `Con L` with principal flags, witnesses and the valuation.
///
/// Congruences are sorted by decreasing block count, then by block ids, so
/// Δ is always first and ∇ last.
#[derive(Debug, Clone)]
pub struct ConLattice {
    congruences: Vec<Congruence>,
    leq: Vec<BitSet>,
    principal: Vec<bool>,
    witness: Vec<Option<(usize, usize)>>,
    valuation: Vec<usize>,
    index: HashMap<Congruence, usize>,
    element_labels: Vec<String>,
}

/// Builds `Con L` as the join-closure of the principal congruences.
///
/// The closure runs breadth-first, joining each newly found congruence with
/// every principal one, so the layer in which a congruence first appears is
/// the least number of principal congruences whose join it is.
pub fn con_lattice(l: &Lattice) -> ConLattice {
    let n = l.size();
    let mut principal: Vec<(Congruence, (usize, usize))> = vec![(Congruence::identity(n), (l.zero(), l.zero()))];
    let mut seen: HashMap<Congruence, usize> = HashMap::new();
    seen.insert(Congruence::identity(n), 0);
    for a in 0..n {
        for b in 0..n {
            if !l.order().lt(a, b) {
                continue;
            }
            let c = principal_congruence(l, a, b);
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), principal.len());
                principal.push((c, (a, b)));
            }
        }
    }

    // (congruence, valuation, principal witness)
    type Entry = (Congruence, usize, Option<(usize, usize)>);
    let mut found: Vec<Entry> = principal
        .iter()
        .map(|(c, w)| (c.clone(), usize::from(!c.is_identity()), Some(*w)))
        .collect();
    let mut frontier: Vec<usize> = (1..found.len()).collect();
    let mut depth = 1;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &i in &frontier {
            for (p, _) in &principal[1..] {
                let joined = found[i].0.join(p);
                if seen.contains_key(&joined) {
                    continue;
                }
                assert!(
                    joined.is_compatible(l),
                    "join of congruences must be compatible: {joined:?}"
                );
                seen.insert(joined.clone(), found.len());
                next.push(found.len());
                found.push((joined, depth, None));
            }
        }
        frontier = next;
    }

    found.sort_by(|a, b| b.0.block_count().cmp(&a.0.block_count()).then_with(|| a.0.cmp(&b.0)));
    let congruences: Vec<Congruence> = found.iter().map(|f| f.0.clone()).collect();
    let m = congruences.len();
    let leq = (0..m)
        .map(|i| {
            let mut row = BitSet::new(m);
            for j in 0..m {
                if congruences[i].refines(&congruences[j]) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let index = congruences.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    ConLattice {
        leq,
        principal: found.iter().map(|f| f.2.is_some()).collect(),
        witness: found.iter().map(|f| f.2).collect(),
        valuation: found.iter().map(|f| f.1).collect(),
        index,
        congruences,
        element_labels: (0..n).map(|x| l.label(x)).collect(),
    }
}

/// The valuation `v(α)`: least number of principal congruences joining to α.
pub fn valuation(cl: &ConLattice) -> &[usize] {
    &cl.valuation
}

/// `Princ L` as a subposet of `Con L`, labeled by witnesses `con(a,b)`.
/// Element `k` corresponds to `cl.principal_indices()[k]`.
pub fn princ_order(cl: &ConLattice) -> Poset {
    let idx = cl.principal_indices();
    let labels = idx.iter().map(|&i| cl.witness_label(i)).collect();
    Poset::from_leq(idx.len(), |a, b| cl.leq(idx[a], idx[b]))
        .with_labels(labels)
        .expect("one label per principal congruence")
}

impl ConLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    pub fn index_of(&self, c: &Congruence) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// Refinement: `congruences[i] ⊆ congruences[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i].contains(j)
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn total_index(&self) -> usize {
        self.len() - 1
    }

    pub fn is_principal(&self, i: usize) -> bool {
        self.principal[i]
    }

    pub fn witness(&self, i: usize) -> Option<(usize, usize)> {
        self.witness[i]
    }

    pub fn valuation(&self, i: usize) -> usize {
        self.valuation[i]
    }

    pub fn max_valuation(&self) -> usize {
        self.valuation.iter().copied().max().unwrap_or(0)
    }

    pub fn principal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.principal[i]).collect()
    }

    pub fn principal_count(&self) -> usize {
        self.principal.iter().filter(|&&p| p).count()
    }

    /// Index of the join, if it is a member (it always is for a complete
    /// closure).
    pub fn join_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.congruences[i].join(&self.congruences[j]))
    }

    pub fn meet_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.congruences[i].meet(&self.congruences[j]))
    }

    /// `con(a,b)` with element labels, `Δ` for the diagonal, or the block
    /// list for a non-principal congruence.
    pub fn witness_label(&self, i: usize) -> String {
        match self.witness[i] {
            _ if self.congruences[i].is_identity() => "Δ".to_string(),
            Some((a, b)) => format!("con({},{})", self.element_labels[a], self.element_labels[b]),
            None => self.congruences[i].to_string(),
        }
    }

    /// `Con L` under refinement.
    pub fn as_poset(&self) -> Poset {
        let labels = (0..self.len()).map(|i| self.witness_label(i)).collect();
        Poset::from_leq(self.len(), |i, j| self.leq(i, j))
            .with_labels(labels)
            .expect("one label per congruence")
    }

    /// Join-irreducible congruences: exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let p = Poset::from_leq(self.len(), |i, j| self.leq(i, j));
        (0..self.len()).filter(|&i| p.lower_covers(i).count() == 1).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("axiom ({axiom}) violated: {detail}")]
pub struct AxiomViolation {
    pub axiom: u8,
    pub detail: String,
}

/// Outcome of the order-theoretic checks on `Princ L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincAxiomReport {
    pub con_size: usize,
    pub princ_size: usize,
    /// Every pair of principal congruences was checked for a principal
    /// upper bound. Finite lattices are bounded, so ∇ is always available.
    pub directed_within_princ: bool,
}

/// Checks (1) Δ ∈ Princ L, (2) Princ L is up-directed within itself,
/// (3) every congruence is the join of the principal congruences below it,
/// (4) ∇ ∈ Princ L.
pub fn check_princ_axioms(l: &Lattice) -> Result<PrincAxiomReport, AxiomViolation> {
    let cl = con_lattice(l);
    let principal = cl.principal_indices();
    if !cl.is_principal(cl.identity_index()) {
        return Err(AxiomViolation {
            axiom: 1,
            detail: "Δ is not principal".into(),
        });
    }
    for (k, &a) in principal.iter().enumerate() {
        for &b in &principal[k..] {
            let bounded = principal.iter().any(|&c| cl.leq(a, c) && cl.leq(b, c));
            if !bounded {
                return Err(AxiomViolation {
                    axiom: 2,
                    detail: format!(
                        "{} and {} have no principal upper bound",
                        cl.witness_label(a),
                        cl.witness_label(b)
                    ),
                });
            }
        }
    }
    let n = l.size();
    for i in 0..cl.len() {
        let below = principal
            .iter()
            .filter(|&&p| cl.leq(p, i))
            .fold(Congruence::identity(n), |acc, &p| acc.join(cl.get(p)));
        if &below != cl.get(i) {
            return Err(AxiomViolation {
                axiom: 3,
                detail: format!("{} is not a join of principal congruences", cl.get(i)),
            });
        }
    }
    if !cl.is_principal(cl.total_index()) || !cl.get(cl.total_index()).is_total() {
        return Err(AxiomViolation {
            axiom: 4,
            detail: "∇ is not principal".into(),
        });
    }
    Ok(PrincAxiomReport {
        con_size: cl.len(),
        princ_size: principal.len(),
        directed_within_princ: true,
    })
}
