//! Congruences of finite lattices: principal congruences, the congruence
//! lattice, the order of principal congruences, and the valuation.

mod con_lattice;

pub use con_lattice::{check_princ_axioms, con_lattice, princ_order, valuation, ConLattice, PrincAxiomReport};

use std::fmt;

use crate::lattice::Lattice;

/// A partition of `0..n` stored as canonical block ids: blocks are numbered
/// by their least member, ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<usize>,
}

impl Congruence {
    /// Δ, the diagonal.
    pub fn identity(n: usize) -> Self {
        Self {
            blocks: (0..n).collect(),
        }
    }

    /// ∇, the single block.
    pub fn total(n: usize) -> Self {
        Self { blocks: vec![0; n] }
    }

    /// Canonicalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let blocks = labels
            .iter()
            .map(|&l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
            .collect();
        Self { blocks }
    }

    fn from_union_find(uf: &mut UnionFind) -> Self {
        let labels: Vec<usize> = (0..uf.len()).map(|x| uf.find(x)).collect();
        Self::from_labels(&labels)
    }

    pub fn lattice_size(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.blocks
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.blocks.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            let target = other.blocks[x];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return false;
            }
        }
        true
    }

    /// Transitive closure of the union of the two relations.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.blocks.len();
        let mut uf = UnionFind::new(n);
        let mut first_of = vec![usize::MAX; n];
        for rel in [self, other] {
            first_of.iter_mut().for_each(|f| *f = usize::MAX);
            for x in 0..n {
                let b = rel.blocks[x];
                if first_of[b] == usize::MAX {
                    first_of[b] = x;
                } else {
                    uf.union(first_of[b], x);
                }
            }
        }
        Congruence::from_union_find(&mut uf)
    }

    /// Common refinement.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.blocks.len();
        let labels: Vec<usize> = (0..n).map(|x| self.blocks[x] * n + other.blocks[x]).collect();
        Congruence::from_labels(&labels)
    }

    /// Whether this partition is compatible with the lattice operations.
    pub fn is_compatible(&self, l: &Lattice) -> bool {
        self.compatibility_witness(l).is_none()
    }

    /// A triple `(x, y, z)` with `x ≡ y` but `x∨z ≢ y∨z` or `x∧z ≢ y∧z`.
    pub fn compatibility_witness(&self, l: &Lattice) -> Option<(usize, usize, usize)> {
        let n = l.size();
        let mut rep = vec![usize::MAX; self.block_count()];
        for x in 0..n {
            let b = self.blocks[x];
            if rep[b] == usize::MAX {
                rep[b] = x;
                continue;
            }
            let r = rep[b];
            for z in 0..n {
                if !self.related(l.join(r, z), l.join(x, z)) || !self.related(l.meet(r, z), l.meet(x, z)) {
                    return Some((r, x, z));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.blocks())
    }
}

impl fmt::Display for Congruence {
    /// Nontrivial blocks only, e.g. `{0,1}{3,4}`; Δ prints as `Δ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("Δ");
        }
        for block in self.blocks().into_iter().filter(|b| b.len() > 1) {
            let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when two distinct classes were merged.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// `con(a, b)`: the smallest congruence collapsing `a` and `b`.
///
/// Every merge performed by the union-find is recorded as a pair; each
/// recorded pair is translated by `∨ z` and `∧ z` for all `z`, and the
/// translates are merged in turn. Recorded pairs form a spanning forest of
/// each class, so at the fixpoint every related pair is compatible.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Congruence {
    let n = l.size();
    let mut uf = UnionFind::new(n);
    let mut pending = Vec::new();
    if uf.union(a, b) {
        pending.push((a, b));
    }
    while let Some((x, y)) = pending.pop() {
        for z in 0..n {
            for (u, v) in [(l.join(x, z), l.join(y, z)), (l.meet(x, z), l.meet(y, z))] {
                if uf.union(u, v) {
                    pending.push((u, v));
                }
            }
        }
    }
    Congruence::from_union_find(&mut uf)
}
