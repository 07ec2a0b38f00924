//! Finite ordered sets.
//!
//! Elements are the dense indices `0..size`. A [`Poset`] stores both the
//! cover relation (its Hasse diagram) and the full reflexive order as bit
//! matrices of up-sets and down-sets; the two are always consistent.

mod canonical;
mod enumerate;
mod iso;

pub use canonical::{canonical_form, CanonicalCode};
pub use enumerate::{enumerate_bounded_posets, enumerate_bounded_posets_with_limit, DEFAULT_POSET_LIMIT};
pub(crate) use enumerate::{generate_orderly, Extension};
pub use iso::{order_isomorphism, OrderIso};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover relation has a cycle through {}", fmt_cycle(.cycle))]
    CycleDetected { cycle: Vec<usize> },
    #[error("element index {index} is out of range for {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("order is not bounded")]
    NotBounded,
    #[error("size {requested} exceeds the enumeration limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
    if let Some(first) = cycle.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}

/// A finite partially ordered set on `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    covers: Vec<(usize, usize)>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    labels: Option<Vec<String>>,
}

/// Boundedness and directedness flags of an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosetProperties {
    pub bounded: bool,
    pub has_zero: bool,
    pub has_unit: bool,
    pub up_directed: bool,
}

/// The interior of a bounded order: the bounds removed (`pminus`), and the
/// interior elements comparable to no other interior element (`pd`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interior {
    pub pminus: Vec<usize>,
    pub pd: Vec<usize>,
}

/// Builds a poset from a list of `x < y` pairs.
///
/// The pairs may contain transitively implied relations; they are dropped
/// from the stored cover relation.
pub fn build_poset(size: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
    Poset::new(size, pairs)
}

impl Poset {
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); size];
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= size {
                    return Err(PosetError::IndexOutOfRange { index, size });
                }
            }
            if x == y {
                return Err(PosetError::CycleDetected { cycle: vec![x] });
            }
            succ[x].insert(y);
        }
        let order = topological_order(size, &succ)?;

        let mut up: Vec<BitSet> = (0..size).map(|_| BitSet::new(size)).collect();
        for &x in order.iter().rev() {
            let mut row = BitSet::new(size);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Ok(Self::from_up_sets(up))
    }

    /// Builds a poset directly from reflexive, transitive, antisymmetric up-sets.
    pub(crate) fn from_up_sets(up: Vec<BitSet>) -> Self {
        let size = up.len();
        let mut down: Vec<BitSet> = (0..size).map(|_| BitSet::new(size)).collect();
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                if y == x {
                    continue;
                }
                // y covers x iff nothing strictly between
                let between = row.intersection(&down[y]).len();
                if between == 2 {
                    covers.push((x, y));
                }
            }
        }
        covers.sort_unstable();
        Self {
            size,
            covers,
            up,
            down,
            labels: None,
        }
    }

    /// Builds a poset from a full `leq` predicate. The caller guarantees it is
    /// a partial order.
    pub(crate) fn from_leq(size: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let up = (0..size)
            .map(|x| {
                let mut row = BitSet::new(size);
                for y in 0..size {
                    if leq(x, y) {
                        row.insert(y);
                    }
                }
                row
            })
            .collect();
        Self::from_up_sets(up)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, PosetError> {
        if labels.len() != self.size {
            return Err(PosetError::LabelCount {
                expected: self.size,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(n, &[]).expect("no pairs")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn covered_by(&self, x: usize, y: usize) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `x`, or its index when the poset is unlabeled.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == x).map(|c| c.1)
    }

    pub fn lower_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == x).map(|c| c.0)
    }

    /// Count of true entries of the reflexive order matrix.
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(BitSet::len).sum()
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.up[x].len() == self.size)
    }

    pub fn one(&self) -> Option<usize> {
        (0..self.size).find(|&x| self.down[x].len() == self.size)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.down[x].len() == 1).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.up[x].len() == 1).collect()
    }

    /// Length of the longest chain from a minimal element up to `x`.
    pub fn height(&self, x: usize) -> usize {
        let mut memo = vec![None; self.size];
        self.height_memo(x, &mut memo)
    }

    pub fn heights(&self) -> Vec<usize> {
        let mut memo = vec![None; self.size];
        (0..self.size).map(|x| self.height_memo(x, &mut memo)).collect()
    }

    fn height_memo(&self, x: usize, memo: &mut [Option<usize>]) -> usize {
        if let Some(h) = memo[x] {
            return h;
        }
        let lower: Vec<usize> = self.lower_covers(x).collect();
        let h = lower
            .into_iter()
            .map(|y| self.height_memo(y, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[x] = Some(h);
        h
    }

    pub fn properties(&self) -> PosetProperties {
        let has_zero = self.zero().is_some();
        let has_unit = self.one().is_some();
        let up_directed =
            (0..self.size).all(|x| (x..self.size).all(|y| !self.up[x].intersection(&self.up[y]).is_empty()));
        PosetProperties {
            bounded: has_zero && has_unit,
            has_zero,
            has_unit,
            up_directed,
        }
    }

    /// `P^-` and `P^d`. The singleton counts as bounded with `0 = 1`.
    pub fn interior(&self) -> Result<Interior, PosetError> {
        let (zero, one) = match (self.zero(), self.one()) {
            (Some(z), Some(o)) => (z, o),
            _ => return Err(PosetError::NotBounded),
        };
        let pminus: Vec<usize> = (0..self.size).filter(|&x| x != zero && x != one).collect();
        let pd = pminus
            .iter()
            .copied()
            .filter(|&x| pminus.iter().all(|&y| y == x || !self.comparable(x, y)))
            .collect();
        Ok(Interior { pminus, pd })
    }

    /// The subposet induced on `elements`, re-indexed in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let p = Poset::from_leq(elements.len(), |i, j| self.leq(elements[i], elements[j]));
        match &self.labels {
            Some(l) => {
                let labels = elements.iter().map(|&x| l[x].clone()).collect();
                p.with_labels(labels).expect("label count matches")
            }
            None => p,
        }
    }

    /// The same order with element `x` renamed to `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Poset {
        let mut inv = vec![0; self.size];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        let p = Poset::from_leq(self.size, |a, b| self.leq(inv[a], inv[b]));
        match &self.labels {
            Some(l) => p
                .with_labels(inv.iter().map(|&x| l[x].clone()).collect())
                .expect("label count matches"),
            None => p,
        }
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("size", &self.size)
            .field("covers", &self.covers)
            .finish()
    }
}

/// Kahn's algorithm; on failure, walks predecessors inside the residue to
/// extract a witness cycle.
fn topological_order(size: usize, succ: &[BTreeSet<usize>]) -> Result<Vec<usize>, PosetError> {
    let mut indeg = vec![0usize; size];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..size).rev().filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(size);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in succ[x].iter().rev() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if order.len() == size {
        return Ok(order);
    }

    let residue: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let mut pred: Vec<Option<usize>> = vec![None; size];
    for (x, s) in succ.iter().enumerate() {
        if residue[x] {
            for &y in s {
                if residue[y] && pred[y].is_none() {
                    pred[y] = Some(x);
                }
            }
        }
    }
    let start = residue.iter().position(|&r| r).expect("residue is nonempty");
    let mut seen = vec![usize::MAX; size];
    let mut path = Vec::new();
    let mut cur = start;
    while seen[cur] == usize::MAX {
        seen[cur] = path.len();
        path.push(cur);
        cur = pred[cur].expect("every residual node has a residual predecessor");
    }
    let mut cycle = path[seen[cur]..].to_vec();
    cycle.reverse();
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(min_pos);
    Err(PosetError::CycleDetected { cycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure by repeated boolean matrix squaring, independent of `Poset::new`.
    fn closure_by_powering(size: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut m = vec![vec![false; size]; size];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in pairs {
            m[x][y] = true;
        }
        loop {
            let mut next = m.clone();
            for i in 0..size {
                for j in 0..size {
                    next[i][j] = (0..size).any(|k| m[i][k] && m[k][j]);
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }

    fn reduction_of(m: &[Vec<bool>]) -> Vec<(usize, usize)> {
        let n = m.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && m[x][y] && !(0..n).any(|z| z != x && z != y && m[x][z] && m[z][y]) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn chain_closure() {
        let p = build_poset(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.relation_size(), 6);
        assert!(p.leq(0, 2));
    }

    #[test]
    fn antichain_is_diagonal() {
        let p = build_poset(2, &[]).unwrap();
        assert_eq!(p.relation_size(), 2);
        assert!(!p.leq(0, 1) && !p.leq(1, 0));
    }

    #[test]
    fn redundant_cover_removed() {
        let pairs = [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)];
        let p = build_poset(4, &pairs).unwrap();
        let oracle = closure_by_powering(4, &pairs);
        assert_eq!(p.covers(), reduction_of(&oracle).as_slice());
        assert_eq!(p.covers().len(), 4);
        for (x, row) in oracle.iter().enumerate() {
            for (y, &le) in row.iter().enumerate() {
                assert_eq!(p.leq(x, y), le);
            }
        }
    }

    #[test]
    fn cycle_has_witness() {
        let err = build_poset(4, &[(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap_err();
        assert_eq!(err, PosetError::CycleDetected { cycle: vec![1, 2, 3] });
        let err = build_poset(3, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, PosetError::CycleDetected { cycle: vec![0, 1] });
        let err = build_poset(2, &[(1, 1)]).unwrap_err();
        assert_eq!(err, PosetError::CycleDetected { cycle: vec![1] });
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            build_poset(2, &[(0, 2)]).unwrap_err(),
            PosetError::IndexOutOfRange { index: 2, size: 2 }
        );
    }

    #[test]
    fn properties_examples() {
        let all = PosetProperties {
            bounded: true,
            has_zero: true,
            has_unit: true,
            up_directed: true,
        };
        assert_eq!(Poset::chain(3).properties(), all);
        let none = PosetProperties {
            bounded: false,
            has_zero: false,
            has_unit: false,
            up_directed: false,
        };
        assert_eq!(Poset::antichain(2).properties(), none);
        let v = build_poset(3, &[(0, 1), (0, 2)]).unwrap();
        let props = v.properties();
        assert!(props.has_zero && !props.bounded && !props.up_directed);
    }

    #[test]
    fn interior_examples() {
        let i = Poset::chain(2).interior().unwrap();
        assert!(i.pminus.is_empty() && i.pd.is_empty());

        let i = Poset::chain(3).interior().unwrap();
        assert_eq!(i.pminus, vec![1]);
        assert_eq!(i.pd, vec![1]);

        // 0, p=1, q=2, r=3, 1=4 with p < q only
        let p = build_poset(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let i = p.interior().unwrap();
        assert_eq!(i.pminus, vec![1, 2, 3]);
        assert_eq!(i.pd, vec![3]);

        let i = Poset::chain(1).interior().unwrap();
        assert!(i.pminus.is_empty());

        assert_eq!(Poset::antichain(2).interior().unwrap_err(), PosetError::NotBounded);
    }

    #[test]
    fn heights_follow_longest_chain() {
        let p = build_poset(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert_eq!(p.heights(), vec![0, 1, 2, 1, 3]);
    }

    #[test]
    fn relabel_and_induce() {
        let p = build_poset(3, &[(0, 1), (0, 2)]).unwrap();
        let q = p.relabeled(&[2, 0, 1]);
        assert!(q.leq(2, 0) && q.leq(2, 1) && !q.comparable(0, 1));
        let sub = p.induced(&[1, 0]);
        assert!(sub.leq(1, 0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dag_pairs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
            (1usize..=7).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
                let len = pairs.len();
                (Just(n), proptest::collection::vec(any::<bool>(), len)).prop_map(move |(n, mask)| {
                    let chosen = pairs
                        .iter()
                        .zip(mask)
                        .filter(|(_, keep)| *keep)
                        .map(|(p, _)| *p)
                        .collect();
                    (n, chosen)
                })
            })
        }

        proptest! {
            #[test]
            fn closure_matches_matrix_powering((n, pairs) in dag_pairs()) {
                let p = build_poset(n, &pairs).unwrap();
                let oracle = closure_by_powering(n, &pairs);
                for (x, row) in oracle.iter().enumerate() {
                    for (y, &le) in row.iter().enumerate() {
                        prop_assert_eq!(p.leq(x, y), le);
                    }
                }
                let reduced = reduction_of(&oracle);
                prop_assert_eq!(p.covers(), reduced.as_slice());
                for x in 0..n {
                    for y in 0..n {
                        if x != y {
                            prop_assert!(!(p.leq(x, y) && p.leq(y, x)));
                        }
                    }
                }
            }
        }
    }
}
