//! Orderly generation of bounded posets and lattices up to isomorphism.
//!
//! Elements are added one position at a time in a natural labeling: the new
//! element's strict down-set must be an order ideal of the prefix. The
//! canonical code of a poset restricted to its first `k` positions is the
//! canonical code of that prefix (prefixes of linear extensions are down-sets),
//! so non-canonical prefixes are rejected as soon as they appear.

use rayon::prelude::*;

use super::{canonical_form, CanonicalCode, Poset, PosetError};

pub const DEFAULT_POSET_LIMIT: usize = 7;

/// Prefix depth at which the search is split into independent shards.
const SHARD_DEPTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Extension {
    BoundedPoset,
    Lattice,
}

/// One representative per isomorphism class of bounded posets with at most
/// `n` elements, ordered by size and then canonical code.
pub fn enumerate_bounded_posets(n: usize) -> Result<Vec<Poset>, PosetError> {
    enumerate_bounded_posets_with_limit(n, DEFAULT_POSET_LIMIT)
}

pub fn enumerate_bounded_posets_with_limit(n: usize, limit: usize) -> Result<Vec<Poset>, PosetError> {
    if n > limit {
        return Err(PosetError::LimitExceeded { requested: n, limit });
    }
    Ok((1..=n)
        .flat_map(|k| generate_orderly(k, Extension::BoundedPoset))
        .map(|code| code.to_poset())
        .collect())
}

/// Canonical codes of all classes of size exactly `n`, sorted.
pub(crate) fn generate_orderly(n: usize, kind: Extension) -> Vec<CanonicalCode> {
    match n {
        0 => return Vec::new(),
        1 => return vec![CanonicalCode::from_rows(1, vec![0])],
        _ => {}
    }
    let interior = n - 2;
    let root = Prefix { down: vec![0] };
    let mut shards = Vec::new();
    root.expand_until(interior.min(SHARD_DEPTH), kind, &mut shards);

    let mut codes: Vec<CanonicalCode> = shards
        .into_par_iter()
        .flat_map_iter(|prefix| {
            let mut done = Vec::new();
            prefix.expand_until(interior, kind, &mut done);
            done.into_iter().filter_map(move |p| p.close(kind))
        })
        .collect();
    codes.sort();
    codes
}

#[derive(Clone)]
struct Prefix {
    /// Strict down-set of each position as a bitmask over positions.
    down: Vec<u64>,
}

impl Prefix {
    fn len(&self) -> usize {
        self.down.len()
    }

    /// Depth-first extension until `target` interior elements are placed.
    fn expand_until(&self, target: usize, kind: Extension, out: &mut Vec<Prefix>) {
        if self.len() - 1 == target {
            out.push(self.clone());
            return;
        }
        let k = self.len();
        for rest in 0u64..(1 << (k - 1)) {
            let mask = (rest << 1) | 1;
            if !self.is_ideal(mask) {
                continue;
            }
            let mut next = self.clone();
            next.down.push(mask);
            if kind == Extension::Lattice && !next.has_meets_with_last() {
                continue;
            }
            if !next.is_canonical() {
                continue;
            }
            next.expand_until(target, kind, out);
        }
    }

    fn is_ideal(&self, mask: u64) -> bool {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .all(|i| self.down[i] & !mask == 0)
    }

    fn lower_closed(&self, x: usize) -> u64 {
        self.down[x] | (1 << x)
    }

    fn upper_closed(&self, x: usize) -> u64 {
        let mut up = 1u64 << x;
        for (y, d) in self.down.iter().enumerate() {
            if d >> x & 1 == 1 {
                up |= 1 << y;
            }
        }
        up
    }

    fn has_meets_with_last(&self) -> bool {
        let k = self.len() - 1;
        (0..k).all(|j| self.greatest_in(self.lower_closed(k) & self.lower_closed(j)))
    }

    fn greatest_in(&self, set: u64) -> bool {
        (0..self.len()).any(|m| set >> m & 1 == 1 && set & !self.lower_closed(m) == 0)
    }

    fn least_in(&self, set: u64) -> bool {
        (0..self.len()).any(|m| set >> m & 1 == 1 && set & !self.upper_closed(m) == 0)
    }

    fn rows(&self) -> Vec<u64> {
        (0..self.len())
            .map(|j| (0..j).fold(0u64, |acc, i| (acc << 1) | (self.down[j] >> i & 1)))
            .collect()
    }

    fn to_poset(&self) -> Poset {
        Poset::from_leq(self.len(), |i, j| i == j || self.down[j] >> i & 1 == 1)
    }

    fn is_canonical(&self) -> bool {
        let (code, _) = canonical_form(&self.to_poset());
        code.rows() == self.rows()
    }

    /// Adds the top element and applies the final class filter.
    fn close(mut self, kind: Extension) -> Option<CanonicalCode> {
        let all = (1u64 << self.len()) - 1;
        self.down.push(all);
        if kind == Extension::Lattice {
            let n = self.len();
            for x in 0..n {
                for y in (x + 1)..n {
                    if !self.least_in(self.upper_closed(x) & self.upper_closed(y)) {
                        return None;
                    }
                }
            }
        }
        let rows = self.rows();
        debug_assert!(self.is_canonical());
        Some(CanonicalCode::from_rows(rows.len(), rows))
    }
}
