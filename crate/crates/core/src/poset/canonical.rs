use std::fmt;

use super::Poset;

/// Canonical code of a finite poset.
///
/// Among all natural labelings (linear extensions), the code is the
/// lexicographically smallest strictly-upper-triangular order matrix, read
/// row by row where row `j` lists, for each earlier position `i < j`,
/// whether `i < j`. Two posets are isomorphic iff their codes are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    size: usize,
    /// `rows[j]` packs positions `0..j` with position 0 as the high bit.
    rows: Vec<u64>,
}

impl CanonicalCode {
    pub fn size(&self) -> usize {
        self.size
    }

    pub(crate) fn from_rows(size: usize, rows: Vec<u64>) -> Self {
        Self { size, rows }
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// `true` iff position `i` lies strictly below position `j`.
    pub fn below(&self, i: usize, j: usize) -> bool {
        i < j && (self.rows[j] >> (j - 1 - i)) & 1 == 1
    }

    /// Rebuilds the poset in canonical labeling.
    pub fn to_poset(&self) -> Poset {
        Poset::from_leq(self.size, |i, j| i == j || self.below(i, j))
    }

    /// Parses the textual form produced by `Display`.
    pub fn parse(text: &str) -> Option<Self> {
        let (size, body) = text.split_once(':')?;
        let size: usize = size.parse().ok()?;
        let mut rows = vec![0u64];
        if size > 1 {
            for (j, part) in body.split('.').enumerate() {
                let j = j + 1;
                if part.len() != j {
                    return None;
                }
                let mut r = 0u64;
                for ch in part.chars() {
                    r = (r << 1)
                        | match ch {
                            '0' => 0,
                            '1' => 1,
                            _ => return None,
                        };
                }
                rows.push(r);
            }
        } else if !body.is_empty() {
            return None;
        }
        if size == 0 {
            rows.clear();
        }
        (rows.len() == size).then_some(Self { size, rows })
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.size)?;
        for j in 1..self.size {
            if j > 1 {
                f.write_str(".")?;
            }
            for i in 0..j {
                f.write_str(if self.below(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Computes the canonical code of `p` and a labeling realizing it:
/// `labeling[pos]` is the element of `p` placed at position `pos`.
///
/// At each position only candidates producing the smallest row survive, so
/// the search branches only on ties.
pub fn canonical_form(p: &Poset) -> (CanonicalCode, Vec<usize>) {
    assert!(p.size() <= 64, "canonical codes support at most 64 elements");
    let mut search = Search {
        poset: p,
        best: None,
        placed: vec![false; p.size()],
        perm: Vec::with_capacity(p.size()),
        rows: Vec::with_capacity(p.size()),
    };
    search.run();
    let (rows, perm) = search.best.unwrap_or_default();
    (CanonicalCode::from_rows(p.size(), rows), perm)
}

struct Search<'a> {
    poset: &'a Poset,
    best: Option<(Vec<u64>, Vec<usize>)>,
    placed: Vec<bool>,
    perm: Vec<usize>,
    rows: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self) {
        let n = self.poset.size();
        let k = self.perm.len();
        if k == n {
            let better = match &self.best {
                None => true,
                Some((rows, _)) => self.rows < *rows,
            };
            if better {
                self.best = Some((self.rows.clone(), self.perm.clone()));
            }
            return;
        }
        let mut min_row = u64::MAX;
        let mut ties = Vec::new();
        for c in 0..n {
            if self.placed[c] {
                continue;
            }
            let ready = self.poset.down_set(c).iter().all(|d| d == c || self.placed[d]);
            if !ready {
                continue;
            }
            let row = self
                .perm
                .iter()
                .fold(0u64, |acc, &e| (acc << 1) | self.poset.leq(e, c) as u64);
            if row < min_row {
                min_row = row;
                ties.clear();
            }
            if row == min_row {
                ties.push(c);
            }
        }
        if let Some((best_rows, _)) = &self.best {
            // prefixes are equal or smaller here; a larger row cannot win
            if self.rows[..] == best_rows[..k] && min_row > best_rows[k] {
                return;
            }
        }
        for c in ties {
            self.placed[c] = true;
            self.perm.push(c);
            self.rows.push(min_row);
            self.run();
            self.rows.pop();
            self.perm.pop();
            self.placed[c] = false;
        }
    }
}
