//! Slow, direct reference computations used to check `princ-core`.
//!
//! Nothing here depends on the engine. Orders are plain `leq` matrices and
//! lattices are plain join/meet tables, so a bug in the engine's bitsets,
//! canonical codes or union-find cannot hide itself.

/// `leq[x][y]` is true when `x <= y`.
pub type Order = Vec<Vec<bool>>;

/// Join and meet tables of a lattice on `0..n`.
#[derive(Clone, Debug)]
pub struct Tables {
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
}

impl Tables {
    pub fn size(&self) -> usize {
        self.join.len()
    }

    /// Tables read off an order, or `None` if some pair lacks a join or meet.
    pub fn from_order(leq: &Order) -> Option<Tables> {
        let n = leq.len();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&u| leq[x][u] && leq[y][u]).collect();
                let lb: Vec<usize> = (0..n).filter(|&u| leq[u][x] && leq[u][y]).collect();
                join[x][y] = *ub.iter().find(|&&u| ub.iter().all(|&v| leq[u][v]))?;
                meet[x][y] = *lb.iter().find(|&&u| lb.iter().all(|&v| leq[v][u]))?;
            }
        }
        Some(Tables { join, meet })
    }
}

/// Isomorphism classes of orders on `n` elements with a least and a greatest
/// element. Every candidate puts the bottom at 0 and the top at `n - 1` and
/// chooses any strictly upper-triangular relation between the interior
/// elements; the transitive ones are kept and grouped by brute-force
/// isomorphism.
pub fn bounded_orders(n: usize, lattices_only: bool) -> Vec<Order> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![vec![vec![true]]];
    }
    let free: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut classes: Vec<Order> = Vec::new();
    for mask in 0u64..1 << free.len() {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
            row[n - 1] = true;
        }
        leq[0] = vec![true; n];
        for (k, &(i, j)) in free.iter().enumerate() {
            leq[i][j] = mask >> k & 1 == 1;
        }
        let transitive = (0..n).all(|i| (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k])));
        if !transitive || (lattices_only && Tables::from_order(&leq).is_none()) {
            continue;
        }
        if !classes.iter().any(|c| isomorphic(c, &leq)) {
            classes.push(leq);
        }
    }
    classes
}

/// Tries every bijection, pruning on partial assignments.
pub fn isomorphic(a: &Order, b: &Order) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let profile = |o: &Order| {
        let mut p: Vec<(usize, usize)> = (0..n)
            .map(|x| ((0..n).filter(|&y| o[y][x]).count(), (0..n).filter(|&y| o[x][y]).count()))
            .collect();
        p.sort_unstable();
        p
    };
    if profile(a) != profile(b) {
        return false;
    }
    fn extend(a: &Order, b: &Order, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = map.len();
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || (0..x).any(|w| a[w][x] != b[map[w]][y] || a[x][w] != b[y][map[w]]) {
                continue;
            }
            used[y] = true;
            map.push(y);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[y] = false;
        }
        false
    }
    extend(a, b, &mut Vec::with_capacity(n), &mut vec![false; n])
}

/// Every partition of `0..n` as a restricted growth string.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let next = p.iter().max().map_or(0, |m| m + 1);
                (0..=next).map(move |b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out
}

/// Whether the partition with block labels `blocks` is a congruence.
pub fn compatible(t: &Tables, blocks: &[usize]) -> bool {
    let n = t.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            blocks[x] != blocks[y]
                || (0..n).all(|z| {
                    blocks[t.join[x][z]] == blocks[t.join[y][z]] && blocks[t.meet[x][z]] == blocks[t.meet[y][z]]
                })
        })
    })
}

/// All congruences, each as a restricted growth string, in enumeration order.
pub fn congruences(t: &Tables) -> Vec<Vec<usize>> {
    set_partitions(t.size())
        .into_iter()
        .filter(|p| compatible(t, p))
        .collect()
}

/// Relabels blocks in order of first appearance.
pub fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(i) => i,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

/// The intersection of every congruence in `all` that relates `a` and `b`.
pub fn least_congruence(all: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let n = all.first().map_or(0, Vec::len);
    let mut acc = vec![0; n];
    for p in all.iter().filter(|p| p[a] == p[b]) {
        let pairs: Vec<(usize, usize)> = acc.iter().copied().zip(p.iter().copied()).collect();
        acc = normalize(
            &pairs
                .iter()
                .map(|pair| pairs.iter().position(|q| q == pair).unwrap())
                .collect::<Vec<_>>(),
        );
    }
    acc
}
