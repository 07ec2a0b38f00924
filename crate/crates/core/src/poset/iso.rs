use super::Poset;

/// An order isomorphism between two posets, stored in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderIso {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
}

impl OrderIso {
    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).collect(),
            backward: (0..n).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Checks bijectivity and that `leq` is preserved and reflected.
    pub fn is_valid(&self, p: &Poset, q: &Poset) -> bool {
        let n = p.size();
        if q.size() != n || self.forward.len() != n || self.backward.len() != n {
            return false;
        }
        for x in 0..n {
            let fx = self.forward[x];
            if fx >= n || self.backward[fx] != x {
                return false;
            }
        }
        (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == q.leq(self.forward[x], self.forward[y])))
    }
}

type Invariant = (usize, usize, usize, usize);

fn invariants(p: &Poset) -> Vec<Invariant> {
    let mut lower = vec![0; p.size()];
    let mut upper = vec![0; p.size()];
    for &(x, y) in p.covers() {
        upper[x] += 1;
        lower[y] += 1;
    }
    (0..p.size())
        .map(|x| (p.down_set(x).len(), p.up_set(x).len(), lower[x], upper[x]))
        .collect()
}

/// Decides whether `p` and `q` are order-isomorphic and returns a witness.
///
/// Backtracking over elements of `p` in order of down-set size; candidates
/// in `q` must share the element invariant (down/up-set sizes and cover
/// degrees) and agree on comparabilities with everything already mapped.
pub fn order_isomorphism(p: &Poset, q: &Poset) -> Option<OrderIso> {
    let n = p.size();
    if q.size() != n || p.covers().len() != q.covers().len() {
        return None;
    }
    let inv_p = invariants(p);
    let inv_q = invariants(q);
    let mut sorted_p = inv_p.clone();
    let mut sorted_q = inv_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return None;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (inv_p[x].0, x));
    let mut forward = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &inv_p, &inv_q, &order, 0, &mut forward, &mut used) {
        let mut backward = vec![0; n];
        for (x, &y) in forward.iter().enumerate() {
            backward[y] = x;
        }
        Some(OrderIso { forward, backward })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    inv_p: &[Invariant],
    inv_q: &[Invariant],
    order: &[usize],
    depth: usize,
    forward: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..q.size() {
        if used[y] || inv_q[y] != inv_p[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            let fw = forward[w];
            p.leq(w, x) == q.leq(fw, y) && p.leq(x, w) == q.leq(y, fw)
        });
        if !consistent {
            continue;
        }
        forward[x] = y;
        used[y] = true;
        if extend(p, q, inv_p, inv_q, order, depth + 1, forward, used) {
            return true;
        }
        used[y] = false;
        forward[x] = usize::MAX;
    }
    false
}
