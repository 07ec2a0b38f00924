//! Finite lattices with materialized join and meet tables.

mod builtin;

pub use builtin::{builtin, BUILTIN_NAMES};

use thiserror::Error;

use crate::poset::Poset;

/// Why an order fails to be a lattice: the pair has no least upper bound
/// (`Join`) or no greatest lower bound (`Meet`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingBound {
    Join,
    Meet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a lattice: elements {x} and {y} have no {}", match .missing { MissingBound::Join => "least upper bound", MissingBound::Meet => "greatest lower bound" })]
    NotALattice { x: usize, y: usize, missing: MissingBound },
    #[error("an empty order is not a lattice")]
    Empty,
    #[error("unknown builtin lattice `{0}`")]
    UnknownName(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    order: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    zero: usize,
    one: usize,
}

/// Distributivity, modularity and (upper) semimodularity flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticePredicates {
    pub distributive: bool,
    pub modular: bool,
    pub semimodular: bool,
}

pub fn lattice_from_poset(p: &Poset) -> Result<Lattice, LatticeError> {
    Lattice::from_poset(p.clone())
}

impl Lattice {
    /// Computes join and meet tables from up-set and down-set intersections.
    pub fn from_poset(order: Poset) -> Result<Self, LatticeError> {
        let n = order.size();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let ub = order.up_set(x).intersection(order.up_set(y));
                let j = ub
                    .iter()
                    .find(|&z| ub.is_subset(order.up_set(z)))
                    .ok_or(LatticeError::NotALattice {
                        x,
                        y,
                        missing: MissingBound::Join,
                    })?;
                let lb = order.down_set(x).intersection(order.down_set(y));
                let m = lb
                    .iter()
                    .find(|&z| lb.is_subset(order.down_set(z)))
                    .ok_or(LatticeError::NotALattice {
                        x,
                        y,
                        missing: MissingBound::Meet,
                    })?;
                join[x * n + y] = j;
                join[y * n + x] = j;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        let zero = order.zero().expect("finite lattice has a zero");
        let one = order.one().expect("finite lattice has a unit");
        Ok(Self {
            order,
            join,
            meet,
            zero,
            one,
        })
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order.leq(x, y)
    }

    pub fn label(&self, x: usize) -> String {
        self.order.label(x)
    }

    /// Index of the element labeled `label`.
    pub fn element(&self, label: &str) -> Option<usize> {
        self.order.labels()?.iter().position(|l| l == label)
    }

    pub fn predicates(&self) -> LatticePredicates {
        lattice_predicates(self)
    }

    /// Full table scan of the lattice laws: bounds, commutativity,
    /// idempotence, absorption, associativity, and agreement of the tables
    /// with the order. Returns the first failing law.
    pub fn check_laws(&self) -> Result<(), String> {
        let n = self.size();
        for x in 0..n {
            if !self.leq(self.zero, x) || !self.leq(x, self.one) {
                return Err(format!("bounds fail at {x}"));
            }
            if self.join(x, x) != x || self.meet(x, x) != x {
                return Err(format!("idempotence fails at {x}"));
            }
            for y in 0..n {
                let (j, m) = (self.join(x, y), self.meet(x, y));
                if j != self.join(y, x) || m != self.meet(y, x) {
                    return Err(format!("commutativity fails at ({x}, {y})"));
                }
                if !(self.leq(m, x) && self.leq(x, j)) {
                    return Err(format!("meet <= x <= join fails at ({x}, {y})"));
                }
                if self.join(x, m) != x || self.meet(x, j) != x {
                    return Err(format!("absorption fails at ({x}, {y})"));
                }
                if self.leq(x, y) != (j == y) {
                    return Err(format!("join disagrees with order at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.join(j, z) != self.join(x, self.join(y, z))
                        || self.meet(m, z) != self.meet(x, self.meet(y, z))
                    {
                        return Err(format!("associativity fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Elements covering `x`, i.e. `x ≺ y`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.order.covered_by(x, y)
    }
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.size())
            .field("covers", &self.order.covers())
            .finish()
    }
}

/// Distributive and modular via their identities; semimodular via
/// `x ≻ x∧y ⇒ x∨y ≻ y`.
pub fn lattice_predicates(l: &Lattice) -> LatticePredicates {
    let n = l.size();
    let mut distributive = true;
    let mut modular = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if distributive && l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    distributive = false;
                }
                if modular && l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z) {
                    modular = false;
                }
            }
        }
    }
    let semimodular = (0..n).all(|x| (0..n).all(|y| !l.covers(l.meet(x, y), x) || l.covers(y, l.join(x, y))));
    LatticePredicates {
        distributive,
        modular,
        semimodular,
    }
}
