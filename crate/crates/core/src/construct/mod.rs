//! Building a finite lattice `K` with `Princ K` isomorphic to a given finite
//! bounded order `P`.
//!
//! `F` is the horizontal sum of the chains `a_p < b_p` for `p ∈ P^-` and two
//! one-element arms `a_0` and `a_1`, between a new bottom `o` and top `i`.
//! For each `p < q` in `P^-` the gadget `S(p,q)` is inserted between the
//! edges `[a_p,b_p]` and `[a_q,b_q]`. Joins and meets of `K` are assembled
//! from `F`, the gadget template, and the amalgams `S_C`, `S_V`, `S_H`
//! where two gadgets share an index; elements of gadgets on disjoint
//! indices are complementary. The assembled tables are then checked against
//! the order they generate.

mod template;
mod verify;

pub use template::{shipped_templates, GadgetTemplate, TemplateName};
pub use verify::{
    render_exhaustive, verify_exhaustive, verify_theorem1, verify_theorem1_with, ExhaustiveEntry, TheoremReport,
    TheoremSummary, Violation,
};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError, MissingBound};
use crate::poset::{OrderIso, Poset, PosetError};
use template::{shipped, INTERIOR_HEADS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("order is not bounded")]
    NotBounded,
    #[error("template {name}: {detail}")]
    InvalidTemplate { name: TemplateName, detail: String },
    #[error("template assembly failed: {0}")]
    TemplateAssembly(AssemblyWitness),
    #[error("verification failed: {0}")]
    VerificationFailed(Violation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Join,
    Meet,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Join => "join",
            Operation::Meet => "meet",
        })
    }
}

/// Evidence that the template tables do not fit together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssemblyWitness {
    /// `(x op y) op z != x op (y op z)` in the assembled table.
    Associativity {
        op: Operation,
        x: usize,
        y: usize,
        z: usize,
    },
    /// The assembled value for `(x, y)` is not the lub/glb of the glued order.
    Ambiguous { op: Operation, x: usize, y: usize },
    /// The glued covers contain a cycle.
    Cycle { cycle: Vec<usize> },
}

impl fmt::Display for AssemblyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Associativity { op, x, y, z } => {
                write!(f, "{op} is not associative on ({x}, {y}, {z})")
            }
            Self::Ambiguous { op, x, y } => write!(f, "ambiguous {op} of ({x}, {y})"),
            Self::Cycle { cycle } => write!(f, "glued order has a cycle through {cycle:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Insert gadgets for covering pairs `p ≺ q` only, instead of every `p < q`.
    pub covers_only: bool,
}

/// One inserted `S(p,q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetRecord {
    pub template: TemplateName,
    /// `(p, q)` as elements of `P`.
    pub pair: (usize, usize),
    /// Template label and the element of `K` it lands on.
    pub embedding: Vec<(String, usize)>,
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub k: Lattice,
    /// `(a_p, b_p)` in `K` for every element `p` of `P`.
    pub boundary_map: Vec<(usize, usize)>,
    pub gadgets: Vec<GadgetRecord>,
    /// `F` occupies the indices `0..f_size` of `K`.
    pub f_size: usize,
    /// `P → Princ K`, filled in by verification.
    pub iso: Option<OrderIso>,
}

impl ConstructionResult {
    /// All boundary elements `a_p`, `b_p`, sorted.
    pub fn boundary_elements(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.boundary_map.iter().flat_map(|&(a, b)| [a, b]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

const O: usize = 0;
const I: usize = 1;

struct Frame {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    boundary: Vec<(usize, usize)>,
    pminus: Vec<usize>,
}

fn frame(p: &Poset) -> Result<Frame, ConstructError> {
    let interior = p.interior().map_err(|_| ConstructError::NotBounded)?;
    let (zero, one) = (p.zero().expect("bounded"), p.one().expect("bounded"));
    let mut f = Frame {
        labels: vec!["o".into()],
        covers: Vec::new(),
        boundary: vec![(O, O); p.size()],
        pminus: interior.pminus,
    };
    if p.size() == 1 {
        return Ok(f);
    }
    f.labels.push("i".into());
    f.covers.push((O, I));
    f.boundary[one] = (I, I);
    if f.pminus.is_empty() {
        return Ok(f);
    }
    f.covers.clear();
    for x in [zero, one] {
        let a = f.labels.len();
        f.labels.push(format!("a({})", p.label(x)));
        f.covers.extend([(O, a), (a, I)]);
        f.boundary[x] = (a, a);
    }
    for &x in &f.pminus {
        let a = f.labels.len();
        f.labels.push(format!("a({})", p.label(x)));
        f.labels.push(format!("b({})", p.label(x)));
        f.covers.extend([(O, a), (a, a + 1), (a + 1, I)]);
        f.boundary[x] = (a, a + 1);
    }
    Ok(f)
}

fn labeled_order(size: usize, covers: &[(usize, usize)], labels: Vec<String>) -> Result<Poset, ConstructError> {
    Poset::new(size, covers)
        .and_then(|p| p.with_labels(labels))
        .map_err(|e| match e {
            PosetError::CycleDetected { cycle } => ConstructError::TemplateAssembly(AssemblyWitness::Cycle { cycle }),
            other => unreachable!("glued order: {other}"),
        })
}

/// `F` with its boundary map. For the singleton `P` this is the one-element
/// lattice, and for the 2-chain it is `{o, i}`.
pub fn build_f(p: &Poset) -> Result<(Lattice, Vec<(usize, usize)>), ConstructError> {
    let f = frame(p)?;
    let order = labeled_order(f.labels.len(), &f.covers, f.labels)?;
    Ok((
        Lattice::from_poset(order).expect("horizontal sum is a lattice"),
        f.boundary,
    ))
}

/// A template placed in `K`: template element `t` lands on `to_k[t]`.
struct Chart {
    template: &'static GadgetTemplate,
    to_k: Vec<usize>,
    from_k: HashMap<usize, usize>,
}

impl Chart {
    /// `letters` assigns the index letters `p`, `q`, `r` to elements of `P`;
    /// `tags` assigns interior tags such as `pq` to gadget ids.
    fn new(
        template: &'static GadgetTemplate,
        boundary: &[(usize, usize)],
        letters: &[(&str, usize)],
        tags: &[(&str, usize)],
        interior_of: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let l = template.lattice();
        let mut to_k = vec![usize::MAX; l.size()];
        for (role, t) in template.boundary() {
            to_k[*t] = match role.split_once('_') {
                None if role == "o" => O,
                None => I,
                Some((side, letter)) => {
                    let &(_, x) = letters.iter().find(|(s, _)| *s == letter).expect("role letter");
                    let (a, b) = boundary[x];
                    if side == "a" {
                        a
                    } else {
                        b
                    }
                }
            };
        }
        for t in template.interior() {
            let label = l.label(t);
            let (head, tag) = label.split_once('_').expect("validated interior label");
            let &(_, g) = tags.iter().find(|(s, _)| *s == tag).expect("validated interior tag");
            let slot = INTERIOR_HEADS.iter().position(|h| *h == head).expect("validated head");
            to_k[t] = interior_of(g, slot);
        }
        let from_k = to_k.iter().enumerate().map(|(t, &x)| (x, t)).collect();
        Self { template, to_k, from_k }
    }

    fn contains(&self, x: usize) -> bool {
        self.from_k.contains_key(&x)
    }

    fn apply(&self, op: Operation, x: usize, y: usize) -> usize {
        let l = self.template.lattice();
        let (tx, ty) = (self.from_k[&x], self.from_k[&y]);
        self.to_k[match op {
            Operation::Join => l.join(tx, ty),
            Operation::Meet => l.meet(tx, ty),
        }]
    }
}

/// The amalgam chart for two gadgets sharing an index, if they do.
fn amalgam(
    g: usize,
    h: usize,
    pairs: &[(usize, usize)],
    boundary: &[(usize, usize)],
    interior_of: impl Fn(usize, usize) -> usize,
) -> Result<Option<Chart>, ConstructError> {
    let ((p1, q1), (p2, q2)) = (pairs[g], pairs[h]);
    let (name, letters, tags) = if q1 == p2 {
        (
            TemplateName::SC,
            [("p", p1), ("q", q1), ("r", q2)],
            [("pq", g), ("qr", h)],
        )
    } else if q2 == p1 {
        (
            TemplateName::SC,
            [("p", p2), ("q", q2), ("r", q1)],
            [("pq", h), ("qr", g)],
        )
    } else if p1 == p2 {
        (
            TemplateName::SV,
            [("p", p1), ("q", q1), ("r", q2)],
            [("pq", g), ("pr", h)],
        )
    } else if q1 == q2 {
        (
            TemplateName::SH,
            [("p", p1), ("q", q1), ("r", p2)],
            [("pq", g), ("rq", h)],
        )
    } else {
        return Ok(None);
    };
    Ok(Some(Chart::new(shipped(name)?, boundary, &letters, &tags, interior_of)))
}

/// Builds `K` for a bounded `P`.
pub fn build_k(p: &Poset, opts: BuildOptions) -> Result<ConstructionResult, ConstructError> {
    let f = frame(p)?;
    let f_lattice = {
        let order = labeled_order(f.labels.len(), &f.covers, f.labels.clone())?;
        Lattice::from_poset(order).expect("horizontal sum is a lattice")
    };
    let f_size = f.labels.len();
    let pairs: Vec<(usize, usize)> = f
        .pminus
        .iter()
        .flat_map(|&x| f.pminus.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| {
            if opts.covers_only {
                p.covered_by(x, y)
            } else {
                p.lt(x, y)
            }
        })
        .collect();
    let n = f_size + INTERIOR_HEADS.len() * pairs.len();
    let interior_of = |g: usize, slot: usize| f_size + INTERIOR_HEADS.len() * g + slot;

    let s = shipped(TemplateName::S)?;
    let mut labels = f.labels.clone();
    let mut covers = f.covers.clone();
    let mut charts = Vec::with_capacity(pairs.len());
    let mut gadgets = Vec::with_capacity(pairs.len());
    for (g, &(x, y)) in pairs.iter().enumerate() {
        let chart = Chart::new(s, &f.boundary, &[("p", x), ("q", y)], &[("pq", g)], interior_of);
        for head in INTERIOR_HEADS {
            labels.push(format!("{head}({},{})", p.label(x), p.label(y)));
        }
        covers.extend(
            s.lattice()
                .order()
                .covers()
                .iter()
                .map(|&(u, v)| (chart.to_k[u], chart.to_k[v])),
        );
        gadgets.push(GadgetRecord {
            template: TemplateName::S,
            pair: (x, y),
            embedding: (0..s.lattice().size())
                .map(|t| (s.lattice().label(t), chart.to_k[t]))
                .collect(),
        });
        charts.push(chart);
    }
    covers.sort_unstable();
    covers.dedup();

    let mut amalgams = HashMap::new();
    for g in 0..pairs.len() {
        for h in g + 1..pairs.len() {
            if let Some(chart) = amalgam(g, h, &pairs, &f.boundary, interior_of)? {
                amalgams.insert((g, h), chart);
            }
        }
    }
    let owner = |x: usize| (x >= f_size).then(|| (x - f_size) / INTERIOR_HEADS.len());
    // Two boundary elements of one gadget meet and join inside that gadget.
    let mut edge_of = vec![None; f_size];
    for &x in &f.pminus {
        let (a, b) = f.boundary[x];
        edge_of[a] = Some(x);
        edge_of[b] = Some(x);
    }
    let gadget_of: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(g, &pq)| (pq, g)).collect();
    let lookup = |op: Operation, x: usize, y: usize| -> usize {
        let complement = match op {
            Operation::Join => I,
            Operation::Meet => O,
        };
        let chart = match (owner(x), owner(y)) {
            (None, None) => match (edge_of[x], edge_of[y]) {
                (Some(px), Some(py)) if gadget_of.contains_key(&(px, py)) => Some(&charts[gadget_of[&(px, py)]]),
                (Some(px), Some(py)) if gadget_of.contains_key(&(py, px)) => Some(&charts[gadget_of[&(py, px)]]),
                _ => {
                    return match op {
                        Operation::Join => f_lattice.join(x, y),
                        Operation::Meet => f_lattice.meet(x, y),
                    }
                }
            },
            (Some(g), None) | (None, Some(g)) => Some(&charts[g]),
            (Some(g), Some(h)) if g == h => Some(&charts[g]),
            (Some(g), Some(h)) => amalgams.get(&(g.min(h), g.max(h))),
        };
        match chart {
            Some(c) if c.contains(x) && c.contains(y) => c.apply(op, x, y),
            _ => complement,
        }
    };
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for x in 0..n {
        for y in x..n {
            join[x * n + y] = lookup(Operation::Join, x, y);
            join[y * n + x] = join[x * n + y];
            meet[x * n + y] = lookup(Operation::Meet, x, y);
            meet[y * n + x] = meet[x * n + y];
        }
    }
    let assembly_error = |w| Err(ConstructError::TemplateAssembly(w));
    for (op, table) in [(Operation::Join, &join), (Operation::Meet, &meet)] {
        if let Some((x, y, z)) = associativity_failure(n, table) {
            return assembly_error(AssemblyWitness::Associativity { op, x, y, z });
        }
    }

    let order = labeled_order(n, &covers, labels)?;
    let k = match Lattice::from_poset(order) {
        Ok(k) => k,
        Err(LatticeError::NotALattice { x, y, missing }) => {
            let op = match missing {
                MissingBound::Join => Operation::Join,
                MissingBound::Meet => Operation::Meet,
            };
            return assembly_error(AssemblyWitness::Ambiguous { op, x, y });
        }
        Err(e) => unreachable!("glued order is nonempty: {e}"),
    };
    for x in 0..n {
        for y in 0..n {
            if k.join(x, y) != join[x * n + y] {
                return assembly_error(AssemblyWitness::Ambiguous {
                    op: Operation::Join,
                    x,
                    y,
                });
            }
            if k.meet(x, y) != meet[x * n + y] {
                return assembly_error(AssemblyWitness::Ambiguous {
                    op: Operation::Meet,
                    x,
                    y,
                });
            }
        }
    }
    Ok(ConstructionResult {
        k,
        boundary_map: f.boundary,
        gadgets,
        f_size,
        iso: None,
    })
}

fn associativity_failure(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    for x in 0..n {
        for y in 0..n {
            let xy = table[x * n + y];
            for z in 0..n {
                if table[xy * n + z] != table[x * n + table[y * n + z]] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}
