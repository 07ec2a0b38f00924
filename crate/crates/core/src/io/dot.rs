use std::collections::BTreeMap;
use std::fmt::Write;

use crate::poset::Poset;

/// Renders the Hasse diagram of `order` as a DOT digraph, bottom to top.
///
/// Nodes are emitted in index order, covers sorted, and nodes of equal
/// height share a rank. Elements in `highlight` are filled.
pub fn export_dot(order: &Poset, highlight: Option<&[usize]>) -> String {
    let mut out = String::new();
    out.push_str("digraph hasse {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle];\n");
    for x in 0..order.size() {
        let label = order.label(x).replace('\\', "\\\\").replace('"', "\\\"");
        let marked = highlight.is_some_and(|h| h.contains(&x));
        if marked {
            let _ = writeln!(out, "  n{x} [label=\"{label}\", style=filled, fillcolor=gold];");
        } else {
            let _ = writeln!(out, "  n{x} [label=\"{label}\"];");
        }
    }
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, h) in order.heights().into_iter().enumerate() {
        ranks.entry(h).or_default().push(x);
    }
    for members in ranks.values() {
        let ids: Vec<String> = members.iter().map(|x| format!("n{x};")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join(" "));
    }
    let mut covers = order.covers().to_vec();
    covers.sort_unstable();
    for (x, y) in covers {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}
