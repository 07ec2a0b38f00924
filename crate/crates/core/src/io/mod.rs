//! The `.latt` text format and DOT export.
//!
//! ```text
//! kind poset            # poset | lattice | template
//! elements 3
//! labels o p i          # optional, one name per element
//! cover o p             # x ≺ y, by label or by index
//! cover p i
//! boundary a_p=p        # templates only
//! ```

mod dot;

pub use dot::export_dot;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Lattice, LatticeError};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentKind {
    Poset,
    Lattice,
    Template,
}

impl DocumentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DocumentKind::Poset => "poset",
            DocumentKind::Lattice => "lattice",
            DocumentKind::Template => "template",
        }
    }
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed `.latt` file. Covers are kept as written (possibly
/// transitively redundant) but sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub kind: DocumentKind,
    pub size: usize,
    pub labels: Option<Vec<String>>,
    pub covers: Vec<(usize, usize)>,
    /// `(role, element)` pairs in file order.
    pub boundary: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown element `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: duplicate cover {x} {y}")]
    DuplicateCover { line: usize, x: String, y: String },
}

/// Errors turning a document into a poset or lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && !s.contains(['=', '#']) && !s.chars().any(char::is_whitespace)
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
        .collect();

    let mut iter = lines.iter();
    let kind = match iter.next() {
        Some((line, t)) if t[0] == "kind" => match t.get(1..) {
            Some(["poset"]) => DocumentKind::Poset,
            Some(["lattice"]) => DocumentKind::Lattice,
            Some(["template"]) => DocumentKind::Template,
            _ => return Err(syntax(*line, "expected `kind <poset|lattice|template>`")),
        },
        Some((line, _)) => return Err(syntax(*line, "first line must be `kind ...`")),
        None => return Err(syntax(1, "empty document")),
    };
    let size = match iter.next() {
        Some((line, t)) if t[0] == "elements" => match t.get(1..) {
            Some([n]) => n
                .parse::<usize>()
                .map_err(|_| syntax(*line, format!("bad element count `{n}`")))?,
            _ => return Err(syntax(*line, "expected `elements <n>`")),
        },
        Some((line, _)) => return Err(syntax(*line, "second line must be `elements <n>`")),
        None => return Err(syntax(lines.last().map_or(1, |l| l.0), "missing `elements` line")),
    };
    let body: Vec<&(usize, Vec<&str>)> = iter.collect();

    let mut labels: Option<Vec<String>> = None;
    for (line, t) in &body {
        if t[0] != "labels" {
            continue;
        }
        if labels.is_some() {
            return Err(syntax(*line, "more than one `labels` line"));
        }
        let names: Vec<String> = t[1..].iter().map(|s| s.to_string()).collect();
        if names.len() != size {
            return Err(syntax(*line, format!("expected {size} labels, got {}", names.len())));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !valid_label(name) {
                return Err(syntax(*line, format!("invalid label `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(syntax(*line, format!("duplicate label `{name}`")));
            }
        }
        labels = Some(names);
    }

    let resolve = |line: usize, token: &str| -> Result<usize, ParseError> {
        if let Some(names) = &labels {
            if let Some(i) = names.iter().position(|n| n == token) {
                return Ok(i);
            }
        }
        match token.parse::<usize>() {
            Ok(i) if i < size => Ok(i),
            _ => Err(ParseError::UnknownLabel {
                line,
                label: token.to_string(),
            }),
        }
    };

    let mut covers = BTreeSet::new();
    let mut boundary = Vec::new();
    for (line, t) in body {
        let line = *line;
        match t[0] {
            "labels" => {}
            "cover" => {
                let [x, y] = t[1..] else {
                    return Err(syntax(line, "expected `cover <x> <y>`"));
                };
                let pair = (resolve(line, x)?, resolve(line, y)?);
                if !covers.insert(pair) {
                    return Err(ParseError::DuplicateCover {
                        line,
                        x: x.to_string(),
                        y: y.to_string(),
                    });
                }
            }
            "boundary" => {
                if kind != DocumentKind::Template {
                    return Err(syntax(line, "`boundary` is only allowed in templates"));
                }
                let [spec] = t[1..] else {
                    return Err(syntax(line, "expected `boundary <role>=<label>`"));
                };
                let Some((role, label)) = spec.split_once('=') else {
                    return Err(syntax(line, "expected `boundary <role>=<label>`"));
                };
                if !valid_label(role) {
                    return Err(syntax(line, format!("invalid role `{role}`")));
                }
                if boundary.iter().any(|(r, _)| r == role) {
                    return Err(syntax(line, format!("duplicate boundary role `{role}`")));
                }
                boundary.push((role.to_string(), resolve(line, label)?));
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    Ok(Document {
        kind,
        size,
        labels,
        covers: covers.into_iter().collect(),
        boundary,
    })
}

pub fn serialize(d: &Document) -> String {
    let name = |x: usize| match &d.labels {
        Some(l) => l[x].clone(),
        None => x.to_string(),
    };
    let mut out = String::new();
    out.push_str(&format!("kind {}\nelements {}\n", d.kind, d.size));
    if let Some(labels) = &d.labels {
        out.push_str("labels");
        for l in labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
    }
    let mut covers = d.covers.clone();
    covers.sort_unstable();
    for (x, y) in covers {
        out.push_str(&format!("cover {} {}\n", name(x), name(y)));
    }
    for (role, x) in &d.boundary {
        out.push_str(&format!("boundary {}={}\n", role, name(*x)));
    }
    out
}

impl Document {
    pub fn from_poset(kind: DocumentKind, p: &Poset) -> Self {
        Self {
            kind,
            size: p.size(),
            labels: p.labels().map(<[String]>::to_vec),
            covers: p.covers().to_vec(),
            boundary: Vec::new(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        let p = Poset::new(self.size, &self.covers)?;
        match &self.labels {
            Some(l) => p.with_labels(l.clone()),
            None => Ok(p),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice, DocumentError> {
        Ok(Lattice::from_poset(self.to_poset()?)?)
    }
}

pub fn parse_poset(text: &str) -> Result<Poset, DocumentError> {
    Ok(parse(text)?.to_poset()?)
}

pub fn parse_lattice(text: &str) -> Result<Lattice, DocumentError> {
    parse(text)?.to_lattice()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let d = parse("kind poset\nelements 2\ncover 0 1").unwrap();
        assert_eq!(d.kind, DocumentKind::Poset);
        assert_eq!(d.covers, vec![(0, 1)]);
        assert_eq!(serialize(&d), "kind poset\nelements 2\ncover 0 1\n");
    }

    #[test]
    fn cycle_surfaces_on_build() {
        let d = parse("kind poset\nelements 3\ncover 0 1\ncover 1 0").unwrap();
        assert!(matches!(d.to_poset(), Err(PosetError::CycleDetected { .. })));
    }

    #[test]
    fn labels_comments_and_order() {
        let text = "# a comment\nkind template\nelements 3\n\ncover p i  # trailing\nlabels o p i\ncover o p\nboundary top=i\n";
        let d = parse(text).unwrap();
        assert_eq!(d.covers, vec![(0, 1), (1, 2)]);
        assert_eq!(d.boundary, vec![("top".to_string(), 2)]);
        assert_eq!(
            serialize(&d),
            "kind template\nelements 3\nlabels o p i\ncover o p\ncover p i\nboundary top=i\n"
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse("kind poset\nelements 2\ncover 0 5").unwrap_err(),
            ParseError::UnknownLabel {
                line: 3,
                label: "5".into()
            }
        );
        assert!(matches!(
            parse("kind poset\nelements 2\ncover 0 1\ncover 0 1").unwrap_err(),
            ParseError::DuplicateCover { line: 4, .. }
        ));
        assert!(matches!(
            parse("kind graph\nelements 2").unwrap_err(),
            ParseError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            parse("kind poset\nelements 2\nboundary a=0").unwrap_err(),
            ParseError::Syntax { line: 3, .. }
        ));
        assert!(matches!(
            parse("kind poset\nelements 2\nlabels a a").unwrap_err(),
            ParseError::Syntax { line: 3, .. }
        ));
        assert!(matches!(
            parse("kind poset\nelements 2\nedge 0 1").unwrap_err(),
            ParseError::Syntax { line: 3, .. }
        ));
        assert!(matches!(parse("").unwrap_err(), ParseError::Syntax { .. }));
    }

    #[test]
    fn numeric_labels_resolve_as_labels_first() {
        let d = parse("kind poset\nelements 2\nlabels 1 0\ncover 1 0").unwrap();
        assert_eq!(d.covers, vec![(0, 1)]);
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }

    #[test]
    fn serialization_is_not_canonicalizing() {
        let a = parse("kind poset\nelements 3\ncover 0 1").unwrap();
        let b = parse("kind poset\nelements 3\ncover 1 2").unwrap();
        assert_ne!(serialize(&a), serialize(&b));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn document() -> impl Strategy<Value = Document> {
            (1usize..8, any::<bool>(), 0u8..3)
                .prop_flat_map(|(n, labeled, kind)| {
                    let pairs = proptest::collection::btree_set((0..n, 0..n), 0..12);
                    let boundary = proptest::collection::vec(0..n, 0..3);
                    (Just(n), Just(labeled), Just(kind), pairs, boundary)
                })
                .prop_map(|(n, labeled, kind, pairs, boundary)| {
                    let kind = match kind {
                        0 => DocumentKind::Poset,
                        1 => DocumentKind::Lattice,
                        _ => DocumentKind::Template,
                    };
                    let boundary = if kind == DocumentKind::Template {
                        boundary
                            .into_iter()
                            .enumerate()
                            .map(|(i, x)| (format!("r{i}"), x))
                            .collect()
                    } else {
                        Vec::new()
                    };
                    Document {
                        kind,
                        size: n,
                        labels: labeled.then(|| (0..n).map(|i| format!("e_{}", n - i)).collect()),
                        covers: pairs.into_iter().collect(),
                        boundary,
                    }
                })
        }

        proptest! {
            #[test]
            fn parse_inverts_serialize(d in document()) {
                let text = serialize(&d);
                prop_assert_eq!(parse(&text).unwrap(), d);
                prop_assert_eq!(serialize(&parse(&text).unwrap()), text);
            }
        }
    }
}
