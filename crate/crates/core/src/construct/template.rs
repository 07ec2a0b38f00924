use std::fmt;
use std::sync::OnceLock;

use super::ConstructError;
use crate::io::{self, DocumentKind};
use crate::lattice::Lattice;

pub(crate) const INTERIOR_HEADS: [&str; 3] = ["c", "d", "e"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemplateName {
    /// `S(p,q)` for `p < q`.
    S,
    /// `S(p<q, q<r)`.
    SC,
    /// `S(p<q, p<r)`.
    SV,
    /// `S(p<q, r<q)`.
    SH,
}

impl TemplateName {
    pub const ALL: [TemplateName; 4] = [Self::S, Self::SC, Self::SV, Self::SH];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::S => "S",
            Self::SC => "S_C",
            Self::SV => "S_V",
            Self::SH => "S_H",
        }
    }

    /// The shipped data file.
    pub fn source(self) -> &'static str {
        match self {
            Self::S => include_str!("../../data/templates/S.latt"),
            Self::SC => include_str!("../../data/templates/S_C.latt"),
            Self::SV => include_str!("../../data/templates/S_V.latt"),
            Self::SH => include_str!("../../data/templates/S_H.latt"),
        }
    }

    /// Suffixes of the gadget interiors, `c_<tag>`, `d_<tag>`, `e_<tag>`.
    pub fn tags(self) -> &'static [&'static str] {
        match self {
            Self::S => &["pq"],
            Self::SC => &["pq", "qr"],
            Self::SV => &["pq", "pr"],
            Self::SH => &["pq", "rq"],
        }
    }

    fn roles(self) -> &'static [&'static str] {
        match self {
            Self::S => &["o", "i", "a_p", "b_p", "a_q", "b_q"],
            _ => &["o", "i", "a_p", "b_p", "a_q", "b_q", "a_r", "b_r"],
        }
    }
}

impl fmt::Display for TemplateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A gadget lattice read from a template file, with its boundary roles.
#[derive(Debug, Clone)]
pub struct GadgetTemplate {
    name: TemplateName,
    lattice: Lattice,
    boundary: Vec<(String, usize)>,
}

impl GadgetTemplate {
    pub fn parse(name: TemplateName, text: &str) -> Result<Self, ConstructError> {
        let invalid = |detail: String| ConstructError::InvalidTemplate { name, detail };
        let doc = io::parse(text).map_err(|e| invalid(e.to_string()))?;
        if doc.kind != DocumentKind::Template {
            return Err(invalid(format!("kind is {}, expected template", doc.kind)));
        }
        if doc.labels.is_none() {
            return Err(invalid("template elements must be labeled".into()));
        }
        let lattice = doc.to_lattice().map_err(|e| invalid(e.to_string()))?;
        for role in name.roles() {
            if !doc.boundary.iter().any(|(r, _)| r == role) {
                return Err(invalid(format!("missing boundary role {role}")));
            }
        }
        if let Some((r, _)) = doc.boundary.iter().find(|(r, _)| !name.roles().contains(&r.as_str())) {
            return Err(invalid(format!("unexpected boundary role {r}")));
        }
        for (i, (r, x)) in doc.boundary.iter().enumerate() {
            if let Some((s, _)) = doc.boundary[..i].iter().find(|(_, y)| y == x) {
                return Err(invalid(format!("roles {s} and {r} name the same element")));
            }
        }
        let mut expected: Vec<String> = name
            .tags()
            .iter()
            .flat_map(|tag| INTERIOR_HEADS.iter().map(move |h| format!("{h}_{tag}")))
            .collect();
        expected.sort();
        let labels = doc.labels.as_deref().unwrap_or_default();
        let mut interior: Vec<String> = (0..doc.size)
            .filter(|x| !doc.boundary.iter().any(|(_, y)| y == x))
            .map(|x| labels[x].clone())
            .collect();
        interior.sort();
        if interior != expected {
            return Err(invalid(format!("interior {interior:?}, expected {expected:?}")));
        }
        let t = Self {
            name,
            lattice,
            boundary: doc.boundary,
        };
        if t.role("o") != Some(t.lattice.zero()) || t.role("i") != Some(t.lattice.one()) {
            return Err(invalid("roles o and i must be the bounds".into()));
        }
        Ok(t)
    }

    pub fn load(name: TemplateName) -> Result<Self, ConstructError> {
        Self::parse(name, name.source())
    }

    pub fn name(&self) -> TemplateName {
        self.name
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn boundary(&self) -> &[(String, usize)] {
        &self.boundary
    }

    pub fn role(&self, role: &str) -> Option<usize> {
        self.boundary.iter().find(|(r, _)| r == role).map(|&(_, x)| x)
    }

    /// Elements that are not boundary elements, in index order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.lattice.size())
            .filter(|x| !self.boundary.iter().any(|(_, y)| y == x))
            .collect()
    }
}

/// The four shipped templates, loaded and validated once.
pub fn shipped_templates() -> Result<&'static [GadgetTemplate], ConstructError> {
    static CELL: OnceLock<Result<Vec<GadgetTemplate>, ConstructError>> = OnceLock::new();
    CELL.get_or_init(|| TemplateName::ALL.iter().map(|&n| GadgetTemplate::load(n)).collect())
        .as_deref()
        .map_err(Clone::clone)
}

pub(crate) fn shipped(name: TemplateName) -> Result<&'static GadgetTemplate, ConstructError> {
    let all = shipped_templates()?;
    Ok(&all[TemplateName::ALL.iter().position(|&n| n == name).expect("listed")])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_templates_validate() {
        let all = shipped_templates().unwrap();
        let sizes: Vec<usize> = all.iter().map(|t| t.lattice().size()).collect();
        assert_eq!(sizes, vec![9, 14, 14, 14]);
        for t in all {
            t.lattice().check_laws().unwrap();
            assert_eq!(t.interior().len(), t.lattice().size() - t.boundary().len());
        }
    }

    #[test]
    fn gadget_interior_is_the_three_joins() {
        let s = GadgetTemplate::load(TemplateName::S).unwrap();
        let l = s.lattice();
        let at = |r: &str| l.element(r).unwrap();
        assert_eq!(l.join(at("a_p"), at("a_q")), at("c_pq"));
        assert_eq!(l.join(at("b_p"), at("a_q")), at("d_pq"));
        assert_eq!(l.join(at("b_p"), at("b_q")), at("e_pq"));
        assert_eq!(l.join(at("a_p"), at("b_q")), at("e_pq"));
        assert_eq!(l.meet(at("b_p"), at("b_q")), at("o"));
        assert_eq!(s.interior(), vec![at("c_pq"), at("d_pq"), at("e_pq")]);
    }

    #[test]
    fn amalgams_restrict_to_the_gadget() {
        // Each amalgam, cut down to one of its gadgets, is S with the same tables.
        let s = GadgetTemplate::load(TemplateName::S).unwrap();
        let cases = [
            (TemplateName::SC, "p", "q", "pq"),
            (TemplateName::SC, "q", "r", "qr"),
            (TemplateName::SV, "p", "r", "pr"),
            (TemplateName::SH, "r", "q", "rq"),
        ];
        for (name, lo, hi, tag) in cases {
            let t = GadgetTemplate::load(name).unwrap();
            let map = |label: &str| -> usize {
                let renamed = match label.split_once('_') {
                    None => label.to_string(),
                    Some((head, "p")) => format!("{head}_{lo}"),
                    Some((head, "q")) => format!("{head}_{hi}"),
                    Some((head, _)) => format!("{head}_{tag}"),
                };
                t.lattice().element(&renamed).unwrap()
            };
            let sl = s.lattice();
            for x in 0..sl.size() {
                for y in 0..sl.size() {
                    let (lx, ly) = (sl.label(x), sl.label(y));
                    assert_eq!(
                        map(&sl.label(sl.join(x, y))),
                        t.lattice().join(map(&lx), map(&ly)),
                        "{name}"
                    );
                    assert_eq!(
                        map(&sl.label(sl.meet(x, y))),
                        t.lattice().meet(map(&lx), map(&ly)),
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_broken_templates() {
        let not_template = "kind lattice\nelements 2\nlabels o i\ncover o i\n";
        assert!(matches!(
            GadgetTemplate::parse(TemplateName::S, not_template),
            Err(ConstructError::InvalidTemplate { .. })
        ));
        let missing = "kind template\nelements 2\nlabels o i\ncover o i\nboundary o=o\nboundary i=i\n";
        assert!(GadgetTemplate::parse(TemplateName::S, missing).is_err());
        let shared = "kind template\nelements 4\nlabels o a b i\ncover o a\ncover a b\ncover b i\n\
                      boundary o=o\nboundary i=i\nboundary a_p=a\nboundary b_p=b\nboundary a_q=a\nboundary b_q=b\n";
        let err = GadgetTemplate::parse(TemplateName::S, shared).unwrap_err();
        assert!(err.to_string().contains("same element"), "{err}");
    }
}
