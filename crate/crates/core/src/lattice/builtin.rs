use super::{Lattice, LatticeError};
use crate::io;
use crate::poset::Poset;

const N7_SOURCE: &str = include_str!("../../data/lattices/N7.latt");

pub const BUILTIN_NAMES: &[&str] = &[
    "N7", "B1", "B2", "B3", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "N5", "M3",
];

/// Shipped example lattices: `B1..B3` (element index = bit code, so join is
/// bitwise or), chains `C2..C9`, the pentagon `N5`, the diamond `M3`, and
/// `N7` read from its data file.
pub fn builtin(name: &str) -> Result<Lattice, LatticeError> {
    let unknown = || LatticeError::UnknownName(name.to_string());
    match name {
        "N7" => Ok(io::parse_lattice(N7_SOURCE).expect("shipped N7 data file is valid")),
        "N5" => labeled(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], &["o", "a", "b", "c", "i"]),
        "M3" => labeled(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            &["o", "a", "b", "c", "i"],
        ),
        _ => {
            let mut chars = name.chars();
            let kind = chars.next();
            let k: usize = chars.as_str().parse().map_err(|_| unknown())?;
            match (kind, k) {
                (Some('B'), 1..=3) => Ok(boolean(k)),
                (Some('C'), 2..=9) => Lattice::from_poset(Poset::chain(k)),
                _ => Err(unknown()),
            }
        }
    }
}

fn labeled(n: usize, covers: &[(usize, usize)], labels: &[&str]) -> Result<Lattice, LatticeError> {
    let p = Poset::new(n, covers)
        .and_then(|p| p.with_labels(labels.iter().map(|s| s.to_string()).collect()))
        .expect("builtin order is valid");
    Lattice::from_poset(p)
}

fn boolean(k: usize) -> Lattice {
    let n = 1 << k;
    let p = Poset::from_leq(n, |x, y| x & !y == 0);
    let labels = (0..n).map(|x| format!("{x:0k$b}")).collect();
    Lattice::from_poset(p.with_labels(labels).expect("one label per element")).expect("subset order is a lattice")
}
