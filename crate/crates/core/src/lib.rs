//! Finite posets and lattices, congruence lattices, the order of principal
//! congruences, and a construction realizing any finite bounded order as
//! the principal congruence order of a finite lattice.

pub mod bitset;
pub mod census;
pub mod congruence;
pub mod construct;
pub mod io;
pub mod lattice;
pub mod parallel;
pub mod poset;
