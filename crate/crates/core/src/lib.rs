//! Finite loop theory toolkit.
//!
//! Loops are stored as validated Cayley tables ([`table::LoopTable`]).
//! Equations between loop words are parsed and checked exhaustively
//! ([`terms`]), a catalog of named loop classes sits on top of that
//! ([`properties`]), and the middle Bol characterizations built from the
//! maps `f1, g1, f2, g2, α, β, φ, ψ` live in [`mappings`]. Isostrophy and
//! isotopy constructions are in [`construct`]; [`search`] enumerates small
//! loops and builds the test corpus that [`lemmas`] runs over.

pub mod claims;
pub mod cli;
pub mod construct;
pub mod io;
pub mod lemmas;
pub mod mappings;
pub mod par;
pub mod properties;
pub mod report;
pub mod search;
pub mod table;
pub mod terms;

pub use report::{CheckReport, Counterexample, Failure};
pub use table::{ElementInfo, LoopTable, TableError};
pub use terms::{Identity, Term};
