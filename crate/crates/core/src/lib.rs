//! Exact, desk-scale constructions around unambiguous finite automata and
//! the communication-complexity measures that bound their size.
//!
//! The crate is organised by subject:
//!
//! * [`boolfn`]: truth tables, conjunctions, DNF/CNF and the widths `C1`, `C0`, `UC1`.
//! * [`junta`]: conical juntas, the approximate nonnegative-degree LP with
//!   dual certificates, and certificate/junta transforms.
//! * [`automata`]: NFAs with unambiguity checking, closure operations,
//!   DNF-to-UFA, fixed-length complement and rectangle extraction.
//! * [`commx`]: communication matrices with cover and partition numbers, rank,
//!   nonnegative-rank windows and the OR-composition of matrices.
//! * [`lifting`]: gadgets, decision trees and `f o g^n` at table, DNF and matrix level.
//! * [`disj`]: sparse set disjointness, with encodings, its two NFAs and the rank bound.
//!
//! All arithmetic that decides a verdict is exact (`BigRational`).

pub mod automata;
pub mod boolfn;
pub mod commx;
pub mod disj;
pub mod error;
pub mod junta;
pub mod lifting;
pub mod lp;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
