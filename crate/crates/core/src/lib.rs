//! Avoidance of split overlaps: word periodicity primitives, repetition
//! detectors, counting bounds, de Bruijn constructions and exhaustive
//! extremal-word search for `C(k,n)`, `S(k,t)` and `R(k,t)`.

pub mod combinatorics;
pub mod debruijn;
pub mod detect;
pub mod error;
pub mod search;
pub mod word;

pub use error::{Error, Result};
pub use word::{Symbol, Word};
