//! Union-closed families generated by uniform set systems.
//!
//! The crate computes the union-closed family `<A>` generated by a family of
//! distinct `k`-sets, the colex, lex and max-lex orders on `k`-sets, shadows
//! and Kruskal–Katona minima, the known candidate-extremal constructions,
//! and the exact minimum `f(n, k)` of `|<A>|` over all families of `n`
//! distinct `k`-sets by exhaustive orderly search.

pub mod closure;
pub mod constructions;
pub mod error;
pub mod harness;
pub mod math;
pub mod orders;
pub mod search;
pub mod setcore;
pub mod shadows;

pub use error::{Error, Result};
pub use setcore::{ElementSet, Family};
