//! Exact invariants of twisted Dijkgraaf-Witten theories for finite groups.
//!
//! Phases live in `Q/Z` and every sum of roots of unity is evaluated exactly,
//! so counts come out as certified integers.

pub mod cli;
pub mod cochain;
pub mod group;
pub mod invariants;
pub mod json;
pub mod phase;
pub mod simplicial;
pub mod transgression;
