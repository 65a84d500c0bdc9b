//! Exact analysis of Berge-F-free hypergraphs at desk scale.
//!
//! The crate provides:
//!
//! - core types: [`Graph`], [`Hypergraph`], compact [`bitset::VertexSet`]s,
//!   2-shadows, pair multiplicities, and weight functionals over hyperedge
//!   sizes ([`weight`]);
//! - Berge containment certificates via embedding enumeration plus
//!   augmenting-path systems of distinct representatives ([`berge`]),
//!   together with an independent brute-force oracle;
//! - the blue-edge classification of shadow edges and its verifiers
//!   ([`classify`]);
//! - exact small 2-color Ramsey numbers with extremal coloring witnesses
//!   ([`ramsey`]);
//! - explicit extremal constructions and a seeded greedy generator
//!   ([`constructions`]);
//! - branch-and-bound search oracles for maximum-weight Berge-free
//!   hypergraphs and maximum F-free graphs ([`search`]).
//!
//! Everything is deterministic: randomized generators take explicit 64-bit
//! seeds, searches fix their exploration order, and all core types are
//! immutable once constructed (safe to share across threads).

pub mod berge;
pub mod bitset;
pub mod classify;
pub mod constructions;
pub mod expr;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod ramsey;
pub mod search;
pub mod weight;

pub use berge::{contains_berge, count_copies, find_embeddings, is_berge_f_free, BergeWitness};
pub use graph::Graph;
pub use hypergraph::Hypergraph;
pub use weight::{weigh, WeightFunction, WeightReport};
