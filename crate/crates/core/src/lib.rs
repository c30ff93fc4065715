//! Fan–Raspaud triples in bridgeless cubic graphs: three perfect matchings
//! with empty common intersection, built from balanced matchings, 2-factor
//! structures and reductions, and checked against brute force.

pub mod graph;
pub mod named;
pub mod matching;
pub mod balanced;
pub mod structures;
pub mod reductions;
pub mod solver;
pub mod suites;
