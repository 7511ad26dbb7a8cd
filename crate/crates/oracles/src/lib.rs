//! Brute-force reference implementations.
//!
//! Everything here is written for obviousness rather than speed and shares no
//! code with `approx-veb`. Inputs use plain tuples so the two crates never
//! depend on each other's types.

pub mod geometry;
pub mod graph;
pub mod multiset;

pub use geometry::{convex_hull, diameter, distance_to_polygon, polygon_contains};
pub use graph::{dijkstra_heap, kruskal_mst, prim_heap, Unreached};
pub use multiset::{OracleMultiset, Occurrence};
