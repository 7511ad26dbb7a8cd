//! Exact and approximate van Emde Boas ordered multisets.
//!
//! The approximate structures trade a bounded error in key order for a much
//! smaller universe: keys are mapped by a monotone function that only
//! promises to separate keys differing by a factor of `1 + epsilon`
//! ([`mapping::MultiplicativeMap`]) or by an absolute `delta`
//! ([`mapping::AdditiveMap`]), then stored in an exact structure
//! ([`exact::VebSet`]) whose operations take `O(log log_b U')` time on the
//! reduced universe `U'`.
//!
//! Three applications are included: Prim's minimum spanning tree and
//! Dijkstra's shortest paths driven by an approximate priority queue
//! ([`graph`]), and an on-line approximate convex hull ([`hull`]).
//!
//! The guide under `book/` walks through each piece; its code samples are
//! compiled and run as doc-tests of this crate.

pub mod approx;
pub mod error;
pub mod exact;
pub mod graph;
pub mod hull;
pub mod mapping;
pub mod word;

pub use approx::{ApproxPq, ApproxVeb, Mapping, PriorityQueue};
pub use error::{Error, Result};
pub use exact::{DescentStats, Name, VebSet};
pub use mapping::{AdditiveMap, KeyMap, MappedKey, MultiplicativeMap};
pub use word::{FixedPoint, WordConfig};

// The guide's code blocks run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/mappings.md")]
    mod mappings {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/approximate.md")]
    mod approximate {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/hull.md")]
    mod hull {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
