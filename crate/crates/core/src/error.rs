use thiserror::Error;

/// Errors reported by the structures and algorithms in this crate.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("msb of zero")]
    MsbOfZero,
    #[error("word size must be a power of two in 8..=64, got {0}")]
    InvalidWordSize(u32),
    #[error("fixed-point part does not fit in {bits} bits")]
    PartTooWide { bits: u32 },
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("epsilon too small for word size")]
    EpsilonTooSmall,
    #[error("delta must satisfy 0 < delta <= universe")]
    InvalidDelta,
    #[error("universe must be at least 1")]
    InvalidUniverse,
    #[error("universe too large for word size")]
    UniverseTooLarge,
    #[error("multiplicative key below 1")]
    KeyBelowOne,
    #[error("key exceeds universe")]
    KeyExceedsUniverse,
    #[error("mapped key {key} outside universe of size {size}")]
    KeyOutOfRange { key: u64, size: u128 },
    #[error("stale or foreign name")]
    StaleName,
    #[error("priority queue is empty")]
    Empty,
    #[error("edge weight must be at least 1 (edge {0})")]
    ZeroWeight(usize),
    #[error("edge {edge} references vertex {vertex} but graph has {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("graph is disconnected: vertex {0} unreached")]
    Disconnected(usize),
    #[error("source {vertex} out of range for {n} vertices")]
    SourceOutOfRange { vertex: usize, n: usize },
    #[error("hull not initialized")]
    HullNotInitialized,
    #[error("coordinate ({x}, {y}) outside supported range")]
    CoordinateOutOfRange { x: i64, y: i64 },
    #[error("angular delta must lie in (0, pi/8], got {0}")]
    InvalidAngularDelta(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
