//! Approximate ordered multisets and a priority-queue adapter.
//!
//! An [`ApproxVeb`] maps each element through a [`Mapping`] and stores it in
//! an exact [`VebSet`] over the reduced universe. Every answer is exactly
//! what the exact structure gives on the mapped keys; the original element
//! is kept alongside so [`ApproxVeb::element`] returns the true value.

use crate::error::{Error, Result};
use crate::exact::{DescentStats, Name, VebSet};
use crate::mapping::{AdditiveMap, KeyMap, MappedKey, MultiplicativeMap};
use crate::word::{FixedPoint, WordConfig};

/// The universe reduction used by an [`ApproxVeb`].
#[derive(Clone, Debug, PartialEq)]
pub enum Mapping {
    Multiplicative(MultiplicativeMap),
    Additive(AdditiveMap),
}

impl Mapping {
    fn as_map(&self) -> &dyn KeyMap {
        match self {
            Mapping::Multiplicative(m) => m,
            Mapping::Additive(m) => m,
        }
    }

    pub fn map(&self, x: FixedPoint) -> Result<MappedKey> {
        self.as_map().map(x)
    }

    pub fn reduced_universe_size(&self) -> u64 {
        self.as_map().reduced_universe_size()
    }

    pub fn universe_max(&self) -> FixedPoint {
        self.as_map().universe_max()
    }

    pub fn universe_min(&self) -> FixedPoint {
        self.as_map().universe_min()
    }

    pub fn word_config(&self) -> WordConfig {
        self.as_map().word_config()
    }

    /// Key for an arbitrary query value: `None` below the universe, the key
    /// of the universe maximum above it.
    pub fn query_key(&self, x: FixedPoint) -> Option<MappedKey> {
        if x < self.universe_min() {
            None
        } else if x > self.universe_max() {
            self.map(self.universe_max()).ok()
        } else {
            self.map(x).ok()
        }
    }
}

/// Approximate van Emde Boas multiset.
///
/// ```
/// use approx_veb::ApproxVeb;
/// use approx_veb::word::FixedPoint;
///
/// // with epsilon = 1 only the most significant bit of each key matters
/// let mut s = ApproxVeb::multiplicative(1.0, FixedPoint::from_int(1 << 20)).unwrap();
/// let five = s.insert(FixedPoint::from_int(5), 'a').unwrap();
/// assert_eq!(s.search(FixedPoint::from_int(7)), Some(five));
/// assert_eq!(s.element(five).unwrap(), FixedPoint::from_int(5));
/// ```
#[derive(Clone, Debug)]
pub struct ApproxVeb<D> {
    mapping: Mapping,
    core: VebSet<D>,
}

impl<D> ApproxVeb<D> {
    pub fn new(mapping: Mapping) -> Result<Self> {
        let core =
            VebSet::with_word_config(mapping.reduced_universe_size(), mapping.word_config())?;
        Ok(ApproxVeb { mapping, core })
    }

    /// Multiplicative `(1 + epsilon)` variant over `[1, universe_max]`.
    pub fn multiplicative(epsilon: f64, universe_max: FixedPoint) -> Result<Self> {
        let map = MultiplicativeMap::new(epsilon, universe_max, WordConfig::default())?;
        Self::new(Mapping::Multiplicative(map))
    }

    /// Additive `delta` variant over `[0, universe_max]`.
    pub fn additive(delta: FixedPoint, universe_max: FixedPoint) -> Result<Self> {
        let map = AdditiveMap::new(delta, universe_max, WordConfig::default())?;
        Self::new(Mapping::Additive(map))
    }

    pub fn mapping(&self) -> &Mapping {
        &self.mapping
    }

    /// The exact structure over mapped keys.
    pub fn exact(&self) -> &VebSet<D> {
        &self.core
    }

    pub fn len(&self) -> usize {
        self.core.len()
    }

    pub fn is_empty(&self) -> bool {
        self.core.is_empty()
    }

    pub fn insert(&mut self, x: FixedPoint, datum: D) -> Result<Name> {
        let key = self.mapping.map(x)?;
        self.core.insert(key.get(), x, datum)
    }

    pub fn delete(&mut self, name: Name) -> Result<(FixedPoint, D)> {
        self.core.delete(name)
    }

    /// Name of an occurrence whose mapped key is the largest one not above
    /// the key of `x`.
    pub fn search(&self, x: FixedPoint) -> Option<Name> {
        let key = self.mapping.query_key(x)?;
        self.core.search(key.get())
    }

    pub fn minimum(&self) -> Option<Name> {
        self.core.minimum()
    }

    pub fn maximum(&self) -> Option<Name> {
        self.core.maximum()
    }

    pub fn predecessor(&self, name: Name) -> Result<Option<Name>> {
        self.core.predecessor(name)
    }

    pub fn successor(&self, name: Name) -> Result<Option<Name>> {
        self.core.successor(name)
    }

    /// The original, unmapped element.
    pub fn element(&self, name: Name) -> Result<FixedPoint> {
        self.core.element(name)
    }

    pub fn data(&self, name: Name) -> Result<&D> {
        self.core.data(name)
    }

    pub fn key(&self, name: Name) -> Result<MappedKey> {
        self.core.key(name).map(MappedKey)
    }

    pub fn stats(&self) -> DescentStats {
        self.core.stats()
    }
}

/// Min-priority queue with integer priorities, as consumed by the graph
/// algorithms.
pub trait PriorityQueue<T> {
    type Handle: Copy;

    fn push(&mut self, priority: u64, item: T) -> Result<Self::Handle>;

    fn remove(&mut self, handle: Self::Handle) -> Result<(u64, T)>;

    /// Removes an entry whose priority is minimal up to the queue's error.
    fn pop_min(&mut self) -> Result<(u64, T)>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Priority queue over an [`ApproxVeb`]. `extract_min` removes the first
/// occurrence of the smallest mapped key, so equal keys leave in insertion
/// order.
#[derive(Clone, Debug)]
pub struct ApproxPq<T> {
    veb: ApproxVeb<T>,
}

impl<T> ApproxPq<T> {
    pub fn new(veb: ApproxVeb<T>) -> Self {
        ApproxPq { veb }
    }

    /// Exact queue over integer priorities in `[0, max_priority]`.
    pub fn exact(max_priority: u64) -> Result<Self> {
        let top = FixedPoint::from_int(max_priority.max(1));
        ApproxVeb::additive(FixedPoint::ONE, top).map(Self::new)
    }

    /// Queue with multiplicative error `1 + epsilon` over priorities in
    /// `[1, max_priority]`.
    pub fn multiplicative(epsilon: f64, max_priority: u64) -> Result<Self> {
        let top = FixedPoint::from_int(max_priority.max(1));
        ApproxVeb::multiplicative(epsilon, top).map(Self::new)
    }

    pub fn insert(&mut self, priority: FixedPoint, item: T) -> Result<Name> {
        self.veb.insert(priority, item)
    }

    pub fn delete(&mut self, name: Name) -> Result<(FixedPoint, T)> {
        self.veb.delete(name)
    }

    pub fn extract_min(&mut self) -> Result<(FixedPoint, T)> {
        let name = self.veb.minimum().ok_or(Error::Empty)?;
        self.veb.delete(name)
    }

    pub fn peek_min(&self) -> Option<(FixedPoint, &T)> {
        let name = self.veb.minimum()?;
        Some((self.veb.element(name).ok()?, self.veb.data(name).ok()?))
    }

    pub fn veb(&self) -> &ApproxVeb<T> {
        &self.veb
    }

    pub fn stats(&self) -> DescentStats {
        self.veb.stats()
    }
}

impl<T> PriorityQueue<T> for ApproxPq<T> {
    type Handle = Name;

    fn push(&mut self, priority: u64, item: T) -> Result<Name> {
        self.insert(FixedPoint::from_int(priority), item)
    }

    fn remove(&mut self, handle: Name) -> Result<(u64, T)> {
        self.delete(handle).map(|(p, t)| (p.int_part, t))
    }

    fn pop_min(&mut self) -> Result<(u64, T)> {
        self.extract_min().map(|(p, t)| (p.int_part, t))
    }

    fn len(&self) -> usize {
        self.veb.len()
    }
}
