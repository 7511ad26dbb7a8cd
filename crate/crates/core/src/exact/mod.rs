//! Exact ordered multiset over an integer universe.
//!
//! [`VebSet`] combines three pieces:
//!
//! * a doubly-linked list of buckets in key order, each bucket a
//!   doubly-linked list of occurrences in insertion order;
//! * a dictionary from key to bucket;
//! * a recursive van Emde Boas tower over the distinct keys, used only to
//!   locate the predecessor of a key that is not in the dictionary.
//!
//! Minimum, maximum, predecessor and successor follow list links and take
//! constant time. Search, and the tower updates done by insert and delete,
//! make at most one non-constant-time recursive call per tower level.

mod node;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::word::{FixedPoint, WordConfig};
use node::{Descents, Members, Node, Tower};

/// Handle to one stored occurrence.
///
/// A name stays valid until the occurrence is deleted; afterwards every
/// accessor reports [`Error::StaleName`]. Names are only meaningful for the
/// structure that issued them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Name {
    slot: u32,
    generation: u32,
}

#[derive(Clone, Debug)]
struct Occurrence<D> {
    element: FixedPoint,
    datum: D,
    bucket: u32,
    prev: Option<u32>,
    next: Option<u32>,
}

#[derive(Clone, Debug)]
struct Slot<D> {
    generation: u32,
    occupant: Option<Occurrence<D>>,
}

#[derive(Clone, Debug)]
struct Bucket {
    key: u64,
    first: u32,
    last: u32,
    len: u32,
    prev: Option<u32>,
    next: Option<u32>,
}

/// Recursion counters exposed for benchmarking.
///
/// A *pass* is one walk down the tower: a search, or the update half of an
/// insert or delete that adds or removes a distinct key. A *descent* is a
/// recursive call into a node above the single-word tier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DescentStats {
    pub passes: u64,
    pub descents: u64,
    pub max_descents: u64,
    pub last_descents: u64,
}

#[derive(Debug, Default)]
struct Counters {
    passes: AtomicU64,
    descents: AtomicU64,
    max: AtomicU64,
    last: AtomicU64,
}

impl Counters {
    fn record(&self, d: Descents) {
        let d = d.0 as u64;
        self.passes.fetch_add(1, Ordering::Relaxed);
        self.descents.fetch_add(d, Ordering::Relaxed);
        self.max.fetch_max(d, Ordering::Relaxed);
        self.last.store(d, Ordering::Relaxed);
    }

    fn snapshot(&self) -> DescentStats {
        DescentStats {
            passes: self.passes.load(Ordering::Relaxed),
            descents: self.descents.load(Ordering::Relaxed),
            max_descents: self.max.load(Ordering::Relaxed),
            last_descents: self.last.load(Ordering::Relaxed),
        }
    }

    fn reset(&self) {
        for c in [&self.passes, &self.descents, &self.max, &self.last] {
            c.store(0, Ordering::Relaxed);
        }
    }
}

impl Clone for Counters {
    fn clone(&self) -> Self {
        let s = self.snapshot();
        Counters {
            passes: AtomicU64::new(s.passes),
            descents: AtomicU64::new(s.descents),
            max: AtomicU64::new(s.max_descents),
            last: AtomicU64::new(s.last_descents),
        }
    }
}

/// Exact ordered multiset of integer keys in `{0, .., universe - 1}`, each
/// occurrence carrying an element and a datum.
///
/// ```
/// use approx_veb::exact::VebSet;
/// use approx_veb::word::FixedPoint;
///
/// let mut set = VebSet::new(1 << 20).unwrap();
/// let two = set.insert(2, FixedPoint::from_int(2), "two").unwrap();
/// let seven = set.insert(7, FixedPoint::from_int(7), "seven").unwrap();
/// assert_eq!(set.search(6), Some(two));
/// assert_eq!(set.search(7), Some(seven));
/// assert_eq!(set.search(1), None);
/// assert_eq!(set.successor(two).unwrap(), Some(seven));
/// ```
#[derive(Clone, Debug)]
pub struct VebSet<D> {
    cfg: WordConfig,
    universe: u64,
    tower: Tower,
    levels: u32,
    root: Node,
    dictionary: HashMap<u64, u32>,
    buckets: Vec<Option<Bucket>>,
    free_buckets: Vec<u32>,
    slots: Vec<Slot<D>>,
    free_slots: Vec<u32>,
    head: Option<u32>,
    tail: Option<u32>,
    len: usize,
    counters: Counters,
}

impl<D> VebSet<D> {
    /// Empty set over `{0, .., universe - 1}` with 64-bit words.
    pub fn new(universe: u64) -> Result<Self> {
        Self::with_word_config(universe, WordConfig::default())
    }

    pub fn with_word_config(universe: u64, cfg: WordConfig) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidUniverse);
        }
        let tower = Tower::new(cfg.log_bits());
        let levels = tower.level_for(universe);
        Ok(VebSet {
            cfg,
            universe,
            tower,
            levels,
            root: Node::new(levels),
            dictionary: HashMap::new(),
            buckets: Vec::new(),
            free_buckets: Vec::new(),
            slots: Vec::new(),
            free_slots: Vec::new(),
            head: None,
            tail: None,
            len: 0,
            counters: Counters::default(),
        })
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn word_config(&self) -> WordConfig {
        self.cfg
    }

    /// Level `j` of the root, whose universe is `b^(2^j)` keys. Every pass
    /// makes at most `j - 1` descents, or none when `j = 0`.
    pub fn tower_levels(&self) -> u32 {
        self.levels
    }

    /// Number of stored occurrences.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct keys.
    pub fn distinct_len(&self) -> usize {
        self.dictionary.len()
    }

    pub fn stats(&self) -> DescentStats {
        self.counters.snapshot()
    }

    pub fn reset_stats(&self) {
        self.counters.reset()
    }

    fn bucket(&self, b: u32) -> &Bucket {
        self.buckets[b as usize].as_ref().expect("live bucket")
    }

    fn bucket_mut(&mut self, b: u32) -> &mut Bucket {
        self.buckets[b as usize].as_mut().expect("live bucket")
    }

    fn occurrence(&self, name: Name) -> Result<&Occurrence<D>> {
        match self.slots.get(name.slot as usize) {
            Some(Slot {
                generation,
                occupant: Some(occ),
            }) if *generation == name.generation => Ok(occ),
            _ => Err(Error::StaleName),
        }
    }

    fn name_of(&self, slot: u32) -> Name {
        Name {
            slot,
            generation: self.slots[slot as usize].generation,
        }
    }

    fn occ_at(&self, slot: u32) -> &Occurrence<D> {
        self.slots[slot as usize].occupant.as_ref().expect("live slot")
    }

    fn occ_at_mut(&mut self, slot: u32) -> &mut Occurrence<D> {
        self.slots[slot as usize].occupant.as_mut().expect("live slot")
    }

    fn alloc_slot(&mut self, occ: Occurrence<D>) -> u32 {
        if let Some(s) = self.free_slots.pop() {
            self.slots[s as usize].occupant = Some(occ);
            s
        } else {
            self.slots.push(Slot {
                generation: 0,
                occupant: Some(occ),
            });
            (self.slots.len() - 1) as u32
        }
    }

    fn alloc_bucket(&mut self, bucket: Bucket) -> u32 {
        if let Some(b) = self.free_buckets.pop() {
            self.buckets[b as usize] = Some(bucket);
            b
        } else {
            self.buckets.push(Some(bucket));
            (self.buckets.len() - 1) as u32
        }
    }

    // Largest present key <= q, through the tower.
    fn search_key(&self, q: u64) -> Option<u64> {
        let mut d = Descents::default();
        let found = self.root.search(
            q,
            Members::Dictionary(&self.dictionary, 0),
            self.tower,
            &mut d,
        );
        self.counters.record(d);
        found
    }

    /// Adds an occurrence of `key` carrying `element` and `datum`.
    ///
    /// A key seen for the first time gets a new bucket spliced in after its
    /// predecessor's bucket; otherwise the occurrence is appended to the
    /// existing bucket.
    pub fn insert(&mut self, key: u64, element: FixedPoint, datum: D) -> Result<Name> {
        if key >= self.universe {
            return Err(Error::KeyOutOfRange {
                key,
                size: self.universe as u128,
            });
        }
        let occ = Occurrence {
            element,
            datum,
            bucket: 0,
            prev: None,
            next: None,
        };
        let slot = self.alloc_slot(occ);
        if let Some(&b) = self.dictionary.get(&key) {
            let last = self.bucket(b).last;
            {
                let o = self.occ_at_mut(slot);
                o.bucket = b;
                o.prev = Some(last);
            }
            self.occ_at_mut(last).next = Some(slot);
            let bucket = self.bucket_mut(b);
            bucket.last = slot;
            bucket.len += 1;
        } else {
            let pred = self.search_key(key).map(|k| self.dictionary[&k]);
            let next = match pred {
                Some(p) => self.bucket(p).next,
                None => self.head,
            };
            let b = self.alloc_bucket(Bucket {
                key,
                first: slot,
                last: slot,
                len: 1,
                prev: pred,
                next,
            });
            match pred {
                Some(p) => self.bucket_mut(p).next = Some(b),
                None => self.head = Some(b),
            }
            match next {
                Some(n) => self.bucket_mut(n).prev = Some(b),
                None => self.tail = Some(b),
            }
            self.occ_at_mut(slot).bucket = b;
            self.dictionary.insert(key, b);
            let mut d = Descents::default();
            self.root.insert(key, self.tower, &mut d);
            self.counters.record(d);
        }
        self.len += 1;
        Ok(self.name_of(slot))
    }

    /// Removes an occurrence, returning its element and datum.
    pub fn delete(&mut self, name: Name) -> Result<(FixedPoint, D)> {
        self.occurrence(name)?;
        let slot = name.slot;
        let entry = &mut self.slots[slot as usize];
        entry.generation = entry.generation.wrapping_add(1);
        let occ = entry.occupant.take().expect("checked live");
        self.free_slots.push(slot);
        self.len -= 1;

        match occ.prev {
            Some(p) => self.occ_at_mut(p).next = occ.next,
            None => {
                if let Some(n) = occ.next {
                    self.bucket_mut(occ.bucket).first = n;
                }
            }
        }
        match occ.next {
            Some(n) => self.occ_at_mut(n).prev = occ.prev,
            None => {
                if let Some(p) = occ.prev {
                    self.bucket_mut(occ.bucket).last = p;
                }
            }
        }
        let bucket = self.bucket_mut(occ.bucket);
        bucket.len -= 1;
        if bucket.len == 0 {
            let Bucket { key, prev, next, .. } = *bucket;
            match prev {
                Some(p) => self.bucket_mut(p).next = next,
                None => self.head = next,
            }
            match next {
                Some(n) => self.bucket_mut(n).prev = prev,
                None => self.tail = prev,
            }
            self.buckets[occ.bucket as usize] = None;
            self.free_buckets.push(occ.bucket);
            self.dictionary.remove(&key);
            let mut d = Descents::default();
            self.root.delete(key, self.tower, &mut d);
            self.counters.record(d);
        }
        Ok((occ.element, occ.datum))
    }

    /// Name of the last occurrence of the largest key `<= q`, or `None` if
    /// the set is empty or every key exceeds `q`.
    pub fn search(&self, q: u64) -> Option<Name> {
        let q = q.min(self.universe - 1);
        let key = if let Some(&b) = self.dictionary.get(&q) {
            return Some(self.name_of(self.bucket(b).last));
        } else {
            self.search_key(q)?
        };
        let b = self.dictionary[&key];
        Some(self.name_of(self.bucket(b).last))
    }

    /// First occurrence of the smallest key.
    pub fn minimum(&self) -> Option<Name> {
        self.head.map(|b| self.name_of(self.bucket(b).first))
    }

    /// Last occurrence of the largest key.
    pub fn maximum(&self) -> Option<Name> {
        self.tail.map(|b| self.name_of(self.bucket(b).last))
    }

    /// Previous occurrence in list order: earlier in the same bucket, else
    /// the last occurrence of the previous bucket.
    pub fn predecessor(&self, name: Name) -> Result<Option<Name>> {
        let occ = self.occurrence(name)?;
        Ok(match occ.prev {
            Some(p) => Some(self.name_of(p)),
            None => self
                .bucket(occ.bucket)
                .prev
                .map(|b| self.name_of(self.bucket(b).last)),
        })
    }

    /// Next occurrence in list order.
    pub fn successor(&self, name: Name) -> Result<Option<Name>> {
        let occ = self.occurrence(name)?;
        Ok(match occ.next {
            Some(n) => Some(self.name_of(n)),
            None => self
                .bucket(occ.bucket)
                .next
                .map(|b| self.name_of(self.bucket(b).first)),
        })
    }

    pub fn element(&self, name: Name) -> Result<FixedPoint> {
        self.occurrence(name).map(|o| o.element)
    }

    pub fn data(&self, name: Name) -> Result<&D> {
        self.occurrence(name).map(|o| &o.datum)
    }

    pub fn data_mut(&mut self, name: Name) -> Result<&mut D> {
        self.occurrence(name)?;
        Ok(&mut self.occ_at_mut(name.slot).datum)
    }

    /// Key the occurrence is filed under.
    pub fn key(&self, name: Name) -> Result<u64> {
        let occ = self.occurrence(name)?;
        Ok(self.bucket(occ.bucket).key)
    }

    pub fn contains_key(&self, key: u64) -> bool {
        self.dictionary.contains_key(&key)
    }

    /// Occurrences of one key, in insertion order.
    pub fn bucket_len(&self, key: u64) -> usize {
        self.dictionary
            .get(&key)
            .map_or(0, |&b| self.bucket(b).len as usize)
    }

    /// Names of all occurrences in list order.
    pub fn iter(&self) -> Iter<'_, D> {
        Iter {
            set: self,
            cursor: self.minimum(),
        }
    }

    /// Allocated tower nodes plus buckets.
    pub fn node_count(&self) -> usize {
        self.root.node_count() + self.dictionary.len()
    }

    /// Checks every structural invariant, returning a description of the
    /// first violation. Intended for tests and debugging; it walks the whole
    /// structure.
    pub fn check_structure(&self) -> std::result::Result<(), String> {
        let tower_keys = self.root.check(self.tower, "root")?;
        let mut list_keys = Vec::new();
        let mut count = 0usize;
        let mut prev_bucket = None;
        let mut cursor = self.head;
        while let Some(b) = cursor {
            let bucket = self.bucket(b);
            if bucket.prev != prev_bucket {
                return Err(format!("bucket {} has a broken back link", bucket.key));
            }
            if self.dictionary.get(&bucket.key) != Some(&b) {
                return Err(format!("bucket {} missing from dictionary", bucket.key));
            }
            let mut n = 0;
            let mut prev = None;
            let mut occ = Some(bucket.first);
            while let Some(s) = occ {
                let o = self.occ_at(s);
                if o.bucket != b || o.prev != prev {
                    return Err(format!("occurrence links broken in bucket {}", bucket.key));
                }
                prev = Some(s);
                occ = o.next;
                n += 1;
            }
            if n != bucket.len || prev != Some(bucket.last) || n == 0 {
                return Err(format!("bucket {} length mismatch", bucket.key));
            }
            count += n as usize;
            list_keys.push(bucket.key);
            prev_bucket = Some(b);
            cursor = bucket.next;
        }
        if prev_bucket != self.tail {
            return Err("tail does not match last bucket".into());
        }
        if list_keys.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("bucket list not increasing: {list_keys:?}"));
        }
        if list_keys != tower_keys {
            return Err(format!("list keys {list_keys:?} != tower keys {tower_keys:?}"));
        }
        if list_keys.len() != self.dictionary.len() || count != self.len {
            return Err("dictionary or length out of sync".into());
        }
        Ok(())
    }
}

/// Iterator over names in list order.
pub struct Iter<'a, D> {
    set: &'a VebSet<D>,
    cursor: Option<Name>,
}

impl<D> Iterator for Iter<'_, D> {
    type Item = Name;

    fn next(&mut self) -> Option<Name> {
        let current = self.cursor?;
        self.cursor = self.set.successor(current).ok().flatten();
        Some(current)
    }
}
