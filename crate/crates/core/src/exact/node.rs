//! Recursive tiers of the exact structure.
//!
//! A node at level 0 covers a universe of `b` keys with one bit-vector word.
//! A node at level `j >= 1` covers `b^(2^j)` keys split into a summary and
//! clusters of `b^(2^(j-1))` keys each. Children exist only while the node
//! holds at least two distinct keys; a lone key lives in `min`/`max`.
//!
//! Nodes store distinct keys only. Multiplicity is handled by the buckets
//! of the owning [`VebSet`](super::VebSet).

use std::collections::HashMap;

use crate::word::low_mask;

/// Shape parameters shared by every node of one tower.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Tower {
    log_b: u32,
}

impl Tower {
    pub(crate) fn new(log_b: u32) -> Self {
        Tower { log_b }
    }

    /// Number of low key bits handled by each cluster of a level-`level` node.
    #[inline]
    fn split(self, level: u32) -> u32 {
        self.log_b << (level - 1)
    }

    /// Key bits covered by a node at `level`.
    pub(crate) fn key_bits(self, level: u32) -> u32 {
        self.log_b << level
    }

    /// Smallest level whose universe holds `size` keys.
    pub(crate) fn level_for(self, size: u64) -> u32 {
        let need = 64 - size.saturating_sub(1).leading_zeros();
        let mut level = 0;
        while self.key_bits(level) < need {
            level += 1;
        }
        level
    }
}

/// Where a node looks up "is this local key present?" in O(1).
///
/// Clusters answer through the structure-wide dictionary shifted by their
/// offset. A summary's keys are exactly its parent's occupied cluster
/// indices, so it answers through the parent's cluster map.
pub(crate) enum Members<'a, V> {
    Dictionary(&'a HashMap<u64, V>, u64),
    Clusters(&'a HashMap<u64, Node>, u64),
}

impl<V> Clone for Members<'_, V> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<V> Copy for Members<'_, V> {}

impl<'a, V> Members<'a, V> {
    #[inline]
    fn contains(self, local: u64) -> bool {
        match self {
            Members::Dictionary(d, off) => d.contains_key(&(off + local)),
            Members::Clusters(c, off) => c.contains_key(&(off + local)),
        }
    }

    #[inline]
    fn shifted(self, by: u64) -> Self {
        match self {
            Members::Dictionary(d, off) => Members::Dictionary(d, off + by),
            Members::Clusters(c, off) => Members::Clusters(c, off + by),
        }
    }
}

#[derive(Clone, Debug)]
enum Body {
    Word(u64),
    Split {
        level: u32,
        children: Option<Box<Children>>,
    },
}

#[derive(Clone, Debug)]
struct Children {
    summary: Node,
    clusters: HashMap<u64, Node>,
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    len: u64,
    min: u64,
    max: u64,
    body: Body,
}

/// Counts recursive calls into nodes above the bit-vector tier.
#[derive(Default)]
pub(crate) struct Descents(pub(crate) u32);

impl Descents {
    #[inline]
    fn enter(&mut self, node: &Node) {
        if matches!(node.body, Body::Split { .. }) {
            self.0 += 1;
        }
    }
}

impl Node {
    pub(crate) fn new(level: u32) -> Self {
        let body = if level == 0 {
            Body::Word(0)
        } else {
            Body::Split {
                level,
                children: None,
            }
        };
        Node {
            len: 0,
            min: 0,
            max: 0,
            body,
        }
    }

    fn singleton(level: u32, key: u64) -> Self {
        let mut node = Node::new(level);
        node.len = 1;
        node.min = key;
        node.max = key;
        if let Body::Word(w) = &mut node.body {
            *w = 1 << key;
        }
        node
    }

    /// Largest present key `<= q`.
    pub(crate) fn search<V>(
        &self,
        q: u64,
        members: Members<'_, V>,
        tower: Tower,
        descents: &mut Descents,
    ) -> Option<u64> {
        if self.len == 0 || q < self.min {
            return None;
        }
        if q >= self.max {
            return Some(self.max);
        }
        match &self.body {
            Body::Word(w) => {
                // bits 0..=q, built in two steps so q = 63 does not overflow
                let mask = low_mask(q as u32) | (1 << q);
                Some(63 - (w & mask).leading_zeros() as u64)
            }
            Body::Split { level, children } => {
                let ch = children.as_ref().expect("min < q < max implies two keys");
                if members.contains(q) {
                    return Some(q);
                }
                let s = tower.split(*level);
                let (hi, lo) = (q >> s, q & low_mask(s));
                if let Some(cluster) = ch.clusters.get(&hi) {
                    if lo >= cluster.min {
                        descents.enter(cluster);
                        let found = cluster.search(lo, members.shifted(hi << s), tower, descents);
                        return found.map(|l| (hi << s) | l);
                    }
                }
                // q lies before everything in its own cluster; since q > min,
                // some earlier cluster is occupied
                descents.enter(&ch.summary);
                let k = ch
                    .summary
                    .search::<V>(hi - 1, Members::Clusters(&ch.clusters, 0), tower, descents)
                    .expect("an earlier cluster holds the minimum");
                Some((k << s) | ch.clusters[&k].max)
            }
        }
    }

    /// Inserts a key that is not yet present.
    pub(crate) fn insert(&mut self, x: u64, tower: Tower, descents: &mut Descents) {
        match &mut self.body {
            Body::Word(w) => {
                debug_assert!(*w & (1 << x) == 0);
                *w |= 1 << x;
            }
            Body::Split { level, children } => {
                let level = *level;
                if self.len == 1 {
                    let mut ch = Children::new(level);
                    ch.place_first(self.min, level, tower);
                    ch.insert(x, level, tower, descents);
                    *children = Some(Box::new(ch));
                } else if let Some(ch) = children {
                    ch.insert(x, level, tower, descents);
                }
            }
        }
        if self.len == 0 {
            self.min = x;
            self.max = x;
        } else {
            self.min = self.min.min(x);
            self.max = self.max.max(x);
        }
        self.len += 1;
    }

    /// Deletes a key that is present.
    pub(crate) fn delete(&mut self, x: u64, tower: Tower, descents: &mut Descents) {
        self.len -= 1;
        match &mut self.body {
            Body::Word(w) => {
                debug_assert!(*w & (1 << x) != 0);
                *w &= !(1 << x);
                if *w != 0 {
                    self.min = w.trailing_zeros() as u64;
                    self.max = 63 - w.leading_zeros() as u64;
                }
            }
            Body::Split { level, children } => match self.len {
                0 => {}
                1 => {
                    // back to a lone key: drop the recursive structures
                    *children = None;
                    let rest = if x == self.min { self.max } else { self.min };
                    self.min = rest;
                    self.max = rest;
                }
                _ => {
                    let level = *level;
                    let ch = children.as_mut().expect("three or more keys");
                    ch.delete(x, level, tower, descents);
                    let s = tower.split(level);
                    if x == self.min {
                        let k = ch.summary.min;
                        self.min = (k << s) | ch.clusters[&k].min;
                    }
                    if x == self.max {
                        let k = ch.summary.max;
                        self.max = (k << s) | ch.clusters[&k].max;
                    }
                }
            },
        }
    }

    /// Number of nodes in this subtree, itself included.
    pub(crate) fn node_count(&self) -> usize {
        match &self.body {
            Body::Word(_) => 1,
            Body::Split { children: None, .. } => 1,
            Body::Split {
                children: Some(ch), ..
            } => {
                1 + ch.summary.node_count()
                    + ch.clusters.values().map(Node::node_count).sum::<usize>()
            }
        }
    }

    /// Verifies the structural invariants and returns the keys held, in order.
    pub(crate) fn check(&self, tower: Tower, path: &str) -> Result<Vec<u64>, String> {
        let keys = match &self.body {
            Body::Word(w) => (0..64).filter(|i| w >> i & 1 == 1).collect::<Vec<u64>>(),
            Body::Split {
                children: None, ..
            } => {
                if self.len > 1 {
                    return Err(format!("{path}: {} keys but no children", self.len));
                }
                if self.len == 1 {
                    vec![self.min]
                } else {
                    vec![]
                }
            }
            Body::Split {
                level,
                children: Some(ch),
            } => {
                if self.len < 2 {
                    return Err(format!("{path}: children allocated for {} keys", self.len));
                }
                let s = tower.split(*level);
                let summary = ch.summary.check(tower, &format!("{path}/T"))?;
                let mut occupied: Vec<u64> = ch.clusters.keys().copied().collect();
                occupied.sort_unstable();
                if summary != occupied {
                    return Err(format!("{path}: summary {summary:?} != clusters {occupied:?}"));
                }
                let mut keys = Vec::new();
                for k in occupied {
                    let c = &ch.clusters[&k];
                    if c.len == 0 {
                        return Err(format!("{path}: empty cluster {k}"));
                    }
                    for lo in c.check(tower, &format!("{path}/S{k}"))? {
                        keys.push((k << s) | lo);
                    }
                }
                keys
            }
        };
        if keys.len() as u64 != self.len {
            return Err(format!("{path}: len {} but {} keys", self.len, keys.len()));
        }
        if let (Some(&lo), Some(&hi)) = (keys.first(), keys.last()) {
            if lo != self.min || hi != self.max {
                return Err(format!(
                    "{path}: cached min/max {}/{} but keys span {lo}/{hi}",
                    self.min, self.max
                ));
            }
        }
        Ok(keys)
    }
}

impl Children {
    fn new(level: u32) -> Self {
        Children {
            summary: Node::new(level - 1),
            clusters: HashMap::new(),
        }
    }

    // First key of a fresh child set: T and one S_k both become singletons.
    fn place_first(&mut self, x: u64, level: u32, tower: Tower) {
        let s = tower.split(level);
        let (hi, lo) = (x >> s, x & low_mask(s));
        self.summary = Node::singleton(level - 1, hi);
        self.clusters.insert(hi, Node::singleton(level - 1, lo));
    }

    fn insert(&mut self, x: u64, level: u32, tower: Tower, descents: &mut Descents) {
        let s = tower.split(level);
        let (hi, lo) = (x >> s, x & low_mask(s));
        if let Some(cluster) = self.clusters.get_mut(&hi) {
            descents.enter(cluster);
            cluster.insert(lo, tower, descents);
        } else {
            self.clusters.insert(hi, Node::singleton(level - 1, lo));
            descents.enter(&self.summary);
            self.summary.insert(hi, tower, descents);
        }
    }

    fn delete(&mut self, x: u64, level: u32, tower: Tower, descents: &mut Descents) {
        let s = tower.split(level);
        let (hi, lo) = (x >> s, x & low_mask(s));
        let cluster = self.clusters.get_mut(&hi).expect("key present");
        if cluster.len == 1 {
            self.clusters.remove(&hi);
            descents.enter(&self.summary);
            self.summary.delete(hi, tower, descents);
        } else {
            descents.enter(cluster);
            cluster.delete(lo, tower, descents);
        }
    }
}
