//! Sorted-vector multiset answering every query by linear scan.

/// Identity of one stored occurrence: its insertion sequence number.
pub type Occurrence = u64;

#[derive(Clone, Debug)]
struct Entry<T> {
    key: u64,
    seq: u64,
    value: T,
}

/// Ordered multiset kept sorted by `(key, insertion sequence)`.
///
/// Occurrences sharing a key are ordered by insertion, so the "last
/// occurrence" of a key is the most recently inserted one.
#[derive(Clone, Debug)]
pub struct OracleMultiset<T> {
    entries: Vec<Entry<T>>,
    next_seq: u64,
}

impl<T> Default for OracleMultiset<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> OracleMultiset<T> {
    pub fn new() -> Self {
        OracleMultiset {
            entries: Vec::new(),
            next_seq: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, key: u64, value: T) -> Occurrence {
        let seq = self.next_seq;
        self.next_seq += 1;
        let pos = self
            .entries
            .iter()
            .position(|e| (e.key, e.seq) > (key, seq))
            .unwrap_or(self.entries.len());
        self.entries.insert(pos, Entry { key, seq, value });
        seq
    }

    fn position(&self, occ: Occurrence) -> Option<usize> {
        self.entries.iter().position(|e| e.seq == occ)
    }

    /// Removes an occurrence, returning its key and value, or `None` if it is
    /// not present.
    pub fn delete(&mut self, occ: Occurrence) -> Option<(u64, T)> {
        let pos = self.position(occ)?;
        let e = self.entries.remove(pos);
        Some((e.key, e.value))
    }

    /// Last occurrence of the largest key `<= q`.
    pub fn search(&self, q: u64) -> Option<Occurrence> {
        self.entries
            .iter()
            .filter(|e| e.key <= q)
            .last()
            .map(|e| e.seq)
    }

    pub fn minimum(&self) -> Option<Occurrence> {
        self.entries.first().map(|e| e.seq)
    }

    pub fn maximum(&self) -> Option<Occurrence> {
        self.entries.last().map(|e| e.seq)
    }

    pub fn predecessor(&self, occ: Occurrence) -> Option<Occurrence> {
        let pos = self.position(occ)?;
        if pos == 0 {
            None
        } else {
            Some(self.entries[pos - 1].seq)
        }
    }

    pub fn successor(&self, occ: Occurrence) -> Option<Occurrence> {
        let pos = self.position(occ)?;
        self.entries.get(pos + 1).map(|e| e.seq)
    }

    pub fn key(&self, occ: Occurrence) -> Option<u64> {
        self.position(occ).map(|p| self.entries[p].key)
    }

    pub fn value(&self, occ: Occurrence) -> Option<&T> {
        self.position(occ).map(|p| &self.entries[p].value)
    }

    /// All occurrences in order.
    pub fn occurrences(&self) -> Vec<Occurrence> {
        self.entries.iter().map(|e| e.seq).collect()
    }

    /// Distinct keys in increasing order.
    pub fn distinct_keys(&self) -> Vec<u64> {
        let mut keys: Vec<u64> = self.entries.iter().map(|e| e.key).collect();
        keys.dedup();
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_search_is_none() {
        let m: OracleMultiset<()> = OracleMultiset::new();
        assert_eq!(m.search(5), None);
        assert_eq!(m.minimum(), None);
    }

    #[test]
    fn predecessor_by_definition() {
        let mut m = OracleMultiset::new();
        let a = m.insert(2, ());
        let b = m.insert(7, ());
        assert_eq!(m.search(6), Some(a));
        assert_eq!(m.search(7), Some(b));
        assert_eq!(m.search(1), None);
    }

    #[test]
    fn equal_keys_keep_insertion_order() {
        let mut m = OracleMultiset::new();
        let x = m.insert(8, ());
        let lo = m.insert(1, ());
        let y = m.insert(8, ());
        assert_eq!(m.occurrences(), vec![lo, x, y]);
        assert_eq!(m.maximum(), Some(y));
        assert_eq!(m.search(100), Some(y));
        assert_eq!(m.delete(x), Some((8, ())));
        assert_eq!(m.predecessor(y), Some(lo));
    }
}
