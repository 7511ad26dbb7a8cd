//! Shared generators and the exact-structure/oracle comparison driver.
#![allow(dead_code)]

use std::collections::HashMap;

use approx_veb::exact::{Name, VebSet};
use approx_veb::hull::Point;
use approx_veb::word::{FixedPoint, WordConfig};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use veb_oracles::{Occurrence, OracleMultiset};

#[derive(Clone, Copy, Debug)]
pub enum Op {
    Insert(u64),
    /// Deletes the live occurrence at this index (mod the live count).
    Delete(usize),
    Search(u64),
    Predecessor(usize),
    Successor(usize),
    Extremes,
}

pub fn random_ops(rng: &mut ChaCha8Rng, universe: u64, len: usize) -> Vec<Op> {
    // a small key pool makes duplicates and exact hits common
    let pool: Vec<u64> = (0..8).map(|_| rng.gen_range(0..universe)).collect();
    let key = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            *pool.choose(rng).unwrap()
        } else {
            rng.gen_range(0..universe)
        }
    };
    (0..len)
        .map(|_| match rng.gen_range(0..10) {
            0..=3 => Op::Insert(key(rng)),
            4 | 5 => Op::Delete(rng.gen()),
            6 => Op::Search(key(rng)),
            7 => Op::Predecessor(rng.gen()),
            8 => Op::Successor(rng.gen()),
            _ => Op::Extremes,
        })
        .collect()
}

/// An exact structure and the oracle driven in lockstep.
pub struct Pair {
    pub veb: VebSet<Occurrence>,
    pub oracle: OracleMultiset<()>,
    pub names: HashMap<Occurrence, Name>,
    pub live: Vec<Occurrence>,
}

impl Pair {
    pub fn new(universe: u64, cfg: WordConfig) -> Self {
        Pair {
            veb: VebSet::with_word_config(universe, cfg).unwrap(),
            oracle: OracleMultiset::new(),
            names: HashMap::new(),
            live: Vec::new(),
        }
    }

    fn occ(&self, name: Option<Name>) -> Option<Occurrence> {
        name.map(|n| *self.veb.data(n).unwrap())
    }

    pub fn insert(&mut self, key: u64) {
        let seq = self.oracle.insert(key, ());
        let name = self.veb.insert(key, FixedPoint::from_int(key), seq).unwrap();
        self.names.insert(seq, name);
        self.live.push(seq);
    }

    pub fn delete_occurrence(&mut self, seq: Occurrence) -> Result<(), String> {
        let name = self.names.remove(&seq).ok_or("unknown occurrence")?;
        let (element, datum) = self.veb.delete(name).map_err(|e| e.to_string())?;
        let (key, ()) = self.oracle.delete(seq).ok_or("oracle lost occurrence")?;
        if datum != seq || element != FixedPoint::from_int(key) {
            return Err(format!("delete returned ({element}, {datum}), expected ({key}, {seq})"));
        }
        if self.veb.delete(name).is_ok() {
            return Err("deleted name still valid".into());
        }
        self.live.retain(|&s| s != seq);
        Ok(())
    }

    pub fn apply(&mut self, op: Op) -> Result<(), String> {
        match op {
            Op::Insert(k) => self.insert(k),
            Op::Delete(i) => {
                if !self.live.is_empty() {
                    let seq = self.live[i % self.live.len()];
                    self.delete_occurrence(seq)?;
                }
            }
            Op::Search(q) => self.check_search(q)?,
            Op::Predecessor(i) | Op::Successor(i) => {
                if !self.live.is_empty() {
                    self.check_neighbours(self.live[i % self.live.len()])?;
                }
            }
            Op::Extremes => self.check_extremes()?,
        }
        if self.veb.len() != self.oracle.len() {
            return Err(format!("len {} != {}", self.veb.len(), self.oracle.len()));
        }
        Ok(())
    }

    pub fn check_search(&self, q: u64) -> Result<(), String> {
        let got = self.occ(self.veb.search(q));
        let want = self.oracle.search(q);
        if got != want {
            return Err(format!("search({q}) gave {got:?}, oracle {want:?}"));
        }
        Ok(())
    }

    pub fn check_neighbours(&self, seq: Occurrence) -> Result<(), String> {
        let name = self.names[&seq];
        let pred = self.occ(self.veb.predecessor(name).unwrap());
        let succ = self.occ(self.veb.successor(name).unwrap());
        if pred != self.oracle.predecessor(seq) || succ != self.oracle.successor(seq) {
            return Err(format!("neighbours of occurrence {seq} gave ({pred:?}, {succ:?})"));
        }
        Ok(())
    }

    pub fn check_extremes(&self) -> Result<(), String> {
        let got = (self.occ(self.veb.minimum()), self.occ(self.veb.maximum()));
        let want = (self.oracle.minimum(), self.oracle.maximum());
        if got != want {
            return Err(format!("extremes {got:?}, oracle {want:?}"));
        }
        Ok(())
    }

    /// Every query against every key and occurrence, plus the structural check.
    pub fn check_all(&self, universe: u64) -> Result<(), String> {
        self.veb.check_structure()?;
        for q in 0..universe {
            self.check_search(q)?;
        }
        for &seq in &self.live {
            self.check_neighbours(seq)?;
        }
        self.check_extremes()
    }
}

/// Runs one operation sequence, comparing every answer with the oracle.
pub fn run_sequence(universe: u64, cfg: WordConfig, ops: &[Op]) -> Result<(), String> {
    let mut pair = Pair::new(universe, cfg);
    for (i, &op) in ops.iter().enumerate() {
        pair.apply(op).map_err(|e| format!("op {i} ({op:?}): {e}"))?;
    }
    pair.veb.check_structure()
}

/// Explores every sequence of at most `depth` inserts and deletions (of the
/// first or the last occurrence of a key) over `0..universe`.
///
/// States are merged by key multiset: the tower is canonical for its key set
/// (which `check_all` verifies on each new state) and occurrences of one key
/// leave in insertion order, so two histories with the same multiset behave
/// identically from then on. Returns the number of distinct states checked.
pub fn exhaustive(universe: u64, cfg: WordConfig, depth: usize) -> Result<usize, String> {
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let root = Pair::new(universe, cfg);
    root.check_all(universe)?;
    seen.insert(vec![0; universe as usize], ());
    let mut frontier = vec![(vec![0u8; universe as usize], root)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (counts, pair) in &frontier {
            for k in 0..universe {
                let mut moves: Vec<Option<bool>> = vec![None];
                if counts[k as usize] > 0 {
                    moves = vec![Some(true), Some(false)];
                    moves.push(None);
                }
                for mv in moves {
                    let mut child_counts = counts.clone();
                    match mv {
                        None => child_counts[k as usize] += 1,
                        Some(_) => child_counts[k as usize] -= 1,
                    }
                    let fresh = !seen.contains_key(&child_counts);
                    let mut child = Pair {
                        veb: pair.veb.clone(),
                        oracle: pair.oracle.clone(),
                        names: pair.names.clone(),
                        live: pair.live.clone(),
                    };
                    match mv {
                        None => child.insert(k),
                        Some(first) => {
                            let occs: Vec<Occurrence> = child
                                .oracle
                                .occurrences()
                                .into_iter()
                                .filter(|&o| child.oracle.key(o) == Some(k))
                                .collect();
                            let seq = if first { occs[0] } else { *occs.last().unwrap() };
                            child.delete_occurrence(seq)?;
                        }
                    }
                    if fresh {
                        child
                            .check_all(universe)
                            .map_err(|e| format!("state {child_counts:?}: {e}"))?;
                        seen.insert(child_counts.clone(), ());
                        next.push((child_counts, child));
                    } else if child.veb.len() != child.oracle.len() {
                        return Err(format!("state {child_counts:?}: length mismatch"));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(seen.len())
}

/// Random connected undirected graph: a random spanning tree plus extra edges.
pub fn connected_graph(rng: &mut ChaCha8Rng, n: usize, max_w: u64) -> Vec<(usize, usize, u64)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((parent, order[i], rng.gen_range(1..=max_w)));
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v, rng.gen_range(1..=max_w)));
        }
    }
    edges
}

/// Random directed graph; not necessarily strongly connected.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, max_w: u64) -> Vec<(usize, usize, u64)> {
    let m = rng.gen_range(0..=4 * n);
    (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(1..=max_w)))
        .collect()
}

/// Random point stream drawn from one of several shapes.
pub fn point_stream(rng: &mut ChaCha8Rng, len: usize) -> Vec<Point> {
    let r = 1_000_000f64;
    let shape = rng.gen_range(0..4);
    (0..len)
        .map(|_| {
            let (x, y) = match shape {
                // uniform square
                0 => (rng.gen_range(-r..r), rng.gen_range(-r..r)),
                // uniform disk
                1 => loop {
                    let (x, y) = (rng.gen_range(-r..r), rng.gen_range(-r..r));
                    if x * x + y * y <= r * r {
                        break (x, y);
                    }
                },
                // near a circle: almost every point is a hull vertex
                2 => {
                    let t = rng.gen_range(0.0..std::f64::consts::TAU);
                    let rad = r * rng.gen_range(0.98..1.0);
                    (rad * t.cos(), rad * t.sin())
                }
                // small integer grid, full of ties and collinear triples
                _ => (rng.gen_range(-20..=20) as f64, rng.gen_range(-20..=20) as f64),
            };
            Point::new(x as i64, y as i64)
        })
        .collect()
}

pub fn as_pairs(points: &[Point]) -> Vec<(i64, i64)> {
    points.iter().map(|p| (p.x, p.y)).collect()
}
