use std::collections::HashMap;

use approx_veb::approx::{ApproxPq, ApproxVeb};
use approx_veb::word::{FixedPoint, WordConfig};
use approx_veb::Name;
use proptest::prelude::*;
use veb_oracles::OracleMultiset;

const TOP: u64 = 1 << 40;

fn fp(scaled: u128) -> FixedPoint {
    FixedPoint::from_scaled(scaled, WordConfig::default()).unwrap()
}

fn ratio(a: FixedPoint, b: FixedPoint) -> f64 {
    let cfg = WordConfig::default();
    a.to_f64(cfg) / b.to_f64(cfg)
}

#[derive(Clone, Debug)]
enum Op {
    Insert(u128),
    Delete(usize),
    Search(u128),
}

fn ops(lo: u128, hi: u128) -> impl Strategy<Value = Vec<Op>> {
    prop::collection::vec(
        prop_oneof![
            3 => (lo..=hi).prop_map(Op::Insert),
            1 => any::<usize>().prop_map(Op::Delete),
            2 => (lo..=hi).prop_map(Op::Search),
        ],
        0..120,
    )
}

/// Drives an approximate structure next to an oracle over pre-mapped keys and
/// checks every answer, plus the per-query error bound `within`.
fn run(
    veb: &mut ApproxVeb<u64>,
    ops: &[Op],
    within: impl Fn(FixedPoint, FixedPoint) -> bool,
) -> Result<(), TestCaseError> {
    let mut oracle = OracleMultiset::new();
    let mut names: HashMap<u64, Name> = HashMap::new();
    let mut live: Vec<(u64, FixedPoint)> = Vec::new();
    for op in ops {
        match *op {
            Op::Insert(x) => {
                let x = fp(x);
                let key = veb.mapping().map(x).unwrap().get();
                let seq = oracle.insert(key, x);
                names.insert(seq, veb.insert(x, seq).unwrap());
                live.push((seq, x));
            }
            Op::Delete(i) if !live.is_empty() => {
                let (seq, x) = live.remove(i % live.len());
                let (element, datum) = veb.delete(names[&seq]).unwrap();
                prop_assert_eq!((element, datum), (x, seq));
                oracle.delete(seq).unwrap();
            }
            Op::Delete(_) => {}
            Op::Search(x) => {
                let x = fp(x);
                let key = veb.mapping().map(x).unwrap().get();
                let got = veb.search(x).map(|n| *veb.data(n).unwrap());
                prop_assert_eq!(got, oracle.search(key));
                if let Some(seq) = got {
                    let y = *oracle.value(seq).unwrap();
                    prop_assert!(within(y, x), "answer {} too far above query {}", y, x);
                    for &(_, z) in live.iter().filter(|(_, z)| *z <= x) {
                        prop_assert!(within(z, y), "stored {} far above answer {}", z, y);
                    }
                } else {
                    prop_assert!(live.iter().all(|&(_, z)| veb.mapping().map(z).unwrap().get() > key));
                }
            }
        }
        prop_assert_eq!(veb.len(), oracle.len());
    }
    Ok(())
}

proptest! {
    #[test]
    fn multiplicative_matches_premapped_oracle(
        k in prop::sample::select(vec![0u32, 1, 4, 8]),
        ops in ops(1 << 64, (TOP as u128) << 64),
    ) {
        let eps = 0.5f64.powi(k as i32);
        let mut veb = ApproxVeb::multiplicative(eps, FixedPoint::from_int(TOP)).unwrap();
        run(&mut veb, &ops, |y, x| ratio(y, x) <= 1.0 + eps + 1e-12)?;
    }

    #[test]
    fn additive_matches_premapped_oracle(
        delta in prop::sample::select(vec![1u64, 3, TOP >> 8]),
        ops in ops(0, (TOP as u128) << 64),
    ) {
        let d = FixedPoint::from_int(delta);
        let mut veb = ApproxVeb::additive(d, FixedPoint::from_int(TOP)).unwrap();
        let cfg = WordConfig::default();
        let dd = d.to_scaled(cfg);
        run(&mut veb, &ops, |y, x| y.to_scaled(cfg) < x.to_scaled(cfg) + dd)?;
    }

    #[test]
    fn extract_min_within_factor(
        k in prop::sample::select(vec![0u32, 2, 6]),
        steps in prop::collection::vec((any::<bool>(), 1u64..1_000_000), 1..200),
    ) {
        let eps = 0.5f64.powi(k as i32);
        let mut pq = ApproxPq::multiplicative(eps, 1_000_000).unwrap();
        let mut heap = std::collections::BinaryHeap::new();
        for (push, p) in steps {
            if push || heap.is_empty() {
                pq.insert(FixedPoint::from_int(p), p).unwrap();
                heap.push(std::cmp::Reverse(p));
            } else {
                let (got, item) = pq.extract_min().unwrap();
                prop_assert_eq!(got.int_part, item);
                let least = heap.peek().unwrap().0;
                prop_assert!(item as f64 <= (1.0 + eps) * least as f64);
                // drop the extracted value from the reference heap
                let mut rest: Vec<u64> = heap.into_iter().map(|r| r.0).collect();
                let at = rest.iter().position(|&v| v == item).unwrap();
                rest.swap_remove(at);
                heap = rest.into_iter().map(std::cmp::Reverse).collect();
            }
        }
    }
}

#[test]
fn ties_leave_in_insertion_order() {
    let mut pq = ApproxPq::multiplicative(1.0, 100).unwrap();
    // 13 and 9 share the bucket [8, 16), 5 and 4 share [4, 8)
    for (p, tag) in [(13, 'a'), (5, 'b'), (9, 'c'), (4, 'd')] {
        pq.insert(FixedPoint::from_int(p), tag).unwrap();
    }
    let order: Vec<char> = std::iter::from_fn(|| pq.extract_min().ok().map(|(_, t)| t)).collect();
    assert_eq!(order, vec!['b', 'd', 'a', 'c']);
}

#[test]
fn queries_outside_the_domain() {
    let mut veb = ApproxVeb::additive(FixedPoint::from_int(10), FixedPoint::from_int(1000)).unwrap();
    let top = veb.insert(FixedPoint::from_int(995), ()).unwrap();
    assert_eq!(veb.search(FixedPoint::from_int(u64::MAX)), Some(top));
    let mut mult = ApproxVeb::multiplicative(0.5, FixedPoint::from_int(1000)).unwrap();
    mult.insert(FixedPoint::ONE, ()).unwrap();
    assert_eq!(mult.search(FixedPoint::new(0, u64::MAX)), None);
}
