mod common;

use std::collections::HashSet;
use std::f64::consts::TAU;

use approx_veb::hull::{OnlineHull, Point};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.x as i128, a.y as i128);
    (b.x as i128 - ax) * (c.y as i128 - ay) - (b.y as i128 - ay) * (c.x as i128 - ax)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maintained_polygon_invariants(
        seed in any::<u64>(),
        len in 3usize..400,
        buckets in prop::sample::select(vec![16u32, 256, 4096]),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let stream = common::point_stream(&mut rng, len);
        let mut hull = OnlineHull::with_buckets(buckets).unwrap();
        let delta = hull.delta();
        let mut removed: HashSet<Point> = HashSet::new();
        let mut previous: HashSet<Point> = HashSet::new();
        for (i, &p) in stream.iter().enumerate() {
            hull.add_point(p).unwrap();
            if !hull.is_initialized() {
                continue;
            }
            let current: HashSet<Point> = hull.vertices().unwrap().into_iter().collect();
            // a vertex, once removed, never returns unless it arrives again
            for v in current.difference(&previous) {
                prop_assert!(!removed.contains(v) || stream[..=i].iter().filter(|&q| q == v).count() > 1);
            }
            removed.extend(previous.difference(&current));
            previous = current;
        }
        let pts = common::as_pairs(&stream);
        let truth = veb_oracles::convex_hull(&pts);
        if !hull.is_initialized() {
            prop_assert!(truth.len() < 3);
            return Ok(());
        }
        let vertices = hull.vertices().unwrap();
        let polygon = common::as_pairs(&vertices);
        for v in &polygon {
            prop_assert!(pts.contains(v));
            prop_assert!(veb_oracles::polygon_contains(&truth, *v));
        }
        let tolerance = 4.0 * delta * veb_oracles::diameter(&truth);
        for &p in &pts {
            prop_assert!(veb_oracles::distance_to_polygon(&polygon, p) <= tolerance);
        }
        let stats = hull.stats();
        prop_assert!(stats.update_ops <= 8 * stats.points);
        // counter-clockwise and strictly convex wherever neighbours are at
        // least two buckets apart
        let n = vertices.len();
        prop_assert!(n >= 3);
        let (cx, cy) = hull.center().unwrap();
        let angle = |p: Point| {
            let a = (p.y as f64 - cy).atan2(p.x as f64 - cx);
            if a < 0.0 { a + TAU } else { a }
        };
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            let gap = |u: Point, v: Point| ((angle(v) - angle(u)).rem_euclid(TAU) / delta).floor();
            if gap(a, b) >= 2.0 && gap(b, c) >= 2.0 {
                prop_assert!(orient(a, b, c) > 0, "reflex at {:?}", b);
            }
        }
        // queries agree with exact containment in the maintained polygon
        for &q in pts.iter().take(50) {
            let q = Point::new(q.0, q.1);
            prop_assert_eq!(hull.contains(q).unwrap(), veb_oracles::polygon_contains(&polygon, (q.x, q.y)));
        }
        let far = Point::new(100_000_000, 100_000_000);
        prop_assert!(!hull.contains(far).unwrap());
    }
}

#[test]
fn square_then_center() {
    let mut hull = OnlineHull::new(TAU / 1024.0).unwrap();
    for (x, y) in [(0, 0), (8, 0), (8, 8), (0, 8), (4, 4)] {
        hull.add_point(Point::new(x, y)).unwrap();
    }
    let v = hull.vertices().unwrap();
    assert_eq!(v.len(), 4);
    assert!(!v.contains(&Point::new(4, 4)));
    for i in 0..4 {
        assert!(orient(v[i], v[(i + 1) % 4], v[(i + 2) % 4]) > 0);
    }
}

#[test]
fn degenerate_start_is_buffered() {
    let mut hull = OnlineHull::new(TAU / 64.0).unwrap();
    for x in 0..10 {
        hull.add_point(Point::new(x, 2 * x)).unwrap();
    }
    assert!(!hull.is_initialized());
    hull.add_point(Point::new(0, 5)).unwrap();
    assert!(hull.is_initialized());
    let mut v = hull.vertices().unwrap();
    v.sort();
    assert_eq!(v, vec![Point::new(0, 0), Point::new(0, 5), Point::new(9, 18)]);
}

#[test]
fn long_stream_costs_constant_per_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let stream = common::point_stream(&mut rng, 20_000);
    let mut hull = OnlineHull::new(TAU / 4096.0).unwrap();
    for p in stream {
        hull.add_point(p).unwrap();
    }
    let s = hull.stats();
    assert!(s.update_ops <= 8 * s.points, "{s:?}");
    assert!(s.deleted <= s.inserted);
}
