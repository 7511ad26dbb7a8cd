//! On-line approximate convex hull.
//!
//! Points arrive one at a time. The hull is kept as a ring of vertices in an
//! additive [`ApproxVeb`] keyed by angle around a fixed interior center, one
//! vertex per angular bucket of width `delta`. A new point is located by its
//! angular neighbours, tested against that edge with exact integer
//! orientation, and, when outside, inserted with Graham-scan style local
//! corrections that delete neighbours turned reflex.
//!
//! The maintained polygon only ever uses input points, so it lies inside the
//! true hull; points that share a bucket with a farther vertex are dropped,
//! which costs at most about `delta` times the diameter in coverage.
//!
//! ```
//! use approx_veb::hull::{OnlineHull, Point};
//!
//! let mut hull = OnlineHull::new(std::f64::consts::TAU / 1024.0).unwrap();
//! for (x, y) in [(0, 0), (4, 0), (0, 4), (1, 1)] {
//!     hull.add_point(Point::new(x, y)).unwrap();
//! }
//! assert_eq!(hull.vertices().unwrap().len(), 3);
//! assert!(hull.contains(Point::new(1, 1)).unwrap());
//! assert!(!hull.contains(Point::new(5, 5)).unwrap());
//! ```

use std::f64::consts::{PI, TAU};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::approx::ApproxVeb;
use crate::error::{Error, Result};
use crate::exact::Name;
use crate::word::{FixedPoint, WordConfig};

/// Coordinates must stay strictly below this in absolute value.
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    fn check(self) -> Result<Self> {
        if self.x.abs() < COORD_LIMIT && self.y.abs() < COORD_LIMIT {
            Ok(self)
        } else {
            Err(Error::CoordinateOutOfRange {
                x: self.x,
                y: self.y,
            })
        }
    }

    fn tripled(self) -> (i128, i128) {
        (3 * self.x as i128, 3 * self.y as i128)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Cross product of `b - a` and `c - a`, all in tripled coordinates.
fn orient3(a: (i128, i128), b: (i128, i128), c: (i128, i128)) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    orient3(a.tripled(), b.tripled(), c.tripled())
}

/// Counters for the ring operations spent so far.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HullStats {
    pub points: u64,
    /// Ring operations (search, insert, delete, neighbour lookups) made
    /// while processing points.
    pub update_ops: u64,
    /// Ring operations made by `contains` and `vertices`.
    pub query_ops: u64,
    pub inserted: u64,
    pub deleted: u64,
    pub discarded: u64,
}

/// Semi-dynamic approximate convex hull of a point stream.
#[derive(Debug)]
pub struct OnlineHull {
    delta: f64,
    angle_top: FixedPoint,
    /// Three times the center, so it stays integral.
    center3: (i128, i128),
    state: State,
    stats: HullStats,
    query_ops: AtomicU64,
}

#[derive(Debug)]
enum State {
    Buffering(Vec<Point>),
    Ready(Box<ApproxVeb<Point>>),
}

impl OnlineHull {
    /// `delta` is the angular bucket width in radians, in `(0, pi/8]`.
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= PI / 8.0) {
            return Err(Error::InvalidAngularDelta(delta));
        }
        let cfg = WordConfig::default();
        let angle_top = FixedPoint::from_f64(TAU, cfg).expect("2pi fits");
        let step = FixedPoint::from_f64(delta, cfg)
            .filter(|d| *d > FixedPoint::ZERO)
            .ok_or(Error::InvalidAngularDelta(delta))?;
        // validate the universe now so later ring creation cannot fail
        ApproxVeb::<Point>::additive(step, angle_top)?;
        Ok(OnlineHull {
            delta,
            angle_top,
            center3: (0, 0),
            state: State::Buffering(Vec::new()),
            stats: HullStats::default(),
            query_ops: AtomicU64::new(0),
        })
    }

    /// Same as [`OnlineHull::new`] with `buckets` equal slices of the circle.
    pub fn with_buckets(buckets: u32) -> Result<Self> {
        Self::new(TAU / f64::from(buckets))
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn is_initialized(&self) -> bool {
        matches!(self.state, State::Ready(_))
    }

    /// The interior reference point, as `(x, y)`.
    pub fn center(&self) -> Option<(f64, f64)> {
        self.is_initialized()
            .then(|| (self.center3.0 as f64 / 3.0, self.center3.1 as f64 / 3.0))
    }

    pub fn stats(&self) -> HullStats {
        HullStats {
            query_ops: self.query_ops.load(AtomicOrdering::Relaxed),
            ..self.stats
        }
    }

    pub fn add_point(&mut self, p: Point) -> Result<()> {
        let p = p.check()?;
        self.stats.points += 1;
        match &mut self.state {
            State::Buffering(pending) => {
                pending.push(p);
                self.try_initialize();
            }
            State::Ready(_) => self.process(p),
        }
        Ok(())
    }

    /// Whether `q` lies inside or on the maintained polygon.
    pub fn contains(&self, q: Point) -> Result<bool> {
        let ring = self.ring().ok_or(Error::HullNotInitialized)?;
        let q = q.check()?;
        if q.tripled() == self.center3 {
            return Ok(true);
        }
        let c = self.center3;
        let count = |n: u64| {
            self.query_ops.fetch_add(n, AtomicOrdering::Relaxed);
        };
        count(1);
        let mut a = match ring.search(self.angle_key(q)) {
            Some(a) => a,
            None => {
                count(1);
                ring.maximum().expect("ring is non-empty")
            }
        };
        // bucket keys can disagree with exact order right at a boundary;
        // walk to the wedge that really holds q
        for _ in 0..ring.len() {
            if orient3(c, vertex(ring, a).tripled(), q.tripled()) >= 0 {
                break;
            }
            count(1);
            a = cyclic_pred(ring, a);
        }
        count(1);
        let mut b = cyclic_succ(ring, a);
        for _ in 0..ring.len() {
            if orient3(c, q.tripled(), vertex(ring, b).tripled()) > 0 {
                break;
            }
            a = b;
            count(1);
            b = cyclic_succ(ring, a);
        }
        Ok(orient(vertex(ring, a), vertex(ring, b), q) >= 0)
    }

    /// Vertices in counter-clockwise order starting from angle 0.
    pub fn vertices(&self) -> Result<Vec<Point>> {
        let ring = self.ring().ok_or(Error::HullNotInitialized)?;
        let mut out = Vec::with_capacity(ring.len());
        let mut cursor = ring.minimum();
        while let Some(name) = cursor {
            out.push(vertex(ring, name));
            cursor = ring.successor(name).expect("live name");
        }
        self.query_ops
            .fetch_add(out.len() as u64 + 1, AtomicOrdering::Relaxed);
        Ok(out)
    }

    fn ring(&self) -> Option<&ApproxVeb<Point>> {
        match &self.state {
            State::Ready(ring) => Some(ring),
            State::Buffering(_) => None,
        }
    }

    fn angle_key(&self, p: Point) -> FixedPoint {
        let (x, y) = p.tripled();
        let dx = (x - self.center3.0) as f64;
        let dy = (y - self.center3.1) as f64;
        let mut angle = dy.atan2(dx);
        if angle < 0.0 {
            angle += TAU;
        }
        FixedPoint::from_f64(angle, WordConfig::default())
            .unwrap_or(FixedPoint::ZERO)
            .min(self.angle_top)
    }

    fn dist2(&self, p: Point) -> i128 {
        let (x, y) = p.tripled();
        let (dx, dy) = (x - self.center3.0, y - self.center3.1);
        dx * dx + dy * dy
    }

    /// Starts the ring once the buffer holds a non-degenerate triangle and
    /// the farthest point of each bucket spans a polygon around its centroid.
    fn try_initialize(&mut self) {
        let State::Buffering(pending) = &self.state else {
            return;
        };
        let Some(center3) = first_triangle(pending) else {
            return;
        };
        self.center3 = center3;
        let pending = pending.clone();

        let mut ring = ApproxVeb::additive(
            FixedPoint::from_f64(self.delta, WordConfig::default()).expect("checked in new"),
            self.angle_top,
        )
        .expect("checked in new");
        let mut farthest: Vec<(u64, Point)> = Vec::new();
        for &p in &pending {
            if p.tripled() == center3 {
                continue;
            }
            let key = ring.mapping().map(self.angle_key(p)).expect("in range").get();
            match farthest.iter_mut().find(|(k, _)| *k == key) {
                Some(slot) if self.dist2(p) > self.dist2(slot.1) => slot.1 = p,
                Some(_) => {}
                None => farthest.push((key, p)),
            }
        }
        let candidates: Vec<Point> = farthest.iter().map(|&(_, p)| p).collect();
        let polygon = convex_hull(&candidates);
        let n = polygon.len();
        let surrounds = n >= 3
            && (0..n).all(|i| orient3(polygon[i].tripled(), polygon[(i + 1) % n].tripled(), center3) > 0);
        if !surrounds {
            return;
        }
        for &v in &polygon {
            ring.insert(self.angle_key(v), v).expect("in range");
        }
        self.stats.update_ops += n as u64;
        self.stats.inserted += n as u64;
        self.state = State::Ready(Box::new(ring));

        let mut rest = pending;
        for v in &polygon {
            if let Some(i) = rest.iter().position(|p| p == v) {
                rest.swap_remove(i);
            }
        }
        for p in rest {
            self.process(p);
        }
    }

    fn process(&mut self, p: Point) {
        let c = self.center3;
        if p.tripled() == c {
            self.stats.discarded += 1;
            return;
        }
        let angle = self.angle_key(p);
        let dist_p = self.dist2(p);
        let State::Ready(ring) = &mut self.state else {
            unreachable!("process runs on an initialized hull");
        };
        let stats = &mut self.stats;
        let key = ring.mapping().map(angle).expect("angle in range");

        stats.update_ops += 1;
        let hit = ring.search(angle);

        let (a, b, replace) = match hit {
            Some(v) if ring.key(v).expect("live") == key => {
                stats.update_ops += 2;
                let a = cyclic_pred(ring, v);
                let b = cyclic_succ(ring, v);
                let vp = vertex(ring, v);
                let edge = if orient3(c, vp.tripled(), p.tripled()) > 0 {
                    (vp, vertex(ring, b))
                } else {
                    (vertex(ring, a), vp)
                };
                let dist_v = {
                    let (x, y) = vp.tripled();
                    (x - c.0) * (x - c.0) + (y - c.1) * (y - c.1)
                };
                if orient(edge.0, edge.1, p) >= 0 || dist_p <= dist_v {
                    stats.discarded += 1;
                    return;
                }
                (a, b, Some(v))
            }
            hit => {
                let a = match hit {
                    Some(a) => a,
                    None => {
                        stats.update_ops += 1;
                        ring.maximum().expect("ring is non-empty")
                    }
                };
                stats.update_ops += 1;
                let b = cyclic_succ(ring, a);
                if orient(vertex(ring, a), vertex(ring, b), p) >= 0 {
                    stats.discarded += 1;
                    return;
                }
                (a, b, None)
            }
        };
        // keep the center strictly inside every wedge; a miss here means the
        // float angle and the exact orientation disagree, within delta
        let (pa, pb) = (vertex(ring, a), vertex(ring, b));
        if orient3(c, pa.tripled(), p.tripled()) <= 0 || orient3(c, p.tripled(), pb.tripled()) <= 0 {
            stats.discarded += 1;
            return;
        }
        if let Some(v) = replace {
            stats.update_ops += 1;
            stats.deleted += 1;
            ring.delete(v).expect("live");
        }
        stats.update_ops += 1;
        stats.inserted += 1;
        let name = ring.insert(angle, p).expect("angle in range");

        // counter-clockwise side
        let mut s = b;
        while ring.len() > 3 {
            stats.update_ops += 1;
            let s2 = cyclic_succ(ring, s);
            let (ps, ps2) = (vertex(ring, s), vertex(ring, s2));
            if orient(p, ps, ps2) > 0 || orient3(c, p.tripled(), ps2.tripled()) <= 0 {
                break;
            }
            stats.update_ops += 1;
            stats.deleted += 1;
            ring.delete(s).expect("live");
            s = s2;
        }
        // clockwise side; `a` may have gone if the sweep above wrapped round
        let mut r = if ring.element(a).is_ok() {
            a
        } else {
            stats.update_ops += 1;
            cyclic_pred(ring, name)
        };
        while ring.len() > 3 {
            stats.update_ops += 1;
            let r2 = cyclic_pred(ring, r);
            let (pr, pr2) = (vertex(ring, r), vertex(ring, r2));
            if orient(pr2, pr, p) > 0 || orient3(c, pr2.tripled(), p.tripled()) <= 0 {
                break;
            }
            stats.update_ops += 1;
            stats.deleted += 1;
            ring.delete(r).expect("live");
            r = r2;
        }
    }
}

fn vertex(ring: &ApproxVeb<Point>, name: Name) -> Point {
    *ring.data(name).expect("live name")
}

fn cyclic_succ(ring: &ApproxVeb<Point>, name: Name) -> Name {
    match ring.successor(name).expect("live name") {
        Some(next) => next,
        None => ring.minimum().expect("non-empty"),
    }
}

fn cyclic_pred(ring: &ApproxVeb<Point>, name: Name) -> Name {
    match ring.predecessor(name).expect("live name") {
        Some(prev) => prev,
        None => ring.maximum().expect("non-empty"),
    }
}

/// Tripled centroid of the first non-collinear triple in `points`.
fn first_triangle(points: &[Point]) -> Option<(i128, i128)> {
    let a = *points.first()?;
    let b = *points.iter().find(|&&p| p != a)?;
    let c = *points.iter().find(|&&p| orient(a, b, p) != 0)?;
    Some((
        a.x as i128 + b.x as i128 + c.x as i128,
        a.y as i128 + b.y as i128 + c.y as i128,
    ))
}

/// Strictly convex hull, counter-clockwise.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() + 1);
    for pass in 0..2 {
        let start = hull.len();
        for &p in &pts {
            while hull.len() >= start + 2
                && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        if pass == 0 {
            pts.reverse();
        }
    }
    hull
}
