//! Batch convex hull and polygon distance helpers.

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Andrew's monotone chain. Returns the strictly convex hull in
/// counterclockwise order; fewer than three points for degenerate input.
pub fn convex_hull(points: &[Pt]) -> Vec<Pt> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Pt> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Whether `p` lies inside or on a counterclockwise convex polygon.
pub fn polygon_contains(hull: &[Pt], p: Pt) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => cross(hull[0], hull[1], p) == 0 && on_segment(hull[0], hull[1], p),
        n => (0..n).all(|i| cross(hull[i], hull[(i + 1) % n], p) >= 0),
    }
}

fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn segment_distance(a: Pt, b: Pt, p: Pt) -> f64 {
    let (ax, ay) = (a.0 as f64, a.1 as f64);
    let (bx, by) = (b.0 as f64, b.1 as f64);
    let (px, py) = (p.0 as f64, p.1 as f64);
    let (dx, dy) = (bx - ax, by - ay);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((px - ax) * dx + (py - ay) * dy) / len2).clamp(0.0, 1.0)
    };
    ((ax + t * dx - px).powi(2) + (ay + t * dy - py).powi(2)).sqrt()
}

/// Euclidean distance from `p` to a simple counterclockwise polygon given by
/// its vertices; zero when `p` is inside. The polygon need not be convex.
pub fn distance_to_polygon(polygon: &[Pt], p: Pt) -> f64 {
    let n = polygon.len();
    if n == 0 {
        return f64::INFINITY;
    }
    if n >= 3 && winding_inside(polygon, p) {
        return 0.0;
    }
    (0..n)
        .map(|i| segment_distance(polygon[i], polygon[(i + 1) % n], p))
        .fold(f64::INFINITY, f64::min)
}

// Crossing-number test with boundary counted as inside.
fn winding_inside(polygon: &[Pt], p: Pt) -> bool {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        if cross(a, b, p) == 0 && on_segment(a, b, p) {
            return true;
        }
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 as f64 + (p.1 - a.1) as f64 * (b.0 - a.0) as f64 / (b.1 - a.1) as f64;
            if (p.0 as f64) < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Largest pairwise distance, by brute force.
pub fn diameter(points: &[Pt]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = (((a.0 - b.0) as f64).powi(2) + ((a.1 - b.1) as f64).powi(2)).sqrt();
            best = best.max(d);
        }
    }
    best
}
