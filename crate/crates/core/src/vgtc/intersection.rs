//! Exact area of a disk intersected with a simple polygon.
//!
//! The polygon is fanned from the disk centre. For each edge the signed area
//! of `disk ∩ triangle(centre, a, b)` is accumulated: the edge is split where
//! it crosses the circle, pieces inside contribute a straight triangle and
//! pieces outside contribute a circular sector. Signed contributions from a
//! counter-clockwise polygon sum to the intersection area.

use crate::model::{Point, Polygon};

pub fn disk_polygon_area(center: Point, radius: f64, polygon: &Polygon) -> f64 {
    let area: f64 = polygon
        .edges()
        .map(|(a, b)| disk_triangle_area(a - center, b - center, radius))
        .sum();
    area.clamp(0.0, std::f64::consts::PI * radius * radius)
}

/// Signed area of the disk `|p| <= r` intersected with triangle (0, a, b).
fn disk_triangle_area(a: Point, b: Point, r: f64) -> f64 {
    let d = b - a;
    let dd = d.dot(d);
    if dd == 0.0 {
        return 0.0;
    }
    // |a + t d|² = r²  →  dd t² + 2 (a·d) t + (|a|² − r²) = 0
    let half_b = a.dot(d);
    let c = a.dot(a) - r * r;
    let disc = half_b * half_b - dd * c;

    let mut cuts = [0.0, 1.0, 1.0, 1.0];
    let mut n = 1;
    if disc > 0.0 {
        let s = disc.sqrt();
        for t in [(-half_b - s) / dd, (-half_b + s) / dd] {
            if t > 0.0 && t < 1.0 {
                cuts[n] = t;
                n += 1;
            }
        }
    }
    cuts[n] = 1.0;

    let mut total = 0.0;
    for w in cuts[..=n].windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 <= t0 {
            continue;
        }
        let p = a + d.scale(t0);
        let q = a + d.scale(t1);
        let mid = a + d.scale(0.5 * (t0 + t1));
        if mid.dot(mid) <= r * r {
            total += 0.5 * p.cross(q);
        } else {
            total += 0.5 * r * r * p.cross(q).atan2(p.dot(q));
        }
    }
    total
}
