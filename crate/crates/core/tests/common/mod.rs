//! Test-only oracles that share no code with the library's geometry.
#![allow(dead_code)]

use rand::Rng;
use suction_core::{Point, Polygon};

/// Inside test for a convex counter-clockwise polygon via edge half-planes.
pub fn inside_convex(vertices: &[(f64, f64)], x: f64, y: f64) -> bool {
    let n = vertices.len();
    (0..n).all(|i| {
        let (ax, ay) = vertices[i];
        let (bx, by) = vertices[(i + 1) % n];
        (bx - ax) * (y - ay) - (by - ay) * (x - ax) >= 0.0
    })
}

/// Monte Carlo estimate of the disk ∩ convex polygon area, with its standard error.
///
/// Points are drawn uniformly over the disk, so the estimate is
/// `πr² · hits / n` and the standard error `πr² · sqrt(p (1 - p) / n)`.
pub fn monte_carlo_area<R: Rng>(
    rng: &mut R,
    center: (f64, f64),
    radius: f64,
    vertices: &[(f64, f64)],
    samples: usize,
) -> (f64, f64) {
    let mut hits = 0usize;
    for _ in 0..samples {
        let rho = radius * rng.random::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.random::<f64>();
        let x = center.0 + rho * theta.cos();
        let y = center.1 + rho * theta.sin();
        if inside_convex(vertices, x, y) {
            hits += 1;
        }
    }
    let disk = std::f64::consts::PI * radius * radius;
    let p = hits as f64 / samples as f64;
    (disk * p, disk * (p * (1.0 - p) / samples as f64).sqrt())
}

/// A rotated, translated rectangle and a circle that straddles its boundary.
pub struct CirclePair {
    pub center: Point,
    pub radius: f64,
    pub corners: Vec<(f64, f64)>,
}

impl CirclePair {
    pub fn polygon(&self) -> Polygon {
        Polygon::new(
            self.corners
                .iter()
                .map(|&(x, y)| Point::new(x, y))
                .collect(),
        )
        .unwrap()
    }
}

pub fn random_pair<R: Rng>(rng: &mut R) -> CirclePair {
    let length = rng.random_range(0.05..0.40);
    let width = rng.random_range(0.03..0.40);
    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    let (ox, oy) = (rng.random_range(-0.2..0.2), rng.random_range(-0.2..0.2));
    let (s, c) = angle.sin_cos();
    let corners: Vec<(f64, f64)> = [(0.0, 0.0), (length, 0.0), (length, width), (0.0, width)]
        .iter()
        .map(|&(x, y)| (c * x - s * y + ox, s * x + c * y + oy))
        .collect();
    let radius = rng.random_range(0.01..0.15);
    // Centre anywhere in the rectangle grown by the radius, so most circles cut an edge.
    let u = rng.random_range(-radius..length + radius);
    let v = rng.random_range(-radius..width + radius);
    let center = Point::new(c * u - s * v + ox, s * u + c * v + oy);
    CirclePair {
        center,
        radius,
        corners,
    }
}
