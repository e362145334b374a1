use serde::{Deserialize, Serialize};

use crate::error::{ensure, positive, Error, Result};

/// Tolerance used for boundary tests in metres. Points this close to an edge are inside.
pub const GEOMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }
}

impl std::ops::Add for Point {
    type Output = Point;

    fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }
}

/// Axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn length(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn width(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        p.x >= self.min.x - tol
            && p.x <= self.max.x + tol
            && p.y >= self.min.y - tol
            && p.y <= self.max.y + tol
    }
}

/// A simple polygon with positive area, vertices stored counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.last().is_some() && vertices.first() == vertices.last() && vertices.len() > 1 {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        for v in &vertices {
            ensure(v.x.is_finite(), "vertex.x", "finite", v.x)?;
            ensure(v.y.is_finite(), "vertex.y", "finite", v.y)?;
        }
        if let Some((i, j)) = first_crossing(&vertices) {
            return Err(Error::SelfIntersecting(i, j));
        }
        let area = signed_area(&vertices);
        if area.abs() <= f64::EPSILON * bbox_scale(&vertices) {
            return Err(Error::DegeneratePolygon);
        }
        if area < 0.0 {
            vertices.reverse();
        }
        Ok(Polygon { vertices })
    }

    /// Rectangle anchored at the origin, `length` along x and `width` along y.
    pub fn rectangle(length: f64, width: f64) -> Result<Self> {
        positive("outline length", length)?;
        positive("outline width", width)?;
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(length, 0.0),
            Point::new(length, width),
            Point::new(0.0, width),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn bounding_box(&self) -> Rect {
        let mut min = self.vertices[0];
        let mut max = self.vertices[0];
        for v in &self.vertices[1..] {
            min.x = min.x.min(v.x);
            min.y = min.y.min(v.y);
            max.x = max.x.max(v.x);
            max.y = max.y.max(v.y);
        }
        Rect { min, max }
    }

    /// Returns the rectangle if this outline is an axis-aligned rectangle.
    pub fn as_axis_rect(&self) -> Option<Rect> {
        if self.vertices.len() != 4 {
            return None;
        }
        let axis_aligned = self.edges().all(|(a, b)| a.x == b.x || a.y == b.y);
        axis_aligned.then(|| self.bounding_box())
    }

    /// Closed containment test: boundary points count as inside.
    pub fn contains(&self, p: Point) -> bool {
        for (a, b) in self.edges() {
            if segment_distance(p, a, b) <= GEOMETRY_TOLERANCE {
                return true;
            }
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Applies `p -> rotate(p, angle) + offset` to every vertex.
    pub fn transformed(&self, angle: f64, offset: Point) -> Polygon {
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|&v| rotate(v, angle) + offset)
                .collect(),
        }
    }
}

pub fn rotate(p: Point, angle: f64) -> Point {
    let (s, c) = angle.sin_cos();
    Point::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let origin = vertices[0];
    let twice: f64 = (0..n)
        .map(|i| {
            let a = vertices[i] - origin;
            let b = vertices[(i + 1) % n] - origin;
            a.cross(b)
        })
        .sum();
    twice / 2.0
}

fn bbox_scale(vertices: &[Point]) -> f64 {
    let (mut lo, mut hi) = (vertices[0], vertices[0]);
    for v in vertices {
        lo.x = lo.x.min(v.x);
        lo.y = lo.y.min(v.y);
        hi.x = hi.x.max(v.x);
        hi.y = hi.y.max(v.y);
    }
    let d = (hi.x - lo.x).max(hi.y - lo.y);
    d * d
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab.scale(t))
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn segments_touch(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |a: Point, b: Point, c: Point, d: f64| {
        d == 0.0
            && c.x >= a.x.min(b.x)
            && c.x <= a.x.max(b.x)
            && c.y >= a.y.min(b.y)
            && c.y <= a.y.max(b.y)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

fn first_crossing(vertices: &[Point]) -> Option<(usize, usize)> {
    let n = vertices.len();
    for i in 0..n {
        let (a1, a2) = (vertices[i], vertices[(i + 1) % n]);
        for j in (i + 1)..n {
            // adjacent edges share a vertex
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (b1, b2) = (vertices[j], vertices[(j + 1) % n]);
            if segments_touch(a1, a2, b1, b2) {
                return Some((i, j));
            }
        }
    }
    None
}
