//! Grabbing circles: the disk of effective suction around each gripper.
//!
//! A gripper placed near an edge or corner loses the part of its circle that
//! hangs off the fabric. The minimum single-layer vacuum is scaled by the
//! inverse of the retained fraction: the required force is unchanged while
//! the effective area shrinks.

mod intersection;
mod layout;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, positive, Error, Result};
use crate::model::{Point, Polygon, PressureWindow};
pub use intersection::disk_polygon_area;
pub use layout::{
    calibrate_spacing, generate_layout, layout_count, usable_area, Layout, SpacingInterval,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vgtc {
    center: Point,
    radius: f64,
    pressure_window: PressureWindow,
}

impl Vgtc {
    pub fn new(center: Point, radius: f64, pressure_window: PressureWindow) -> Result<Self> {
        positive("radius", radius)?;
        ensure(
            center.x.is_finite() && center.y.is_finite(),
            "center",
            "finite",
            center.x + center.y,
        )?;
        Ok(Vgtc {
            center,
            radius,
            pressure_window,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn pressure_window(&self) -> PressureWindow {
        self.pressure_window
    }

    /// The same calibrated circle placed at `center`.
    pub fn at(&self, center: Point) -> Vgtc {
        Vgtc { center, ..*self }
    }

    pub fn full_area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

pub fn circle_polygon_intersection_area(circle: &Vgtc, outline: &Polygon) -> f64 {
    disk_polygon_area(circle.center, circle.radius, outline)
}

/// Fraction of the circle lying on the fabric, in `[0, 1]`.
pub fn effective_ratio(circle: &Vgtc, outline: &Polygon) -> f64 {
    (circle_polygon_intersection_area(circle, outline) / circle.full_area()).clamp(0.0, 1.0)
}

/// Minimum vacuum for a circle keeping only `ratio` of its area: `p_min / ratio`.
pub fn adjusted_min_pressure(window: &PressureWindow, ratio: f64) -> Result<f64> {
    if ratio == 0.0 {
        return Err(Error::ZeroEffectiveRatio);
    }
    ensure(
        ratio > 0.0 && ratio <= 1.0,
        "effective ratio",
        "in (0, 1]",
        ratio,
    )?;
    Ok(window.p_min() / ratio)
}

/// Records a bench test of one gripper on a small sample: the largest circle
/// radius that still lifted exactly one layer, inside `window`.
pub fn single_grab_radius_test(window: PressureWindow, measured_pass_radius: f64) -> Result<Vgtc> {
    Vgtc::new(Point::default(), measured_pass_radius, window)
}
