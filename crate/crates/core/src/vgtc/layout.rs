//! Rectangular gripper grids inset from the fabric edge.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, non_negative, positive, Error, Result};
use crate::model::{Point, Polygon, Rect, GEOMETRY_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    positions: Vec<Point>,
    spacing: f64,
    margin: f64,
    rows: usize,
    cols: usize,
}

impl Layout {
    /// Row-major from the lower-left of the usable area.
    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Outline shrunk by `margin` on every side.
pub fn usable_area(outline: &Polygon, margin: f64) -> Result<Rect> {
    non_negative("margin", margin)?;
    let rect = outline.as_axis_rect().ok_or(Error::NonRectangular)?;
    let (length, width) = (rect.length() - 2.0 * margin, rect.width() - 2.0 * margin);
    if length < -GEOMETRY_TOLERANCE || width < -GEOMETRY_TOLERANCE {
        return Err(Error::MarginTooLarge {
            margin,
            length: rect.length(),
            width: rect.width(),
        });
    }
    let lo = Point::new(rect.min.x + margin, rect.min.y + margin);
    Ok(Rect {
        min: lo,
        max: Point::new(lo.x + length.max(0.0), lo.y + width.max(0.0)),
    })
}

/// Number of grid lines that fit along `usable`. A dimension within the
/// geometry tolerance of a whole multiple of `spacing` counts as that multiple.
fn lines_along(usable: f64, spacing: f64) -> usize {
    ((usable + GEOMETRY_TOLERANCE) / spacing).floor() as usize + 1
}

fn axis_positions(
    start: f64,
    usable: f64,
    spacing: f64,
    count: usize,
) -> impl Iterator<Item = f64> {
    let span = (count - 1) as f64 * spacing;
    let first = start + (usable - span) / 2.0;
    (0..count).map(move |i| first + i as f64 * spacing)
}

/// Count of grid positions for `spacing`, without building them.
pub fn layout_count(outline: &Polygon, margin: f64, spacing: f64) -> Result<usize> {
    positive("spacing", spacing)?;
    let usable = usable_area(outline, margin)?;
    Ok(lines_along(usable.length(), spacing) * lines_along(usable.width(), spacing))
}

/// Axis-aligned grid with pitch `spacing`, centred in the outline shrunk by `margin`.
///
/// Along each axis `floor(usable / spacing) + 1` positions fit; a dimension
/// shorter than `spacing` gets a single centred line.
pub fn generate_layout(outline: &Polygon, margin: f64, spacing: f64) -> Result<Layout> {
    positive("spacing", spacing)?;
    let usable = usable_area(outline, margin)?;
    let cols = lines_along(usable.length(), spacing);
    let rows = lines_along(usable.width(), spacing);
    let xs: Vec<f64> = axis_positions(usable.min.x, usable.length(), spacing, cols).collect();
    let positions = axis_positions(usable.min.y, usable.width(), spacing, rows)
        .flat_map(|y| xs.iter().map(move |&x| Point::new(x, y)))
        .collect();
    Ok(Layout {
        positions,
        spacing,
        margin,
        rows,
        cols,
    })
}

/// Closed spacing interval `[lo, hi]` at the scan resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacingInterval {
    pub lo: f64,
    pub hi: f64,
}

impl SpacingInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, spacing: f64, tol: f64) -> bool {
        spacing >= self.lo - tol && spacing <= self.hi + tol
    }
}

/// Scans `search_range` in steps of `step` and returns the maximal runs of
/// spacings whose grid has exactly `target_count` positions.
pub fn calibrate_spacing(
    outline: &Polygon,
    margin: f64,
    target_count: usize,
    search_range: (f64, f64),
    step: f64,
) -> Result<Vec<SpacingInterval>> {
    ensure(
        target_count >= 1,
        "target_count",
        ">= 1",
        target_count as f64,
    )?;
    let (lo, hi) = search_range;
    positive("search range start", lo)?;
    ensure(hi >= lo, "search range end", ">= start", hi)?;
    positive("step", step)?;
    usable_area(outline, margin)?;

    let steps = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut intervals = Vec::new();
    let mut open: Option<SpacingInterval> = None;
    for k in 0..=steps {
        let s = lo + k as f64 * step;
        if layout_count(outline, margin, s)? == target_count {
            match open.as_mut() {
                Some(run) => run.hi = s,
                None => open = Some(SpacingInterval { lo: s, hi: s }),
            }
        } else if let Some(run) = open.take() {
            intervals.push(run);
        }
    }
    intervals.extend(open);
    Ok(intervals)
}
