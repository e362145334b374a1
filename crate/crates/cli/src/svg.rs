//! Standalone SVG drawing of a gripper layout over the fabric outline.
//!
//! Drawing units are tenths of a millimetre (1 cm = 10 units) with y pointing
//! up as in the model. Numbers are printed at fixed precision, so identical
//! inputs give identical bytes.

use std::fmt::Write as _;

use suction_core::vgtc::effective_ratio;
use suction_core::{Layout, Point, Polygon, Vgtc};

/// User units per metre.
const SCALE: f64 = 1000.0;
const PAD: f64 = 10.0;
const GRIPPER_DOT: f64 = 1.5;
/// Ratios this close to one count as a circle fully on the fabric.
const FULL_RATIO: f64 = 1.0 - 1e-9;

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    match s {
        "-0" | "" => "0".to_string(),
        other => other.to_string(),
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn x(&self, x: f64) -> String {
        num((x - self.min_x) * SCALE + PAD)
    }

    fn y(&self, y: f64) -> String {
        num((self.max_y - y) * SCALE + PAD)
    }

    fn points(&self, pts: &[Point]) -> String {
        pts.iter()
            .map(|p| format!("{},{}", self.x(p.x), self.y(p.y)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Draws `outline`, the dashed margin inset, one grabbing circle per layout
/// position and the gripper dots. Circles that leave the outline also get a
/// shaded copy clipped to the fabric, showing the part that still seals.
///
/// With no layout the image holds the outline only.
pub fn emit_layout_svg(layout: Option<&Layout>, outline: &Polygon, vgtc: &Vgtc) -> String {
    let positions = layout.map_or(&[][..], Layout::positions);
    let r = vgtc.radius();
    let bbox = outline.bounding_box();
    let (mut min_x, mut min_y, mut max_x, mut max_y) =
        (bbox.min.x, bbox.min.y, bbox.max.x, bbox.max.y);
    for p in positions {
        min_x = min_x.min(p.x - r);
        min_y = min_y.min(p.y - r);
        max_x = max_x.max(p.x + r);
        max_y = max_y.max(p.y + r);
    }
    let frame = Frame { min_x, max_y };
    let width = num((max_x - min_x) * SCALE + 2.0 * PAD);
    let height = num((max_y - min_y) * SCALE + 2.0 * PAD);
    let outline_points = frame.points(outline.vertices());

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(svg, r#"  <defs>"#);
    let _ = writeln!(
        svg,
        r#"    <clipPath id="fabric-clip"><polygon points="{outline_points}"/></clipPath>"#
    );
    let _ = writeln!(svg, r#"  </defs>"#);
    let _ = writeln!(
        svg,
        r##"  <polygon class="outline" points="{outline_points}" fill="#f3eee4" stroke="#333333" stroke-width="1"/>"##
    );

    if let Some(layout) = layout {
        let m = layout.margin();
        let inset = [
            Point::new(bbox.min.x + m, bbox.min.y + m),
            Point::new(bbox.max.x - m, bbox.min.y + m),
            Point::new(bbox.max.x - m, bbox.max.y - m),
            Point::new(bbox.min.x + m, bbox.max.y - m),
        ];
        let _ = writeln!(
            svg,
            r##"  <polygon class="margin" points="{}" fill="none" stroke="#777777" stroke-width="0.6" stroke-dasharray="4 3"/>"##,
            frame.points(&inset)
        );
    }

    let mut circles = String::new();
    let mut shading = String::new();
    let mut dots = String::new();
    for &p in positions {
        let (cx, cy, cr) = (frame.x(p.x), frame.y(p.y), num(r * SCALE));
        let _ = writeln!(
            circles,
            r##"    <circle class="vgtc" cx="{cx}" cy="{cy}" r="{cr}" fill="none" stroke="#2b6cb0" stroke-width="0.6"/>"##
        );
        let ratio = effective_ratio(&vgtc.at(p), outline);
        if ratio < FULL_RATIO {
            let _ = writeln!(
                shading,
                r##"    <circle class="clipped" cx="{cx}" cy="{cy}" r="{cr}" clip-path="url(#fabric-clip)" fill="#dd6b20" fill-opacity="0.25"><title>effective ratio {:.3}</title></circle>"##,
                ratio
            );
        }
        let _ = writeln!(
            dots,
            r##"    <circle class="gripper" cx="{cx}" cy="{cy}" r="{}" fill="#1a202c"/>"##,
            num(GRIPPER_DOT)
        );
    }
    for (name, body) in [
        ("shading", shading),
        ("circles", circles),
        ("grippers", dots),
    ] {
        if !body.is_empty() {
            let _ = writeln!(svg, r#"  <g id="{name}">"#);
            svg.push_str(&body);
            let _ = writeln!(svg, r#"  </g>"#);
        }
    }
    svg.push_str("</svg>\n");
    svg
}
