//! Minimal SVG figures: a polygon outline with polylines drawn over it.

use std::fmt::Write;

use crate::geom::{ConvexPolygon, Point2};

/// Fixed output size of the longer side, in pixels.
const SIZE: f64 = 512.0;

/// Outline of `poly` in black and each polyline in red, y axis pointing up.
///
/// `comment` is written as an XML comment after the root element, e.g. a
/// timestamp. Output depends only on the arguments.
pub fn figure(poly: &ConvexPolygon, polylines: &[Vec<Point2>], comment: Option<&str>) -> String {
    let vs = poly.vertices();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for v in vs {
        x0 = x0.min(v.x);
        y0 = y0.min(v.y);
        x1 = x1.max(v.x);
        y1 = y1.max(v.y);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let scale = SIZE / w.max(h);
    let map = |p: Point2| ((p.x - x0 + pad) * scale, (y1 + pad - p.y) * scale);
    let points = |pts: &[Point2]| {
        pts.iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.4},{y:.4}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let (pw, ph) = (w * scale, h * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw:.0}" height="{ph:.0}" viewBox="0 0 {pw:.4} {ph:.4}">"#
    );
    if let Some(c) = comment {
        let _ = writeln!(s, "<!-- {} -->", c.replace("--", "- -"));
    }
    let _ = writeln!(
        s,
        r#"<polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        points(vs)
    );
    for line in polylines.iter().filter(|l| !l.is_empty()) {
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="crimson" stroke-width="1.5"/>"#,
            points(line)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    #[test]
    fn draws_outline_and_lines() {
        let s = ConvexPolygon::unit_circle_square();
        let svg = figure(
            &s,
            &[vec![Vec2::new(0.0, -0.5), Vec2::new(0.0, 0.5)], vec![]],
            None,
        );
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("<!--"));
        assert!(figure(&s, &[], Some("a--b")).contains("<!-- a- -b -->"));
    }
}
