//! Point and direction specs for `billiard`.
//!
//! Vertices are labelled `A`, `B`, `C`, … in input order. A point is
//! `vertex:A`, `mid:AB` (midpoint of two vertices) or `x,y`, where each
//! coordinate may be an expression such as `sqrt(3)/2`. A direction is
//! `to:<point>` (towards a point) or `x,y`.

use polywidth::geom::{eval_expr, ConvexPolygon, Point2, Vec2, Vector2};

fn vertex(poly: &ConvexPolygon, label: char) -> Result<Point2, String> {
    let idx = (label.to_ascii_uppercase() as u32).wrapping_sub('A' as u32) as usize;
    if label.is_ascii_alphabetic() && idx < poly.len() {
        Ok(poly.vertex(idx))
    } else {
        Err(format!(
            "no vertex `{label}` (labels A..{})",
            (b'A' + poly.len() as u8 - 1) as char
        ))
    }
}

fn pair(src: &str) -> Result<Vec2, String> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `x,y`, got `{src}`"));
    }
    let x = eval_expr(parts[0].trim()).map_err(|e| e.to_string())?;
    let y = eval_expr(parts[1].trim()).map_err(|e| e.to_string())?;
    Ok(Vec2::new(x, y))
}

pub fn parse_point(spec: &str, poly: &ConvexPolygon) -> Result<Point2, String> {
    if let Some(v) = spec.strip_prefix("vertex:") {
        let mut cs = v.chars();
        match (cs.next(), cs.next()) {
            (Some(a), None) => vertex(poly, a),
            _ => Err(format!("expected one vertex label in `{spec}`")),
        }
    } else if let Some(m) = spec.strip_prefix("mid:") {
        let mut cs = m.chars();
        match (cs.next(), cs.next(), cs.next()) {
            (Some(a), Some(b), None) if a != b => Ok(vertex(poly, a)?.lerp(vertex(poly, b)?, 0.5)),
            _ => Err(format!("expected two distinct vertex labels in `{spec}`")),
        }
    } else {
        pair(spec)
    }
}

pub fn parse_direction(spec: &str, poly: &ConvexPolygon, from: Point2) -> Result<Vector2, String> {
    let d = match spec.strip_prefix("to:") {
        Some(target) => parse_point(target, poly)? - from,
        None => pair(spec)?,
    };
    if d.norm() > 0.0 {
        Ok(d)
    } else {
        Err(format!("direction `{spec}` is zero"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        let t = ConvexPolygon::equilateral_triangle();
        let s3 = 3f64.sqrt();
        assert_eq!(
            parse_point("vertex:C", &t).unwrap(),
            Vec2::new(s3 / 2.0, 1.5)
        );
        assert_eq!(parse_point("mid:AB", &t).unwrap(), Vec2::new(s3 / 2.0, 0.0));
        assert_eq!(
            parse_point("sqrt(3)/2, 1/4", &t).unwrap(),
            Vec2::new(s3 / 2.0, 0.25)
        );
        let m = parse_point("mid:AB", &t).unwrap();
        let d = parse_direction("to:mid:BC", &t, m).unwrap();
        assert!((d - (t.edge(1).midpoint() - m)).norm() < 1e-15);
        assert_eq!(parse_direction("0,1", &t, m).unwrap(), Vec2::new(0.0, 1.0));
    }

    #[test]
    fn bad_specs() {
        let t = ConvexPolygon::equilateral_triangle();
        assert!(parse_point("vertex:D", &t).is_err());
        assert!(parse_point("mid:AA", &t).is_err());
        assert!(parse_point("mid:ABC", &t).is_err());
        assert!(parse_point("1,2,3", &t).is_err());
        assert!(parse_point("x,1", &t).is_err());
        let a = parse_point("vertex:A", &t).unwrap();
        assert!(parse_direction("to:vertex:A", &t, a).is_err());
    }
}
