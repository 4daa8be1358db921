use serde_json::{json, Value};

use super::Trajectory;
use crate::geom::ConvexPolygon;
use crate::svg;

/// `{"segments": [[[x,y],[x,y]], ...], "terminal": ..., "length": ...}`.
pub fn trajectory_json(traj: &Trajectory) -> Value {
    let segments: Vec<Value> = traj
        .segments
        .iter()
        .map(|s| json!([[s.a.x, s.a.y], [s.b.x, s.b.y]]))
        .collect();
    json!({
        "segments": segments,
        "terminal": traj.terminal.name(),
        "length": traj.length(),
    })
}

/// SVG drawing of the polygon outline and the trajectory polyline.
pub fn trajectory_svg(poly: &ConvexPolygon, traj: &Trajectory, comment: Option<&str>) -> String {
    let path: Vec<_> = traj
        .start()
        .into_iter()
        .chain(traj.segments.iter().map(|s| s.b))
        .collect();
    svg::figure(poly, &[path], comment)
}
