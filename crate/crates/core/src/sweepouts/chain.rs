use serde::{Deserialize, Serialize};

use crate::geom::{Point2, Segment2};

/// One piece of a relative cycle: a straight segment or a sampled curve
/// whose length was obtained by quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainPiece {
    Segment { a: Point2, b: Point2 },
    Curve { points: Vec<Point2>, length: f64 },
}

impl ChainPiece {
    pub fn length(&self) -> f64 {
        match self {
            ChainPiece::Segment { a, b } => a.dist(*b),
            ChainPiece::Curve { length, .. } => *length,
        }
    }

    pub fn points(&self) -> Vec<Point2> {
        match self {
            ChainPiece::Segment { a, b } => vec![*a, *b],
            ChainPiece::Curve { points, .. } => points.clone(),
        }
    }
}

impl From<Segment2> for ChainPiece {
    fn from(s: Segment2) -> Self {
        ChainPiece::Segment { a: s.a, b: s.b }
    }
}

/// Mass (relative perimeter) of a slice together with the pieces realizing it.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ChainMass {
    pub mass: f64,
    pub pieces: Vec<ChainPiece>,
}

impl ChainMass {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from pieces, dropping degenerate ones.
    pub fn from_pieces(pieces: Vec<ChainPiece>) -> Self {
        let pieces: Vec<ChainPiece> = pieces.into_iter().filter(|p| p.length() > 0.0).collect();
        ChainMass {
            mass: pieces.iter().map(ChainPiece::length).sum(),
            pieces,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Sum of two segment chains mod 2: collinear overlaps cancel.
    ///
    /// Curve pieces are carried over unchanged.
    pub fn mod2_sum(&self, other: &ChainMass) -> ChainMass {
        let mut curves = Vec::new();
        let mut segs: Vec<(Point2, Point2)> = Vec::new();
        for p in self.pieces.iter().chain(&other.pieces) {
            match p {
                ChainPiece::Segment { a, b } => segs.push((*a, *b)),
                c => curves.push(c.clone()),
            }
        }
        let mut out: Vec<ChainPiece> = Vec::new();
        let mut used = vec![false; segs.len()];
        for i in 0..segs.len() {
            if used[i] {
                continue;
            }
            let (o, e) = segs[i];
            let Some(dir) = (e - o).normalized() else {
                used[i] = true;
                continue;
            };
            let mut group = vec![i];
            used[i] = true;
            for j in i + 1..segs.len() {
                if !used[j] && collinear(o, dir, segs[j]) {
                    used[j] = true;
                    group.push(j);
                }
            }
            out.extend(xor_on_line(o, dir, group.iter().map(|&k| segs[k])));
        }
        out.extend(curves);
        ChainMass::from_pieces(out)
    }
}

const COLLINEAR: f64 = 1e-9;

fn collinear(o: Point2, dir: Point2, (a, b): (Point2, Point2)) -> bool {
    (a - o).cross(dir).abs() <= COLLINEAR && (b - o).cross(dir).abs() <= COLLINEAR
}

/// Parity of interval coverage along one line, as segments.
fn xor_on_line(
    o: Point2,
    dir: Point2,
    segs: impl Iterator<Item = (Point2, Point2)>,
) -> Vec<ChainPiece> {
    let mut events: Vec<f64> = Vec::new();
    for (a, b) in segs {
        events.push((a - o).dot(dir));
        events.push((b - o).dot(dir));
    }
    events.sort_by(f64::total_cmp);
    // each endpoint toggles parity, so covered stretches are between
    // events 2k and 2k+1 once coincident endpoints are paired off
    let mut merged: Vec<f64> = Vec::new();
    for t in events {
        match merged.last() {
            Some(&last) if (t - last).abs() <= COLLINEAR => {
                merged.pop();
            }
            _ => merged.push(t),
        }
    }
    merged
        .chunks(2)
        .filter(|c| c.len() == 2)
        .map(|c| ChainPiece::Segment {
            a: o + dir * c[0],
            b: o + dir * c[1],
        })
        .collect()
}
