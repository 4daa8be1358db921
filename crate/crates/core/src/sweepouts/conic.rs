use serde::{Deserialize, Serialize};

use super::chain::{ChainMass, ChainPiece};
use super::SweepError;
use crate::geom::{polygon_chord, ConvexPolygon, Line2, Point2};

const QUAD_TOL: f64 = 1e-10;
const LINEAR: f64 = 1e-14;
const CURVE_SAMPLES: usize = 33;

/// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl AxisRect {
    pub fn from_polygon(p: &ConvexPolygon) -> Result<Self, SweepError> {
        if p.len() != 4
            || !p.edges().all(|e| {
                let d = e.b - e.a;
                d.x.abs() <= 1e-12 * d.norm() || d.y.abs() <= 1e-12 * d.norm()
            })
        {
            return Err(SweepError::NotAxisRectangle);
        }
        let xs = p.vertices().iter().map(|v| v.x);
        let ys = p.vertices().iter().map(|v| v.y);
        Ok(AxisRect {
            x0: xs.clone().fold(f64::INFINITY, f64::min),
            x1: xs.fold(f64::NEG_INFINITY, f64::max),
            y0: ys.clone().fold(f64::INFINITY, f64::min),
            y1: ys.fold(f64::NEG_INFINITY, f64::max),
        })
    }

    pub fn polygon(&self) -> ConvexPolygon {
        ConvexPolygon::axis_rectangle(self.x0, self.x1, self.y0, self.y1)
            .expect("rectangle has positive extent")
    }
}

/// Result of auditing one monotone graph against `(b − a) + |f(b) − f(a)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotoneAudit {
    pub length: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Polyline length of a sampled monotone graph against its endpoint bound.
pub fn monotone_graph_bound_check(xs: &[f64], ys: &[f64]) -> Result<MonotoneAudit, SweepError> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(SweepError::BadSamples);
    }
    let inc = xs.windows(2).all(|w| w[1] >= w[0]);
    let up = ys.windows(2).all(|w| w[1] >= w[0]);
    let down = ys.windows(2).all(|w| w[1] <= w[0]);
    if !inc || !(up || down) {
        return Err(SweepError::NonMonotone);
    }
    let length = xs
        .windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| (x[1] - x[0]).hypot(y[1] - y[0]))
        .sum();
    let n = xs.len() - 1;
    Ok(audit(length, xs[n] - xs[0], (ys[n] - ys[0]).abs()))
}

fn audit(length: f64, dx: f64, dy: f64) -> MonotoneAudit {
    let bound = dx.abs() + dy.abs();
    MonotoneAudit {
        length,
        bound,
        ok: length <= bound + 1e-9,
    }
}

/// Level set `{a·xy + b·x + c·y + d = 0}` inside an axis rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicSlice {
    pub chain: ChainMass,
    /// One audit per monotone branch piece; empty for line members.
    pub audits: Vec<MonotoneAudit>,
}

/// Mass of `∂(S ∩ {a·xy + b·x + c·y + d < 0})` inside the open rectangle.
///
/// The level set is a line when `a = 0`, a pair of axis-parallel lines when
/// `ad = bc`, and otherwise a hyperbola whose branches are monotone graphs.
/// Branch lengths come from adaptive Simpson quadrature, integrating in `x`
/// where the slope is at most 1 and in `y` elsewhere.
pub fn hyperbola_sweepout_mass(s: &AxisRect, coeffs: [f64; 4]) -> Result<ConicSlice, SweepError> {
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(SweepError::ZeroCoefficients);
    }
    let [a, b, c, d] = coeffs.map(|v| v / norm);
    if a.abs() <= LINEAR {
        if b == 0.0 && c == 0.0 {
            return Ok(ConicSlice {
                chain: ChainMass::empty(),
                audits: vec![],
            });
        }
        let line = Line2::new(b, c, d).map_err(|_| SweepError::ZeroCoefficients)?;
        let chord = polygon_chord(&s.polygon(), &line);
        let pieces = match chord {
            crate::geom::Chord::Segment(seg) => vec![seg.into()],
            _ => vec![],
        };
        return Ok(ConicSlice {
            chain: ChainMass::from_pieces(pieces),
            audits: vec![],
        });
    }
    let det = a * d - b * c;
    if det.abs() <= LINEAR {
        let (xc, yc) = (-c / a, -b / a);
        let mut pieces = Vec::new();
        if s.x0 < xc && xc < s.x1 {
            pieces.push(ChainPiece::Segment {
                a: Point2::new(xc, s.y0),
                b: Point2::new(xc, s.y1),
            });
        }
        if s.y0 < yc && yc < s.y1 {
            pieces.push(ChainPiece::Segment {
                a: Point2::new(s.x0, yc),
                b: Point2::new(s.x1, yc),
            });
        }
        return Ok(ConicSlice {
            chain: ChainMass::from_pieces(pieces),
            audits: vec![],
        });
    }
    let h = Hyperbola { a, b, c, d, det };
    let mut pieces = Vec::new();
    let mut audits = Vec::new();
    for (u, v) in h.x_intervals(s) {
        let (length, points) = h.arc(u, v);
        let (ya, yb) = (h.y(u), h.y(v));
        audits.push(audit(length, v - u, yb - ya));
        pieces.push(ChainPiece::Curve { points, length });
    }
    Ok(ConicSlice {
        chain: ChainMass::from_pieces(pieces),
        audits,
    })
}

/// Nondegenerate member: `(ax + c)(ay + b) = −det` with `det = ad − bc ≠ 0`.
struct Hyperbola {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    det: f64,
}

impl Hyperbola {
    fn y(&self, x: f64) -> f64 {
        -(self.b * x + self.d) / (self.a * x + self.c)
    }

    fn x(&self, y: f64) -> f64 {
        -(self.c * y + self.d) / (self.a * y + self.b)
    }

    /// Maximal x-intervals on which the curve is a graph inside the rectangle.
    fn x_intervals(&self, s: &AxisRect) -> Vec<(f64, f64)> {
        let xc = -self.c / self.a;
        let mut cuts = vec![s.x0, s.x1];
        if s.x0 < xc && xc < s.x1 {
            cuts.push(xc);
        }
        for y in [s.y0, s.y1] {
            if self.a * y + self.b != 0.0 {
                let x = self.x(y);
                if s.x0 < x && x < s.x1 {
                    cuts.push(x);
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let inside = |x: f64| {
            let y = self.y(x);
            x != xc && y > s.y0 && y < s.y1
        };
        let mut out: Vec<(f64, f64)> = Vec::new();
        for w in cuts.windows(2) {
            let (u, v) = (w[0], w[1]);
            if v - u <= 0.0 || !inside(0.5 * (u + v)) {
                continue;
            }
            match out.last_mut() {
                // adjacent pieces of one branch are split only at a y-cut
                // that the branch touches without crossing; rejoin them
                Some(last) if last.1 == u && u != xc => last.1 = v,
                _ => out.push((u, v)),
            }
        }
        out
    }

    /// Arc length over `[u, v]` and sample points along the arc.
    fn arc(&self, u: f64, v: f64) -> (f64, Vec<Point2>) {
        // |y'| = |det| / (ax + c)² ≤ 1  ⇔  |ax + c| ≥ √|det|
        let r = self.det.abs().sqrt();
        let mut cuts = vec![u, v];
        for x in [(-self.c - r) / self.a, (-self.c + r) / self.a] {
            if u < x && x < v {
                cuts.push(x);
            }
        }
        cuts.sort_by(f64::total_cmp);
        let mut length = 0.0;
        for w in cuts.windows(2) {
            let (p, q) = (w[0], w[1]);
            let mid = 0.5 * (p + q);
            if (self.a * mid + self.c).abs() >= r {
                let f = |x: f64| {
                    let s = self.det / (self.a * x + self.c).powi(2);
                    (1.0 + s * s).sqrt()
                };
                length += adaptive_simpson(&f, p, q, QUAD_TOL);
            } else {
                let (y0, y1) = (self.y(p), self.y(q));
                let (y0, y1) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
                let f = |y: f64| {
                    let s = self.det / (self.a * y + self.b).powi(2);
                    (1.0 + s * s).sqrt()
                };
                length += adaptive_simpson(&f, y0, y1, QUAD_TOL);
            }
        }
        let points = (0..CURVE_SAMPLES)
            .map(|k| {
                let x = u + (v - u) * k as f64 / (CURVE_SAMPLES - 1) as f64;
                Point2::new(x, self.y(x))
            })
            .collect();
        (length, points)
    }
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    if b <= a {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}
