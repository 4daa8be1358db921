use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::caliper::geometric_width;
use super::lattice::{lattice_lengths, min_sum_at_least, GapBound, LatticeKind};
use super::partition::{
    diagonal_split, ls_lower_bound, medial_subdivision, quadrisect, width_rule,
};
use super::WidthError;
use crate::geom::{polygon_chord, ConvexPolygon, Line2, Vector2};
use crate::sweepouts::{maximize_mass, Family, GridSpec, MaximizerReport, SweepError};
use crate::tol;

/// A p-width with a known certification chain.
#[derive(Debug, Clone, PartialEq)]
pub enum WidthProblem {
    /// The equilateral triangle inscribed in the unit circle, `p ∈ 1..=4`.
    Triangle(u32),
    /// The square inscribed in the unit circle, `p ∈ 1..=3`.
    Square(u32),
    /// `ω₁` of an arbitrary convex polygon.
    Polygon(ConvexPolygon),
}

impl WidthProblem {
    pub fn domain_name(&self) -> &'static str {
        match self {
            WidthProblem::Triangle(_) => "T",
            WidthProblem::Square(_) => "S",
            WidthProblem::Polygon(_) => "P",
        }
    }

    pub fn p(&self) -> u32 {
        match self {
            WidthProblem::Triangle(p) | WidthProblem::Square(p) => *p,
            WidthProblem::Polygon(_) => 1,
        }
    }

    /// The seven problems with closed-form answers.
    pub fn reproducible() -> Vec<WidthProblem> {
        (1..=4)
            .map(WidthProblem::Triangle)
            .chain((1..=3).map(WidthProblem::Square))
            .collect()
    }
}

impl fmt::Display for WidthProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "omega_{}({})", self.p(), self.domain_name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    /// Coarse grid per dimension for the sweepout maximizer; family default if `None`.
    pub grid: Option<usize>,
    /// Refinement rounds; 40 if `None`.
    pub rounds: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMethod {
    GeometricWidth,
    LsPartition,
    QuantizationGap,
    Monotonicity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerStep {
    pub method: LowerMethod,
    pub value: f64,
    pub detail: String,
}

/// One side of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub method: String,
    pub closed_form: Option<String>,
    /// Lower bounds: the chain of steps, last one final.
    pub steps: Vec<LowerStep>,
    /// Upper bounds: coefficients of the maximizing family member.
    pub argmax: Vec<f64>,
    pub report: Option<MaximizerReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WidthCertificate {
    pub problem: String,
    pub p: u32,
    pub lower: Estimate,
    pub upper: Estimate,
    pub certified: Option<f64>,
    pub closed_form: Option<String>,
    pub corroboration: Option<GapBound>,
    pub notes: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("no certification chain for {0}")]
    Unsupported(String),
    #[error("bounds do not meet for {}: lower {} vs upper {}", .certificate.problem, .certificate.lower.value, .certificate.upper.value)]
    BoundsDoNotMeet { certificate: Box<WidthCertificate> },
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

/// `v` with 17 significant digits in positional notation.
pub fn decimal17(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    let prec = (16 - mag).max(0) as usize;
    format!("{v:.prec$}")
}

impl WidthCertificate {
    pub fn to_json(&self) -> Value {
        let mut lower = json!({
            "value": self.lower.value,
            "decimal": decimal17(self.lower.value),
            "method": self.lower.method,
            "steps": self.lower.steps,
        });
        if let Some(cf) = &self.lower.closed_form {
            lower["closed_form"] = json!(cf);
        }
        let mut upper = json!({
            "value": self.upper.value,
            "decimal": decimal17(self.upper.value),
            "method": self.upper.method,
            "argmax": self.upper.argmax,
        });
        if let Some(r) = &self.upper.report {
            upper["maximizer"] = json!({
                "family": r.family,
                "params": r.argmax.params,
                "grid": r.grid,
                "samples": r.samples,
                "max_sampled": r.max_sampled,
            });
        }
        let mut doc = json!({
            "problem": self.problem,
            "p": self.p,
            "lower": lower,
            "upper": upper,
            "certified": self.certified,
        });
        if let Some(c) = self.certified {
            doc["certified_decimal"] = json!(decimal17(c));
        }
        if let Some(cf) = &self.closed_form {
            doc["closed_form"] = json!(cf);
        }
        if let Some(g) = &self.corroboration {
            doc["corroboration"] = json!({
                "method": "quantization-gap",
                "threshold": g.threshold,
                "value": g.value,
            });
        }
        if !self.notes.is_empty() {
            doc["notes"] = json!(self.notes);
        }
        doc
    }
}

/// Supremum of chord lengths over lines parallel to `v`, with a maximizing line.
///
/// Chord length along a fixed direction is concave in the offset and
/// piecewise linear, so the supremum is attained through a vertex.
pub fn max_parallel_chord(p: &ConvexPolygon, v: Vector2) -> (f64, Line2) {
    p.vertices()
        .iter()
        .map(|&q| {
            let line = Line2::with_direction(q, v).expect("direction is a unit vector");
            (polygon_chord(p, &line).length(), line)
        })
        .fold(None, |best: Option<(f64, Line2)>, c| match best {
            Some(b) if b.0 >= c.0 => Some(b),
            _ => Some(c),
        })
        .expect("polygon has vertices")
}

fn step(method: LowerMethod, value: f64, detail: impl Into<String>) -> LowerStep {
    LowerStep {
        method,
        value,
        detail: detail.into(),
    }
}

fn ones(pieces: &[ConvexPolygon]) -> Vec<(ConvexPolygon, u32)> {
    pieces.iter().map(|p| (p.clone(), 1)).collect()
}

const GAP_CUTOFF: f64 = 10.0;

fn gap_step(kind: LatticeKind, threshold: f64) -> Result<(LowerStep, GapBound), WidthError> {
    let g = min_sum_at_least(&lattice_lengths(kind, GAP_CUTOFF), threshold)?;
    let parts: Vec<String> = g
        .summands
        .iter()
        .map(|v| kind.closed_form(v.norm))
        .collect();
    let s = step(
        LowerMethod::QuantizationGap,
        g.value,
        format!(
            "smallest {kind} lattice sum >= {threshold}: {}",
            parts.join(" + ")
        ),
    );
    Ok((s, g))
}

fn width_step(p: &ConvexPolygon) -> LowerStep {
    step(
        LowerMethod::GeometricWidth,
        geometric_width(p).value,
        "omega_1 = W",
    )
}

fn chord_upper(p: &ConvexPolygon) -> Estimate {
    let w = geometric_width(p);
    let (value, line) = max_parallel_chord(p, w.direction);
    Estimate {
        value,
        method: "sup of chords parallel to the width direction".into(),
        closed_form: None,
        steps: vec![],
        argmax: line.coefficients().to_vec(),
        report: None,
    }
}

fn sweep_upper(family: Family, opts: &CertifyOptions) -> Result<Estimate, SweepError> {
    let id = family.id();
    let mut grid = GridSpec::new(opts.grid.unwrap_or(id.default_grid()));
    if let Some(r) = opts.rounds {
        grid.rounds = r;
    }
    let rep = maximize_mass(&family, &grid)?;
    Ok(Estimate {
        value: rep.best,
        method: format!("{id} maximizer"),
        closed_form: None,
        steps: vec![],
        argmax: rep.argmax.coefficients.clone(),
        report: Some(rep),
    })
}

/// Run the lower-bound chain and the sweepout maximizer for a problem.
pub fn certify(
    problem: &WidthProblem,
    opts: &CertifyOptions,
) -> Result<WidthCertificate, CertifyError> {
    let t = ConvexPolygon::equilateral_triangle();
    let s = ConvexPolygon::unit_circle_square();
    let mut notes = Vec::new();
    let mut corroboration = None;
    let (kind, steps, mut upper) = match problem {
        WidthProblem::Polygon(p) => (None, vec![width_step(p)], chord_upper(p)),
        WidthProblem::Triangle(1) => (
            Some(LatticeKind::Triangle),
            vec![width_step(&t)],
            chord_upper(&t),
        ),
        WidthProblem::Triangle(2) => {
            let w = width_step(&t);
            let mono = step(LowerMethod::Monotonicity, w.value, "omega_2 >= omega_1");
            let up = sweep_upper(Family::phi_t(), opts)?;
            (Some(LatticeKind::Triangle), vec![w, mono], up)
        }
        WidthProblem::Triangle(3) => {
            let parts = medial_subdivision(&t)?;
            let ls = ls_lower_bound(&t, &ones(&parts[..3]), width_rule)?;
            let ls_step = step(
                LowerMethod::LsPartition,
                ls.bound,
                "three corner triangles of the medial subdivision, p_j = 1",
            );
            let (gap, _) = gap_step(LatticeKind::Triangle, ls.bound)?;
            let mut up = sweep_upper(Family::planes_tet(), opts)?;
            up.method = format!("{} (planes containing a face excluded)", up.method);
            (Some(LatticeKind::Triangle), vec![ls_step, gap], up)
        }
        WidthProblem::Triangle(4) => {
            let parts = medial_subdivision(&t)?;
            let ls = ls_lower_bound(&t, &ones(&parts), width_rule)?;
            let ls_step = step(
                LowerMethod::LsPartition,
                ls.bound,
                "all four triangles of the medial subdivision, p_j = 1",
            );
            let (_, g) = gap_step(LatticeKind::Triangle, 3.0)?;
            notes.push(format!(
                "quantization gap at threshold 3 gives {} (corroboration)",
                decimal17(g.value)
            ));
            corroboration = Some(g);
            let up = sweep_upper(Family::pair_phi_t(), opts)?;
            (Some(LatticeKind::Triangle), vec![ls_step], up)
        }
        WidthProblem::Square(1) => (
            Some(LatticeKind::Square),
            vec![width_step(&s)],
            chord_upper(&s),
        ),
        WidthProblem::Square(2) => {
            let halves = diagonal_split(&s)?;
            let ls = ls_lower_bound(&s, &ones(&halves), width_rule)?;
            let ls_step = step(
                LowerMethod::LsPartition,
                ls.bound,
                "diagonal split into two right isosceles triangles, p_j = 1",
            );
            notes.push("both halves enter as omega_1(T_j) = W(T_j) = 1".into());
            let up = sweep_upper(Family::lines_s(), opts)?;
            (Some(LatticeKind::Square), vec![ls_step], up)
        }
        WidthProblem::Square(3) => {
            let quads = quadrisect(&s)?;
            let ls = ls_lower_bound(&s, &ones(&quads[..3]), width_rule)?;
            let ls_step = step(
                LowerMethod::LsPartition,
                ls.bound,
                "three of the four half-size squares, p_j = 1",
            );
            let (gap, _) = gap_step(LatticeKind::Square, ls.bound)?;
            let up = sweep_upper(Family::hyperbola_s(), opts)?;
            (Some(LatticeKind::Square), vec![ls_step, gap], up)
        }
        other => return Err(CertifyError::Unsupported(other.to_string())),
    };

    let raw_lower = steps.last().expect("chains are nonempty").value;
    // snap to the lattice value it was derived from
    let exact = kind.and_then(|k| {
        lattice_lengths(k, raw_lower + 1.0)
            .values
            .into_iter()
            .find(|v| (v.value - raw_lower).abs() <= 1e-9)
            .map(|v| (v.value, k.closed_form(v.norm)))
    });
    let (lower_value, closed_form) = match exact {
        Some((v, cf)) => (v, Some(cf)),
        None => (raw_lower, None),
    };
    let method = steps
        .iter()
        .map(|s| match s.method {
            LowerMethod::GeometricWidth => "geometric-width",
            LowerMethod::LsPartition => "ls-partition",
            LowerMethod::QuantizationGap => "quantization-gap",
            LowerMethod::Monotonicity => "monotonicity",
        })
        .collect::<Vec<_>>()
        .join(" -> ");
    let lower = Estimate {
        value: lower_value,
        method,
        closed_form: closed_form.clone(),
        steps,
        argmax: vec![],
        report: None,
    };
    upper.closed_form = None;
    let meets = (upper.value - lower.value).abs() <= tol::CERTIFY;
    let cert = WidthCertificate {
        problem: problem.domain_name().to_string(),
        p: problem.p(),
        certified: meets.then_some(lower.value),
        closed_form: if meets { closed_form } else { None },
        lower,
        upper,
        corroboration,
        notes,
    };
    if meets {
        Ok(cert)
    } else {
        Err(CertifyError::BoundsDoNotMeet {
            certificate: Box::new(cert),
        })
    }
}
