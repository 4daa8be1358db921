use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::chain::ChainMass;
use super::conic::{hyperbola_sweepout_mass, AxisRect};
use super::maximize::{grid_maximize, GridSpec, ParamRange};
use super::phi::{pair_phi_mass, PhiMap};
use super::slices::{line_sweepout_mass, plane_sweepout_mass};
use super::SweepError;
use crate::geom::{ConvexPolygon, GeomError, Line2, Plane3, Tetrahedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "phi-T")]
    PhiT,
    #[serde(rename = "lines-P")]
    LinesP,
    #[serde(rename = "hyperbola-S")]
    HyperbolaS,
    #[serde(rename = "planes-tet")]
    PlanesTet,
    #[serde(rename = "pair-phi-T")]
    PairPhiT,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::PhiT,
        FamilyId::LinesP,
        FamilyId::HyperbolaS,
        FamilyId::PlanesTet,
        FamilyId::PairPhiT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::PhiT => "phi-T",
            FamilyId::LinesP => "lines-P",
            FamilyId::HyperbolaS => "hyperbola-S",
            FamilyId::PlanesTet => "planes-tet",
            FamilyId::PairPhiT => "pair-phi-T",
        }
    }

    /// Default coarse points per dimension.
    pub fn default_grid(self) -> usize {
        match self {
            FamilyId::PhiT => 512,
            FamilyId::PairPhiT => 24,
            _ => 64,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| {
                f.name().eq_ignore_ascii_case(s) || (s == "lines-S" && *f == FamilyId::LinesP)
            })
            .ok_or_else(|| SweepError::UnknownFamily(s.to_string()))
    }
}

pub const MIN_GRID: usize = 4;

/// A sweepout family bound to its domain.
#[derive(Debug, Clone)]
pub enum Family {
    /// `φ(p₁, p₂)` over `∂T × ∂T`, parametrized by two arc lengths.
    PhiT(PhiMap),
    /// Chords `{ax + by = c} ∩ P` over ℝP².
    LinesP(ConvexPolygon),
    /// `∂(S ∩ {axy + bx + cy + d < 0})` over ℝP³.
    HyperbolaS(AxisRect),
    /// Plane sections `{ax + by + cz + d = 0} ∩ Q` over ℝP³, face planes excluded.
    /// Parameters are the projective vertex values of the affine function.
    PlanesTet(Tetrahedron),
    /// `Φ(x) + Φ(y)` for two `φ` parameters.
    PairPhiT(PhiMap),
}

/// A parameter point of a family with its decoded coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub family: FamilyId,
    pub params: Vec<f64>,
    /// Unit coefficient vector for projective families, boundary point
    /// coordinates `[x₁, y₁, x₂, y₂, …]` for the `φ` families.
    pub coefficients: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaximizerReport {
    pub family: FamilyId,
    pub best: f64,
    pub argmax: FamilyPoint,
    pub grid: GridSpec,
    pub coarse_best: f64,
    pub max_sampled: f64,
    pub samples: usize,
    pub history: Vec<f64>,
}

/// Plane at a parameter point, in vertex-value coordinates: the hemisphere
/// point lists the values of the plane's affine function at the four vertices.
fn planes_member(q: &Tetrahedron, params: &[f64]) -> Result<Plane3, GeomError> {
    let u = hemisphere_point(params);
    q.plane_with_vertex_values([u[0], u[1], u[2], u[3]])
}

/// Point on the upper hemisphere of `S^{k}` from hyperspherical angles.
pub fn hemisphere_point(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut s = 1.0;
    for &t in angles {
        out.push(s * t.cos());
        s *= t.sin();
    }
    out.push(s);
    out
}

fn projective_ranges(dim: usize) -> Vec<ParamRange> {
    let mut r = vec![ParamRange::closed(0.0, FRAC_PI_2)];
    for _ in 1..dim - 1 {
        r.push(ParamRange::closed(0.0, PI));
    }
    r.push(ParamRange::periodic(0.0, TAU));
    r
}

impl Family {
    pub fn phi_t() -> Self {
        Family::PhiT(PhiMap::new(ConvexPolygon::equilateral_triangle()).expect("T is equilateral"))
    }

    pub fn lines_s() -> Self {
        Family::LinesP(ConvexPolygon::unit_circle_square())
    }

    pub fn hyperbola_s() -> Self {
        Family::HyperbolaS(
            AxisRect::from_polygon(&ConvexPolygon::unit_circle_square())
                .expect("S is axis aligned"),
        )
    }

    /// Regular tetrahedron of side `√3/2`.
    pub fn planes_tet() -> Self {
        Family::PlanesTet(Tetrahedron::regular(3f64.sqrt() / 2.0).expect("positive side"))
    }

    pub fn pair_phi_t() -> Self {
        match Family::phi_t() {
            Family::PhiT(m) => Family::PairPhiT(m),
            _ => unreachable!(),
        }
    }

    /// The family on its canonical domain.
    pub fn canonical(id: FamilyId) -> Self {
        match id {
            FamilyId::PhiT => Family::phi_t(),
            FamilyId::LinesP => Family::lines_s(),
            FamilyId::HyperbolaS => Family::hyperbola_s(),
            FamilyId::PlanesTet => Family::planes_tet(),
            FamilyId::PairPhiT => Family::pair_phi_t(),
        }
    }

    pub fn id(&self) -> FamilyId {
        match self {
            Family::PhiT(_) => FamilyId::PhiT,
            Family::LinesP(_) => FamilyId::LinesP,
            Family::HyperbolaS(_) => FamilyId::HyperbolaS,
            Family::PlanesTet(_) => FamilyId::PlanesTet,
            Family::PairPhiT(_) => FamilyId::PairPhiT,
        }
    }

    pub fn ranges(&self) -> Vec<ParamRange> {
        match self {
            Family::PhiT(m) => vec![ParamRange::periodic(0.0, m.perimeter()); 2],
            Family::PairPhiT(m) => vec![ParamRange::periodic(0.0, m.perimeter()); 4],
            Family::LinesP(_) => projective_ranges(2),
            Family::HyperbolaS(_) | Family::PlanesTet(_) => projective_ranges(3),
        }
    }

    pub fn point(&self, params: &[f64]) -> FamilyPoint {
        let coefficients = match self {
            Family::PhiT(m) | Family::PairPhiT(m) => params
                .iter()
                .flat_map(|&s| m.triangle().boundary_point(s).to_array())
                .collect(),
            Family::PlanesTet(q) => planes_member(q, params)
                .map(|p| p.coefficients().to_vec())
                .unwrap_or_else(|_| vec![0.0; 4]),
            _ => hemisphere_point(params),
        };
        FamilyPoint {
            family: self.id(),
            params: params.to_vec(),
            coefficients,
        }
    }

    /// Mass at a parameter point; `None` for excluded members.
    pub fn mass(&self, params: &[f64]) -> Option<f64> {
        match self {
            Family::PlanesTet(q) => match planes_member(q, params) {
                Ok(plane) => plane_sweepout_mass(q, &plane),
                Err(_) => Some(0.0),
            },
            Family::PhiT(m) => Some(m.mass(params[0], params[1])),
            _ => self.chain(params).map(|c| c.mass),
        }
    }

    /// Chain realizing the mass, for the planar families.
    pub fn chain(&self, params: &[f64]) -> Option<ChainMass> {
        match self {
            Family::PhiT(m) => Some(m.chain(params[0], params[1])),
            Family::PairPhiT(m) => Some(pair_phi_mass(
                m,
                [params[0], params[1]],
                [params[2], params[3]],
            )),
            Family::LinesP(p) => {
                let u = hemisphere_point(params);
                Some(match Line2::new(u[0], u[1], -u[2]) {
                    Ok(line) => line_sweepout_mass(p, &line),
                    Err(_) => ChainMass::empty(),
                })
            }
            Family::HyperbolaS(s) => {
                let u = hemisphere_point(params);
                hyperbola_sweepout_mass(s, [u[0], u[1], u[2], u[3]])
                    .ok()
                    .map(|c| c.chain)
            }
            Family::PlanesTet(_) => None,
        }
    }

    /// Planar domain the chains live in.
    pub fn domain(&self) -> Option<ConvexPolygon> {
        match self {
            Family::PhiT(m) | Family::PairPhiT(m) => Some(m.triangle().clone()),
            Family::LinesP(p) => Some(p.clone()),
            Family::HyperbolaS(s) => Some(s.polygon()),
            Family::PlanesTet(_) => None,
        }
    }

    /// Mass on the plain coarse grid, in grid order.
    pub fn sample_grid(&self, per_dim: usize) -> Vec<(Vec<f64>, Option<f64>)> {
        let ranges = self.ranges();
        let n = per_dim.max(1);
        let total = n.pow(ranges.len() as u32);
        (0..total)
            .map(|mut i| {
                let mut p = vec![0.0; ranges.len()];
                for k in (0..ranges.len()).rev() {
                    let r = ranges[k];
                    let step = if r.periodic {
                        (r.hi - r.lo) / n as f64
                    } else {
                        (r.hi - r.lo) / (n.max(2) - 1) as f64
                    };
                    p[k] = r.lo + (i % n) as f64 * step;
                    i /= n;
                }
                let m = self.mass(&p);
                (p, m)
            })
            .collect()
    }
}

/// Maximize mass over a family's parameter space.
pub fn maximize_mass(family: &Family, grid: &GridSpec) -> Result<MaximizerReport, SweepError> {
    if grid.per_dim < MIN_GRID {
        return Err(SweepError::GridTooCoarse {
            min: MIN_GRID,
            got: grid.per_dim,
        });
    }
    let res = grid_maximize(&family.ranges(), grid, |p| family.mass(p))
        .ok_or(SweepError::NoAdmissiblePoint)?;
    Ok(MaximizerReport {
        family: family.id(),
        best: res.best,
        argmax: family.point(&res.argmax),
        grid: *grid,
        coarse_best: res.coarse_best,
        max_sampled: res.max_sampled,
        samples: res.samples,
        history: res.history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert_eq!("lines-S".parse::<FamilyId>().unwrap(), FamilyId::LinesP);
        assert!("circles".parse::<FamilyId>().is_err());
    }

    #[test]
    fn hemisphere_is_unit() {
        let u = hemisphere_point(&[0.3, 2.0, 5.0]);
        assert_eq!(u.len(), 4);
        assert!((u.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(hemisphere_point(&[0.0, 0.0, 0.0]), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn lines_family_maximum() {
        let rep = maximize_mass(&Family::lines_s(), &GridSpec::new(16)).unwrap();
        assert!((rep.best - 2.0).abs() < 1e-7, "{}", rep.best);
        assert!((Family::lines_s().mass(&rep.argmax.params).unwrap() - rep.best).abs() < 1e-12);
    }

    #[test]
    fn coarse_grid_rejected() {
        assert!(matches!(
            maximize_mass(&Family::phi_t(), &GridSpec::new(2)),
            Err(SweepError::GridTooCoarse { .. })
        ));
    }
}
