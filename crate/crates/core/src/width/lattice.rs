use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::WidthError;

/// Which unfolding lattice the billiard lengths come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    /// Equilateral triangle inscribed in the unit circle: `(3/2)·√(a² + ab + b²)`.
    Triangle,
    /// Square inscribed in the unit circle: `√2·√(a² + b²)`.
    Square,
}

impl LatticeKind {
    /// Integer quadratic form of the lattice.
    pub fn norm(self, a: i64, b: i64) -> i64 {
        match self {
            LatticeKind::Triangle => a * a + a * b + b * b,
            LatticeKind::Square => a * a + b * b,
        }
    }

    /// Length corresponding to a norm value.
    pub fn length(self, norm: u64) -> f64 {
        match self {
            LatticeKind::Triangle => 1.5 * (norm as f64).sqrt(),
            LatticeKind::Square => (2.0 * norm as f64).sqrt(),
        }
    }

    /// `length(norm) ≤ cutoff`, decided on squares: `9n ≤ 4c²` resp. `2n ≤ c²`.
    ///
    /// The right side carries a relative slack of 1e-12 so that a cutoff
    /// computed in floating point from a closed form admits its own value.
    fn within(self, norm: u64, cutoff: f64) -> bool {
        let c2 = cutoff * cutoff * (1.0 + 1e-12);
        match self {
            LatticeKind::Triangle => 9.0 * norm as f64 <= 4.0 * c2,
            LatticeKind::Square => 2.0 * norm as f64 <= c2,
        }
    }

    /// Half-width of the coefficient box that contains every pair with
    /// length at most `cutoff`.
    fn coefficient_bound(self, cutoff: f64) -> i64 {
        let b = match self {
            // a² + ab + b² ≥ (3/4)·max(|a|,|b|)²
            LatticeKind::Triangle => (16.0 * cutoff * cutoff / 27.0).sqrt(),
            LatticeKind::Square => cutoff / 2f64.sqrt(),
        };
        b.ceil() as i64 + 1
    }

    /// Closed-form string of a lattice length, e.g. `3*sqrt(3)/2`.
    pub fn closed_form(self, norm: u64) -> String {
        let (outside, inside) = square_free(norm);
        match self {
            LatticeKind::Triangle => {
                let num = 3 * outside;
                let frac = if num % 2 == 0 {
                    format!("{}", num / 2)
                } else {
                    format!("{num}/2")
                };
                if inside == 1 {
                    frac
                } else if num % 2 == 0 {
                    format!("{}*sqrt({inside})", num / 2)
                } else {
                    format!("{num}*sqrt({inside})/2")
                }
            }
            LatticeKind::Square => {
                let (o2, i2) = square_free(2 * norm);
                match (o2, i2) {
                    (o, 1) => format!("{o}"),
                    (1, i) => format!("sqrt({i})"),
                    (o, i) => format!("{o}*sqrt({i})"),
                }
            }
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Triangle => "triangle",
            LatticeKind::Square => "square",
        })
    }
}

/// `n = outside² · inside` with `inside` square-free.
fn square_free(n: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut inside = n;
    let mut k = 2;
    while k * k <= inside {
        while inside.is_multiple_of(k * k) {
            inside /= k * k;
            outside *= k;
        }
        k += 1;
    }
    (outside, inside)
}

/// One lattice length with an integer witness `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeValue {
    pub value: f64,
    pub norm: u64,
    pub a: i64,
    pub b: i64,
}

/// All lattice lengths in `(0, cutoff]`, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthLattice {
    pub kind: LatticeKind,
    pub cutoff: f64,
    pub values: Vec<LatticeValue>,
}

impl LengthLattice {
    pub fn min_value(&self) -> Option<f64> {
        self.values.first().map(|v| v.value)
    }
}

/// Exhaustive enumeration of lattice lengths up to `cutoff`.
///
/// Duplicates are identified by their exact integer norm. Among the pairs
/// realizing a norm, the witness prefers `a, b ≥ 0`, then `a ≥ b`, then the
/// largest `a`.
pub fn lattice_lengths(kind: LatticeKind, cutoff: f64) -> LengthLattice {
    let mut by_norm: BTreeMap<u64, (i64, i64)> = BTreeMap::new();
    if cutoff > 0.0 && cutoff.is_finite() {
        let n = kind.coefficient_bound(cutoff);
        for a in -n..=n {
            for b in -n..=n {
                let norm = kind.norm(a, b);
                if norm <= 0 || !kind.within(norm as u64, cutoff) {
                    continue;
                }
                by_norm
                    .entry(norm as u64)
                    .and_modify(|w| {
                        if witness_key(a, b) > witness_key(w.0, w.1) {
                            *w = (a, b);
                        }
                    })
                    .or_insert((a, b));
            }
        }
    }
    LengthLattice {
        kind,
        cutoff,
        values: by_norm
            .into_iter()
            .map(|(norm, (a, b))| LatticeValue {
                value: kind.length(norm),
                norm,
                a,
                b,
            })
            .collect(),
    }
}

fn witness_key(a: i64, b: i64) -> (bool, bool, i64, i64) {
    (a >= 0 && b >= 0, a >= b, a, b)
}

/// Lattice length closest to `length`; ties go to the smaller value.
///
/// For each `a` in the coefficient box only the integers next to the real
/// roots `b` of `norm(a, b) = (length / unit)²` can be optimal, so the scan is
/// linear in the box size.
pub fn nearest_length(kind: LatticeKind, length: f64) -> LatticeValue {
    let unit = kind.length(1);
    let target = (length.max(0.0) / unit).powi(2);
    let n = kind.coefficient_bound(length.max(0.0) + unit);
    let mut best: Option<(f64, LatticeValue)> = None;
    for a in -n..=n {
        let af = a as f64;
        let (centre, disc) = match kind {
            LatticeKind::Triangle => (-af / 2.0, (4.0 * target - 3.0 * af * af) / 4.0),
            LatticeKind::Square => (0.0, target - af * af),
        };
        let r = disc.max(0.0).sqrt();
        for root in [centre - r, centre, centre + r] {
            for b in [root.floor() as i64, root.ceil() as i64] {
                let norm = kind.norm(a, b);
                if norm <= 0 {
                    continue;
                }
                let value = kind.length(norm as u64);
                let cand = LatticeValue {
                    value,
                    norm: norm as u64,
                    a,
                    b,
                };
                let err = (value - length).abs();
                let better = match &best {
                    None => true,
                    Some((e, v)) => {
                        if norm as u64 == v.norm {
                            witness_key(a, b) > witness_key(v.a, v.b)
                        } else {
                            err < *e || (err == *e && value < v.value)
                        }
                    }
                };
                if better {
                    best = Some((err, cand));
                }
            }
        }
    }
    best.expect("coefficient box is nonempty").1
}

/// Smallest sum of lattice lengths that reaches a threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapBound {
    pub threshold: f64,
    pub value: f64,
    /// An optimal multiset, ascending.
    pub summands: Vec<LatticeValue>,
}

/// Minimum over finite multisets of lattice lengths whose sum is `≥ threshold`.
///
/// Any optimal multiset has at most `⌈θ/min⌉ + 1` elements and every element
/// is at most `θ + min`, so the depth-first search over nondecreasing index
/// sequences below is exhaustive. Sums within a relative 1e-12 of the
/// threshold count as reaching it.
pub fn min_sum_at_least(lattice: &LengthLattice, threshold: f64) -> Result<GapBound, WidthError> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(WidthError::InvalidThreshold(threshold));
    }
    let min = lattice.min_value().ok_or(WidthError::InsufficientLattice {
        cutoff: lattice.cutoff,
        needed: threshold,
    })?;
    let needed = threshold + min;
    if lattice.cutoff < needed * (1.0 - 1e-12) {
        return Err(WidthError::InsufficientLattice {
            cutoff: lattice.cutoff,
            needed,
        });
    }
    let target = threshold * (1.0 - 1e-12);
    let max_count = (threshold / min).ceil() as usize + 1;
    let values: Vec<LatticeValue> = lattice
        .values
        .iter()
        .copied()
        .filter(|v| v.value <= needed * (1.0 + 1e-12))
        .collect();

    struct Search<'a> {
        values: &'a [LatticeValue],
        target: f64,
        max_count: usize,
        best: f64,
        best_set: Vec<usize>,
        stack: Vec<usize>,
    }
    impl Search<'_> {
        fn go(&mut self, start: usize, sum: f64) {
            if sum >= self.target {
                if sum < self.best {
                    self.best = sum;
                    self.best_set = self.stack.clone();
                }
                return;
            }
            if self.stack.len() == self.max_count {
                return;
            }
            for i in start..self.values.len() {
                let next = sum + self.values[i].value;
                if next >= self.best {
                    break;
                }
                self.stack.push(i);
                self.go(i, next);
                self.stack.pop();
            }
        }
    }

    let mut s = Search {
        values: &values,
        target,
        max_count,
        best: f64::INFINITY,
        best_set: Vec::new(),
        stack: Vec::new(),
    };
    s.go(0, 0.0);
    Ok(GapBound {
        threshold,
        value: s.best,
        summands: s.best_set.iter().map(|&i| values[i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_lattice_below_three() {
        let l = lattice_lengths(LatticeKind::Triangle, 3.0);
        let got: Vec<(f64, i64, i64)> = l.values.iter().map(|v| (v.value, v.a, v.b)).collect();
        assert_eq!(got.len(), 3);
        assert!((got[0].0 - 1.5).abs() < 1e-15 && (got[0].1, got[0].2) == (1, 0));
        assert!((got[1].0 - 1.5 * 3f64.sqrt()).abs() < 1e-15 && (got[1].1, got[1].2) == (1, 1));
        assert!((got[2].0 - 3.0).abs() < 1e-15 && (got[2].1, got[2].2) == (2, 0));
    }

    #[test]
    fn square_lattice_below_three() {
        let l = lattice_lengths(LatticeKind::Square, 3.0);
        let got: Vec<(u64, i64, i64)> = l.values.iter().map(|v| (v.norm, v.a, v.b)).collect();
        assert_eq!(got, vec![(1, 1, 0), (2, 1, 1), (4, 2, 0)]);
    }

    #[test]
    fn tiny_cutoff_is_empty() {
        assert!(lattice_lengths(LatticeKind::Triangle, 0.1)
            .values
            .is_empty());
        assert!(lattice_lengths(LatticeKind::Square, 0.1).values.is_empty());
    }

    #[test]
    fn closed_forms() {
        let t = LatticeKind::Triangle;
        assert_eq!(t.closed_form(1), "3/2");
        assert_eq!(t.closed_form(3), "3*sqrt(3)/2");
        assert_eq!(t.closed_form(4), "3");
        assert_eq!(t.closed_form(12), "3*sqrt(3)");
        let s = LatticeKind::Square;
        assert_eq!(s.closed_form(1), "sqrt(2)");
        assert_eq!(s.closed_form(2), "2");
        assert_eq!(s.closed_form(4), "2*sqrt(2)");
    }

    #[test]
    fn gap_examples() {
        let t = lattice_lengths(LatticeKind::Triangle, 10.0);
        let g = min_sum_at_least(&t, 9.0 / 4.0).unwrap();
        assert!((g.value - 1.5 * 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(g.summands.len(), 1);
        let g = min_sum_at_least(&t, 1.0).unwrap();
        assert_eq!(g.value, 1.5);
        let g = min_sum_at_least(&t, 3.0).unwrap();
        assert!((g.value - 3.0).abs() < 1e-15);

        let s = lattice_lengths(LatticeKind::Square, 10.0);
        let g = min_sum_at_least(&s, 1.5 * 2f64.sqrt()).unwrap();
        assert!((g.value - 2.0 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nearest_lengths() {
        let t = LatticeKind::Triangle;
        let v = nearest_length(t, 1.5);
        assert_eq!((v.a, v.b, v.norm), (1, 0, 1));
        let v = nearest_length(t, 1.5 * 3f64.sqrt());
        assert_eq!((v.a, v.b), (1, 1));
        let v = nearest_length(t, 3.0 * 3f64.sqrt());
        assert_eq!((v.a, v.b), (2, 2));
        let v = nearest_length(t, 3.0);
        assert_eq!((v.a, v.b), (2, 0));
        let v = nearest_length(LatticeKind::Square, 2.0 * 2f64.sqrt() + 0.01);
        assert_eq!((v.a, v.b, v.norm), (2, 0, 4));
    }

    #[test]
    fn nearest_matches_enumeration() {
        for kind in [LatticeKind::Triangle, LatticeKind::Square] {
            let all = lattice_lengths(kind, 40.0);
            for k in 0..400 {
                let x = 0.05 + k as f64 * 0.09;
                let want = all
                    .values
                    .iter()
                    .min_by(|p, q| (p.value - x).abs().total_cmp(&(q.value - x).abs()))
                    .unwrap();
                let got = nearest_length(kind, x);
                assert!(((got.value - x).abs() - (want.value - x).abs()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gap_rejects_short_lattice() {
        let t = lattice_lengths(LatticeKind::Triangle, 2.0);
        assert!(matches!(
            min_sum_at_least(&t, 2.25),
            Err(WidthError::InsufficientLattice { .. })
        ));
        assert!(matches!(
            min_sum_at_least(&t, -1.0),
            Err(WidthError::InvalidThreshold(_))
        ));
    }
}
