use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One coordinate of a compact parameter box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    /// Periodic ranges wrap around and the grid excludes `hi`.
    pub periodic: bool,
}

impl ParamRange {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        ParamRange {
            lo,
            hi,
            periodic: false,
        }
    }

    pub const fn periodic(lo: f64, hi: f64) -> Self {
        ParamRange {
            lo,
            hi,
            periodic: true,
        }
    }

    fn step(&self, n: usize) -> f64 {
        if self.periodic {
            (self.hi - self.lo) / n as f64
        } else {
            (self.hi - self.lo) / (n.max(2) - 1) as f64
        }
    }

    fn node(&self, i: usize, n: usize) -> f64 {
        if n == 1 && !self.periodic {
            return 0.5 * (self.lo + self.hi);
        }
        self.lo + i as f64 * self.step(n)
    }

    fn wrap(&self, x: f64) -> f64 {
        if self.periodic {
            let w = self.hi - self.lo;
            self.lo + (x - self.lo).rem_euclid(w)
        } else {
            x.clamp(self.lo, self.hi)
        }
    }
}

/// Coarse grid plus shrinking local grids around the best cells.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Coarse points per dimension.
    pub per_dim: usize,
    pub rounds: usize,
    pub shrink: f64,
    /// Number of coarse cells that get refined.
    pub top_k: usize,
    /// Local grid points per dimension (odd, centred on the incumbent).
    pub local: usize,
}

impl GridSpec {
    pub fn new(per_dim: usize) -> Self {
        GridSpec {
            per_dim,
            rounds: 40,
            shrink: 0.5,
            top_k: 8,
            local: 5,
        }
    }
}

/// Outcome of a grid search, before it is tied back to a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best: f64,
    pub argmax: Vec<f64>,
    pub coarse_best: f64,
    /// Largest value seen at any evaluated point.
    pub max_sampled: f64,
    pub samples: usize,
    /// Best value after the coarse pass and after each refinement round.
    pub history: Vec<f64>,
}

const TIE: f64 = 1e-12;

/// Order by value (descending, ties within 1e-12) and then by parameters.
fn rank(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> Ordering {
    let qa = (a.0 / TIE).round();
    let qb = (b.0 / TIE).round();
    qb.total_cmp(&qa).then_with(|| {
        a.1.iter()
            .zip(&b.1)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn grid_point(ranges: &[ParamRange], mut idx: usize, n: usize) -> Vec<f64> {
    let mut p = vec![0.0; ranges.len()];
    for k in (0..ranges.len()).rev() {
        p[k] = ranges[k].node(idx % n, n);
        idx /= n;
    }
    p
}

struct Refined {
    best: (f64, Vec<f64>),
    /// Incumbent value when each step halving happens.
    per_round: Vec<f64>,
    samples: usize,
    max_seen: f64,
}

/// Pattern search from one coarse cell.
///
/// The local grid keeps its step while the incumbent improves and halves it
/// after a pass without improvement; `spec.rounds` halvings end the search.
fn refine<F>(
    ranges: &[ParamRange],
    spec: &GridSpec,
    offsets: &[Vec<i64>],
    coarse_step: &[f64],
    start: (f64, Vec<f64>),
    f: &F,
) -> Refined
where
    F: Fn(&[f64]) -> Option<f64>,
{
    let mut step: Vec<f64> = coarse_step.iter().map(|s| s * spec.shrink).collect();
    let mut cur = start;
    let mut per_round = Vec::with_capacity(spec.rounds);
    let mut samples = 0;
    let mut max_seen = f64::NEG_INFINITY;
    let mut passes = 0;
    while per_round.len() < spec.rounds {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for o in offsets {
            let p: Vec<f64> = cur
                .1
                .iter()
                .zip(o)
                .zip(ranges)
                .zip(&step)
                .map(|(((c, &k), r), s)| r.wrap(c + k as f64 * s))
                .collect();
            samples += 1;
            if let Some(v) = f(&p) {
                max_seen = max_seen.max(v);
                let cand = (v, p);
                if best.as_ref().is_none_or(|b| rank(&cand, b).is_lt()) {
                    best = Some(cand);
                }
            }
        }
        passes += 1;
        // the incumbent only moves on a genuine improvement
        let improved = best.filter(|b| b.0 > cur.0 + 1e-14 * cur.0.abs().max(1.0));
        match improved {
            Some(b) if passes < MAX_PASSES_PER_ROUND * spec.rounds => cur = b,
            _ => {
                per_round.push(cur.0);
                for s in step.iter_mut() {
                    *s *= spec.shrink;
                }
            }
        }
    }
    Refined {
        best: cur,
        per_round,
        samples,
        max_seen,
    }
}

const MAX_PASSES_PER_ROUND: usize = 25;

/// Maximize `f` over the box. Points where `f` is `None` are skipped.
///
/// Evaluation is parallel but results are merged by index and ranked by
/// (value, parameters), so the outcome does not depend on scheduling.
pub fn grid_maximize<F>(ranges: &[ParamRange], spec: &GridSpec, f: F) -> Option<SearchResult>
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let n = spec.per_dim.max(1);
    let total = n.checked_pow(ranges.len() as u32).expect("grid too large");
    let values: Vec<Option<f64>> = (0..total)
        .into_par_iter()
        .map(|i| f(&grid_point(ranges, i, n)))
        .collect();
    let mut samples = total;
    let mut cells: Vec<(f64, Vec<f64>)> = values
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (v, grid_point(ranges, i, n))))
        .collect();
    if cells.is_empty() {
        return None;
    }
    let mut max_sampled = cells.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    cells.sort_by(rank);
    cells.truncate(spec.top_k.max(1));
    let coarse_best = cells[0].0;
    let mut history = vec![coarse_best];

    let half = (spec.local.max(3) / 2) as i64;
    let offsets: Vec<Vec<i64>> = {
        let width = (2 * half + 1) as usize;
        let count = width.pow(ranges.len() as u32);
        (0..count)
            .map(|mut i| {
                let mut o = vec![0i64; ranges.len()];
                for k in (0..ranges.len()).rev() {
                    o[k] = (i % width) as i64 - half;
                    i /= width;
                }
                o
            })
            .collect()
    };
    let coarse_step: Vec<f64> = ranges.iter().map(|r| r.step(n)).collect();
    let refined: Vec<Refined> = cells
        .par_iter()
        .map(|cell| refine(ranges, spec, &offsets, &coarse_step, cell.clone(), &f))
        .collect();
    for r in 0..spec.rounds {
        history.push(
            refined
                .iter()
                .map(|c| c.per_round[r])
                .fold(f64::NEG_INFINITY, f64::max),
        );
    }
    for (cell, r) in cells.iter_mut().zip(refined) {
        samples += r.samples;
        max_sampled = max_sampled.max(r.max_seen);
        *cell = r.best;
    }
    cells.sort_by(rank);
    let (best, argmax) = cells.swap_remove(0);
    Some(SearchResult {
        best,
        argmax,
        coarse_best,
        max_sampled,
        samples,
        history,
    })
}
