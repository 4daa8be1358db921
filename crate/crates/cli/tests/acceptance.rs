//! Acceptance criteria 1–8, one PASS/FAIL line each.

use std::fs;
use std::time::{Duration, Instant};

use clap::Parser;
use polywidth::billiards::{lattice_membership, simulate, unfold, Budget, Mode, TerminalClass};
use polywidth::geom::{eval_expr, ConvexPolygon, Isometry2, Point2, Vec2, Vector2};
use polywidth::sweepouts::{maximize_mass, Family, FamilyId, GridSpec};
use polywidth::width::{geometric_width, lattice_lengths, min_sum_at_least, LatticeKind};
use polywidth_cli::{run, Cli};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed<F: FnOnce() -> Outcome>(f: F) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn c1_widths() -> Outcome {
    let half = ConvexPolygon::new(vec![
        Vec2::new(-0.5f64.sqrt(), -0.5f64.sqrt()),
        Vec2::new(0.5f64.sqrt(), -0.5f64.sqrt()),
        Vec2::new(0.5f64.sqrt(), 0.5f64.sqrt()),
    ])
    .unwrap();
    let cases = [
        ("T", ConvexPolygon::equilateral_triangle(), 1.5),
        ("S", ConvexPolygon::unit_circle_square(), 2f64.sqrt()),
        ("half-S", half, 1.0),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, poly, want) in cases {
        let t = Instant::now();
        let w = geometric_width(&poly).value;
        let dt = t.elapsed();
        ok &= (w - want).abs() <= 1e-12 && dt < Duration::from_millis(1);
        parts.push(format!("{name}={w} ({dt:?})"));
    }
    check(ok, parts.join(", "))
}

fn c2_phi() -> Outcome {
    let r = single_threaded(|| {
        maximize_mass(
            &Family::phi_t(),
            &GridSpec::new(FamilyId::PhiT.default_grid()),
        )
        .unwrap()
    });
    check(
        (r.best - 1.5).abs() <= 1e-7 && r.max_sampled <= 1.5 + 1e-9,
        format!("best {} max sampled {}", r.best, r.max_sampled),
    )
}

fn c3_planes() -> Outcome {
    let three_l = 3.0 * 3f64.sqrt() / 2.0;
    let r = maximize_mass(
        &Family::planes_tet(),
        &GridSpec::new(FamilyId::PlanesTet.default_grid()),
    )
    .unwrap();
    check(
        r.max_sampled <= three_l + 1e-9 && r.best >= three_l - 1e-3,
        format!(
            "best {} max sampled {} (3l = {three_l})",
            r.best, r.max_sampled
        ),
    )
}

fn c4_square() -> Outcome {
    let lines = maximize_mass(
        &Family::lines_s(),
        &GridSpec::new(FamilyId::LinesP.default_grid()),
    )
    .unwrap();
    let hyp = maximize_mass(
        &Family::hyperbola_s(),
        &GridSpec::new(FamilyId::HyperbolaS.default_grid()),
    )
    .unwrap();
    // The D4 orbit of xy = 0 is ±(1, 0, 0, 0).
    let c = &hyp.argmax.coefficients;
    let off_xy = c[1].abs().max(c[2].abs()).max(c[3].abs());
    let ok = (lines.best - 2.0).abs() <= 1e-7
        && (hyp.best - 8f64.sqrt()).abs() <= 1e-7
        && (c[0].abs() - 1.0).abs() <= 1e-6
        && off_xy <= 1e-3;
    check(
        ok,
        format!("lines {} hyperbola {} at {:?}", lines.best, hyp.best, c),
    )
}

fn c5_reproduce() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cli = Cli::parse_from(["polywidth", "reproduce-all", "--out", out]);
    let mut stdout = Vec::new();
    let code = run(&cli, &mut stdout).unwrap();
    let table = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut rdr = csv::Reader::from_reader(table.as_bytes());
    let mut ok = code == 0;
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let certified: f64 = rec[4].parse().unwrap_or(f64::NAN);
        let closed = eval_expr(&rec[5]).unwrap_or(f64::NAN);
        ok &= (certified - closed).abs() <= 1e-9;
        rows += 1;
    }
    ok &= rows == 7;
    check(ok, format!("exit {code}, {rows} rows"))
}

fn d3(k: usize) -> Isometry2 {
    let t = ConvexPolygon::equilateral_triangle();
    let c = t.centroid();
    let third = std::f64::consts::TAU / 3.0;
    if k < 3 {
        Isometry2::rotation(c, k as f64 * third)
    } else {
        Isometry2::reflection(c, t.vertex(k - 3) - c)
    }
}

/// Altitudes, Fagnano orbits, doubled altitudes and their parallel shifts.
fn symmetric_start(kind: usize, f: f64) -> (Point2, Vector2, Mode) {
    let t = ConvexPolygon::equilateral_triangle();
    let [a, b, c] = [t.vertex(0), t.vertex(1), t.vertex(2)];
    let (mab, mbc) = (t.edge(0).midpoint(), t.edge(1).midpoint());
    match kind {
        0 => (mab, c - mab, Mode::Plain),
        1 => (mab, c - mab, Mode::TBilliard),
        2 => (a, mbc - a, Mode::Plain),
        3 => (mab, mbc - mab, Mode::Plain),
        4 => (mab.lerp(mbc, f), mbc - mab, Mode::Plain),
        5 => (mab.lerp(c, f), c - mab, Mode::TBilliard),
        _ => (a.lerp(b, 0.05 + 0.9 * f), c - a, Mode::Plain),
    }
}

fn c6_quantization() -> Outcome {
    let t = ConvexPolygon::equilateral_triangle();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_fit = 0.0f64;
    let mut closed = 0;
    for i in 0..1000 {
        let (p, d, mode) = symmetric_start(i % 7, rng.gen_range(0.05..0.95));
        let g = d3(rng.gen_range(0..6));
        let tr = simulate(&t, g.apply(p), g.linear(d), mode, Budget::for_polygon(&t)).unwrap();
        match lattice_membership(&tr) {
            Some(fit) => {
                closed += 1;
                worst_fit = worst_fit.max(fit.residual);
            }
            None => worst_fit = f64::INFINITY,
        }
    }
    let mut worst_unfold = 0.0f64;
    let mut truncated = 0;
    for _ in 0..1000 {
        let w: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
        let s = w.iter().sum::<f64>();
        let p = (0..3).fold(Vec2::new(0.0, 0.0), |acc, k| acc + t.vertex(k) * (w[k] / s));
        let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mode = if rng.gen() {
            Mode::TBilliard
        } else {
            Mode::Plain
        };
        let d = Vec2::new(angle.cos(), angle.sin());
        let tr = simulate(&t, p, d, mode, Budget::for_polygon(&t)).unwrap();
        if matches!(tr.terminal, TerminalClass::Truncated { .. }) {
            truncated += 1;
            worst_unfold = worst_unfold.max(unfold(&tr, &t).residual);
        }
    }
    check(
        closed == 1000 && worst_fit <= 1e-6 && truncated >= 900 && worst_unfold <= 1e-9,
        format!(
            "{closed}/1000 closed, worst lattice residual {worst_fit:.1e}; \
             {truncated} truncated, worst unfold residual {worst_unfold:.1e}"
        ),
    )
}

/// Smallest multiset sum `≥ threshold`, by exhaustive enumeration.
fn brute_gap(values: &[f64], threshold: f64) -> f64 {
    fn go(values: &[f64], from: usize, sum: f64, threshold: f64, best: &mut f64) {
        if sum >= threshold * (1.0 - 1e-12) {
            *best = best.min(sum);
            return;
        }
        for i in from..values.len() {
            if sum + values[i] < *best {
                go(values, i, sum + values[i], threshold, best);
            }
        }
    }
    let mut best = f64::INFINITY;
    go(values, 0, 0.0, threshold, &mut best);
    best
}

fn c7_gaps() -> Outcome {
    let cases = [
        (LatticeKind::Triangle, 2.25, 1.5 * 3f64.sqrt()),
        (LatticeKind::Square, 1.5 * 2f64.sqrt(), 8f64.sqrt()),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, theta, want) in cases {
        let mut lengths: Vec<f64> = (0..=20i64)
            .flat_map(|a| (0..=20i64).map(move |b| (a, b)))
            .filter(|&(a, b)| a + b > 0)
            .map(|(a, b)| match kind {
                LatticeKind::Triangle => 1.5 * ((a * a + a * b + b * b) as f64).sqrt(),
                LatticeKind::Square => (2.0 * (a * a + b * b) as f64).sqrt(),
            })
            .filter(|&v| v <= 10.0)
            .collect();
        lengths.sort_by(f64::total_cmp);
        lengths.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        let oracle = brute_gap(&lengths, theta);
        let got = min_sum_at_least(&lattice_lengths(kind, 10.0), theta)
            .unwrap()
            .value;
        ok &= (got - oracle).abs() <= 1e-12 && (got - want).abs() <= 1e-12;
        parts.push(format!("{kind}: {got} (oracle {oracle})"));
    }
    check(ok, parts.join(", "))
}

fn main() {
    let start = Instant::now();
    let criteria: [Criterion; 7] = [
        (
            "widths of T, S and half-S",
            Duration::from_secs(1),
            c1_widths,
        ),
        (
            "phi-T maximum, single thread",
            Duration::from_secs(30),
            c2_phi,
        ),
        (
            "tetrahedron plane sections",
            Duration::from_secs(60),
            c3_planes,
        ),
        (
            "square line and hyperbola sweepouts",
            Duration::from_secs(60),
            c4_square,
        ),
        (
            "reproduce-all certifies seven widths",
            Duration::from_secs(300),
            c5_reproduce,
        ),
        (
            "billiard quantization and unfolding",
            Duration::from_secs(600),
            c6_quantization,
        ),
        (
            "lattice gaps against brute force",
            Duration::from_secs(60),
            c7_gaps,
        ),
    ];
    let mut all = true;
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (o, dt) = timed(f);
        let ok = o.ok && dt < limit;
        all &= ok;
        println!(
            "criterion {}: {} {name}: {} [{:.2?}]",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            dt
        );
    }
    let dt = start.elapsed();
    let in_time = dt < Duration::from_secs(600);
    println!(
        "criterion 8: {} fixed seed {SEED:#x}, headless run [{dt:.2?}]",
        if in_time { "PASS" } else { "FAIL" }
    );
    if !(all && in_time) {
        std::process::exit(1);
    }
}
