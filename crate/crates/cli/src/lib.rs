//! Command-line front end for `polywidth`.
//!
//! [`run`] executes a parsed [`Cli`], prints the primary JSON document to the
//! given writer and writes the requested artifacts to `--out`. The returned
//! status follows the [`exit`] codes.

mod points;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use polywidth::billiards::{
    simulate, trajectory_json, trajectory_svg, BilliardError, Budget, Mode, TerminalClass,
};
use polywidth::geom::{
    eval_expr, parse_polygon, parse_tetrahedron, polygon_chord, Chord, ConvexPolygon, Tetrahedron,
};
use polywidth::svg;
use polywidth::sweepouts::{
    maximize_mass, AxisRect, Family, FamilyId, GridSpec, PhiMap, SweepError,
};
use polywidth::width::{
    certify, decimal17, geometric_width, lattice_lengths, max_parallel_chord, min_sum_at_least,
    CertifyError, CertifyOptions, LatticeKind, WidthCertificate, WidthError, WidthProblem,
};

pub use points::{parse_direction, parse_point};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const BOUNDS: i32 = 3;
    pub const BUDGET: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(
    name = "polywidth",
    version,
    about = "Widths, billiards and sweepouts of convex polygons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Built-in domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    /// Equilateral triangle inscribed in the unit circle.
    #[value(name = "T")]
    T,
    /// Square inscribed in the unit circle.
    #[value(name = "S")]
    S,
    /// Regular tetrahedron of side √3/2.
    #[value(name = "tetrahedron")]
    Tetrahedron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Source {
    /// Built-in domain.
    #[arg(long, conflicts_with = "input")]
    pub domain: Option<Domain>,
    /// Geometry file: `{"vertices": [[x, y], ...]}` or `{"vertices3": [[x, y, z], ...]}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Directory for artifact files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated artifact formats.
    #[arg(long, value_delimiter = ',')]
    pub format: Vec<Format>,
    /// Omit timestamps from SVG output.
    #[arg(long)]
    pub seedless: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Search {
    /// Coarse grid points per dimension (family default if omitted).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Refinement rounds.
    #[arg(long)]
    pub rounds: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometric width and its minimizing direction.
    Width {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Simulate a billiard trajectory.
    Billiard {
        #[command(flatten)]
        source: Source,
        /// Start point: `mid:AB`, `vertex:A` or `x,y`.
        #[arg(long, default_value = "mid:AB", allow_hyphen_values = true)]
        start: String,
        /// Direction: `to:<point>` or `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        /// `plain` or `t-billiard`.
        #[arg(long, default_value = "plain")]
        mode: Mode,
        /// Bounce budget (default 10000).
        #[arg(long)]
        max_bounces: Option<usize>,
        /// Length budget (default 1000 times the diameter).
        #[arg(long)]
        max_length: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Maximize the mass of a sweepout family.
    SweepMax {
        /// phi-T, lines-P (alias lines-S), hyperbola-S, planes-tet or pair-phi-T.
        #[arg(long)]
        family: FamilyId,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Billiard length lattice and the smallest lattice sum above a threshold.
    Lattice {
        /// T for the triangle lattice, S for the square lattice.
        #[arg(long, default_value = "T")]
        domain: Domain,
        #[arg(long, default_value_t = 10.0)]
        cutoff: f64,
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Certify a p-width by matching lower and upper bounds.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
    /// Certify the seven closed-form p-widths and write a summary table.
    ReproduceAll {
        #[command(flatten)]
        search: Search,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Io(_) | CliError::Failed(_) => exit::FAILURE,
        }
    }
}

impl From<BilliardError> for CliError {
    fn from(e: BilliardError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        match e {
            SweepError::GridTooCoarse { .. }
            | SweepError::NotEquilateral
            | SweepError::NotAxisRectangle
            | SweepError::UnknownFamily(_) => CliError::Parse(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<WidthError> for CliError {
    fn from(e: WidthError) -> Self {
        match e {
            WidthError::InvalidThreshold(_) | WidthError::InsufficientLattice { .. } => {
                CliError::Parse(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

enum Geometry {
    Polygon(ConvexPolygon),
    Tetrahedron(Tetrahedron),
}

struct Loaded {
    name: String,
    geometry: Geometry,
}

impl Loaded {
    fn polygon(self, what: &str) -> Result<(String, ConvexPolygon), CliError> {
        match self.geometry {
            Geometry::Polygon(p) => Ok((self.name, p)),
            Geometry::Tetrahedron(_) => Err(CliError::Parse(format!("{what} needs a polygon"))),
        }
    }
}

fn builtin(d: Domain) -> Loaded {
    let (name, geometry) = match d {
        Domain::T => (
            "T",
            Geometry::Polygon(ConvexPolygon::equilateral_triangle()),
        ),
        Domain::S => ("S", Geometry::Polygon(ConvexPolygon::unit_circle_square())),
        Domain::Tetrahedron => (
            "tetrahedron",
            Geometry::Tetrahedron(Tetrahedron::regular(3f64.sqrt() / 2.0).expect("positive side")),
        ),
    };
    Loaded {
        name: name.into(),
        geometry,
    }
}

fn load(source: &Source, default: Option<Domain>) -> Result<Loaded, CliError> {
    if let Some(path) = &source.input {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let doc: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
        let geometry = if doc.get("vertices3").is_some() {
            Geometry::Tetrahedron(
                parse_tetrahedron(&text).map_err(|e| CliError::Parse(e.to_string()))?,
            )
        } else {
            Geometry::Polygon(parse_polygon(&text).map_err(|e| CliError::Parse(e.to_string()))?)
        };
        let name = path
            .file_stem()
            .map_or("input".into(), |s| s.to_string_lossy().into_owned());
        return Ok(Loaded { name, geometry });
    }
    source
        .domain
        .or(default)
        .map(builtin)
        .ok_or_else(|| CliError::Parse("one of --domain or --input is required".into()))
}

struct Artifacts<'a> {
    output: &'a Output,
    formats: Vec<Format>,
}

impl<'a> Artifacts<'a> {
    fn new(output: &'a Output, default: &[Format]) -> Result<Self, CliError> {
        let formats = if output.format.is_empty() {
            default.to_vec()
        } else {
            output.format.clone()
        };
        if output.out.is_none() && formats.iter().any(|f| *f != Format::Json) {
            return Err(CliError::Parse("--format csv or svg needs --out".into()));
        }
        Ok(Artifacts { output, formats })
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    fn write(
        &self,
        f: Format,
        file: &str,
        content: impl FnOnce() -> String,
    ) -> Result<(), CliError> {
        if let (true, Some(dir)) = (self.wants(f), &self.output.out) {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(file), content())?;
        }
        Ok(())
    }

    fn json(&self, file: &str, doc: &Value) -> Result<(), CliError> {
        self.write(Format::Json, file, || pretty(doc))
    }

    fn comment(&self) -> Option<String> {
        if self.output.seedless {
            return None;
        }
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Some(format!("generated at unix time {secs}"))
    }
}

fn pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

/// Run a command, printing its JSON document to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let (doc, code) = match &cli.command {
        Command::Width { source, output } => width(source, output)?,
        Command::Billiard {
            source,
            start,
            dir,
            mode,
            max_bounces,
            max_length,
            output,
        } => billiard(source, start, dir, *mode, *max_bounces, *max_length, output)?,
        Command::SweepMax {
            family,
            source,
            search,
            output,
        } => sweep_max(*family, source, search, output)?,
        Command::Lattice {
            domain,
            cutoff,
            threshold,
            output,
        } => lattice(*domain, *cutoff, *threshold, output)?,
        Command::Certify {
            source,
            p,
            search,
            output,
        } => certify_cmd(source, *p, search, output)?,
        Command::ReproduceAll { search, output } => reproduce_all(search, output)?,
    };
    stdout.write_all(pretty(&doc).as_bytes())?;
    Ok(code)
}

fn width(source: &Source, output: &Output) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json])?;
    let (name, poly) = load(source, None)?.polygon("width")?;
    let w = geometric_width(&poly);
    let doc = json!({
        "domain": name,
        "width": w.value,
        "decimal": decimal17(w.value),
        "direction": [w.direction.x, w.direction.y],
    });
    art.json("width.json", &doc)?;
    art.write(Format::Csv, "width.csv", || {
        csv_string(
            &["domain", "width", "dx", "dy"],
            &[vec![
                name.clone(),
                decimal17(w.value),
                w.direction.x.to_string(),
                w.direction.y.to_string(),
            ]],
        )
    })?;
    art.write(Format::Svg, "width.svg", || {
        let (_, line) = max_parallel_chord(&poly, w.direction);
        let chord = match polygon_chord(&poly, &line) {
            Chord::Segment(s) | Chord::EdgeOverlap { segment: s, .. } => vec![s.a, s.b],
            Chord::Empty => vec![],
        };
        svg::figure(&poly, &[chord], art.comment().as_deref())
    })?;
    Ok((doc, exit::OK))
}

fn billiard(
    source: &Source,
    start: &str,
    dir: &str,
    mode: Mode,
    max_bounces: Option<usize>,
    max_length: Option<f64>,
    output: &Output,
) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json])?;
    let (_, poly) = load(source, None)?.polygon("billiard")?;
    let p = parse_point(start, &poly).map_err(CliError::Parse)?;
    let d = parse_direction(dir, &poly, p).map_err(CliError::Parse)?;
    let mut budget = Budget::for_polygon(&poly);
    if let Some(b) = max_bounces {
        budget.max_bounces = b;
    }
    if let Some(l) = max_length {
        budget.max_length = l;
    }
    let traj = simulate(&poly, p, d, mode, budget)?;
    let doc = trajectory_json(&traj);
    art.json("trajectory.json", &doc)?;
    art.write(Format::Csv, "trajectory.csv", || {
        let rows: Vec<Vec<String>> = traj
            .segments
            .iter()
            .map(|s| {
                [s.a.x, s.a.y, s.b.x, s.b.y]
                    .iter()
                    .map(f64::to_string)
                    .collect()
            })
            .collect();
        csv_string(&["x0", "y0", "x1", "y1"], &rows)
    })?;
    art.write(Format::Svg, "trajectory.svg", || {
        trajectory_svg(&poly, &traj, art.comment().as_deref())
    })?;
    let code = match traj.terminal {
        TerminalClass::Truncated { .. } => exit::BUDGET,
        _ => exit::OK,
    };
    Ok((doc, code))
}

fn build_family(id: FamilyId, source: &Source) -> Result<Family, CliError> {
    if source.domain.is_none() && source.input.is_none() {
        return Ok(Family::canonical(id));
    }
    let loaded = load(source, None)?;
    Ok(match (id, loaded.geometry) {
        (FamilyId::PlanesTet, Geometry::Tetrahedron(q)) => Family::PlanesTet(q),
        (FamilyId::PlanesTet, _) => {
            return Err(CliError::Parse("planes-tet needs a tetrahedron".into()))
        }
        (_, Geometry::Tetrahedron(_)) => {
            return Err(CliError::Parse(format!("{id} needs a polygon")))
        }
        (FamilyId::PhiT, Geometry::Polygon(p)) => Family::PhiT(PhiMap::new(p)?),
        (FamilyId::PairPhiT, Geometry::Polygon(p)) => Family::PairPhiT(PhiMap::new(p)?),
        (FamilyId::LinesP, Geometry::Polygon(p)) => Family::LinesP(p),
        (FamilyId::HyperbolaS, Geometry::Polygon(p)) => {
            Family::HyperbolaS(AxisRect::from_polygon(&p)?)
        }
    })
}

fn grid_spec(id: FamilyId, search: &Search) -> GridSpec {
    let mut g = GridSpec::new(search.grid.unwrap_or(id.default_grid()));
    if let Some(r) = search.rounds {
        g.rounds = r;
    }
    g
}

fn sweep_max(
    id: FamilyId,
    source: &Source,
    search: &Search,
    output: &Output,
) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json])?;
    let family = build_family(id, source)?;
    let grid = grid_spec(id, search);
    let report = maximize_mass(&family, &grid)?;
    let mut doc = serde_json::to_value(&report).expect("reports serialize");
    doc["decimal"] = json!(decimal17(report.best));
    art.json("sweep.json", &doc)?;
    art.write(Format::Csv, "samples.csv", || {
        let dims = family.ranges().len();
        let mut header: Vec<String> = (1..=dims).map(|k| format!("t{k}")).collect();
        header.push("mass".into());
        let rows: Vec<Vec<String>> = family
            .sample_grid(grid.per_dim)
            .into_iter()
            .map(|(params, mass)| {
                params
                    .iter()
                    .map(f64::to_string)
                    .chain(std::iter::once(
                        mass.map_or(String::new(), |m| m.to_string()),
                    ))
                    .collect()
            })
            .collect();
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        csv_string(&header, &rows)
    })?;
    if let (Some(domain), Some(chain)) = (family.domain(), family.chain(&report.argmax.params)) {
        art.write(Format::Svg, "argmax.svg", || {
            let lines: Vec<_> = chain.pieces.iter().map(|p| p.points()).collect();
            svg::figure(&domain, &lines, art.comment().as_deref())
        })?;
    }
    Ok((doc, exit::OK))
}

fn lattice(
    domain: Domain,
    cutoff: f64,
    threshold: Option<f64>,
    output: &Output,
) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json])?;
    let kind = match domain {
        Domain::T => LatticeKind::Triangle,
        Domain::S => LatticeKind::Square,
        Domain::Tetrahedron => {
            return Err(CliError::Parse("lattices exist for T and S only".into()))
        }
    };
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(CliError::Parse(format!(
            "cutoff must be positive, got {cutoff}"
        )));
    }
    let l = lattice_lengths(kind, cutoff);
    let values: Vec<Value> = l
        .values
        .iter()
        .map(|v| {
            json!({
                "value": v.value,
                "norm": v.norm,
                "a": v.a,
                "b": v.b,
                "closed_form": kind.closed_form(v.norm),
            })
        })
        .collect();
    let mut doc = json!({ "kind": kind.to_string(), "cutoff": cutoff, "values": values });
    if let Some(theta) = threshold {
        let g = min_sum_at_least(&l, theta)?;
        let parts: Vec<String> = g
            .summands
            .iter()
            .map(|v| kind.closed_form(v.norm))
            .collect();
        doc["gap"] = json!({
            "threshold": theta,
            "value": g.value,
            "decimal": decimal17(g.value),
            "summands": parts,
        });
    }
    art.json("lattice.json", &doc)?;
    art.write(Format::Csv, "lattice.csv", || {
        let rows: Vec<Vec<String>> = l
            .values
            .iter()
            .map(|v| {
                vec![
                    decimal17(v.value),
                    v.norm.to_string(),
                    v.a.to_string(),
                    v.b.to_string(),
                    kind.closed_form(v.norm),
                ]
            })
            .collect();
        csv_string(&["value", "norm", "a", "b", "closed_form"], &rows)
    })?;
    Ok((doc, exit::OK))
}

fn options(search: &Search) -> CertifyOptions {
    CertifyOptions {
        grid: search.grid,
        rounds: search.rounds,
    }
}

/// Certificate, or the partial certificate when the bounds do not meet.
fn certify_problem(
    problem: &WidthProblem,
    opts: &CertifyOptions,
) -> Result<WidthCertificate, CliError> {
    match certify(problem, opts) {
        Ok(c) => Ok(c),
        Err(CertifyError::BoundsDoNotMeet { certificate }) => Ok(*certificate),
        Err(CertifyError::Unsupported(s)) => Err(CliError::Parse(format!(
            "no certification chain for {s} (T: p = 1..4, S: p = 1..3, input polygon: p = 1)"
        ))),
        Err(CertifyError::Sweep(e)) => Err(e.into()),
        Err(CertifyError::Width(e)) => Err(e.into()),
    }
}

pub const SUMMARY_COLUMNS: [&str; 7] = [
    "problem",
    "p",
    "lower",
    "upper",
    "certified",
    "closed_form",
    "abs_err",
];

/// One summary row; `abs_err` compares the certified value to its closed form.
pub fn summary_row(c: &WidthCertificate) -> Vec<String> {
    let abs_err = match (c.certified, &c.closed_form) {
        (Some(v), Some(cf)) => {
            eval_expr(cf).map_or(String::new(), |x| format!("{:e}", (v - x).abs()))
        }
        _ => String::new(),
    };
    vec![
        c.problem.clone(),
        c.p.to_string(),
        decimal17(c.lower.value),
        decimal17(c.upper.value),
        c.certified.map_or(String::new(), decimal17),
        c.closed_form.clone().unwrap_or_default(),
        abs_err,
    ]
}

fn certify_cmd(
    source: &Source,
    p: u32,
    search: &Search,
    output: &Output,
) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json])?;
    let loaded = load(source, None)?;
    let problem = match (&loaded.geometry, source.input.is_some()) {
        (Geometry::Tetrahedron(_), _) => {
            return Err(CliError::Parse("certify needs a polygon".into()))
        }
        (Geometry::Polygon(poly), true) if p == 1 => WidthProblem::Polygon(poly.clone()),
        (Geometry::Polygon(_), true) => {
            return Err(CliError::Parse("input polygons support --p 1 only".into()))
        }
        (Geometry::Polygon(_), false) if loaded.name == "T" => WidthProblem::Triangle(p),
        (Geometry::Polygon(_), false) => WidthProblem::Square(p),
    };
    let cert = certify_problem(&problem, &options(search))?;
    let doc = cert.to_json();
    art.json("certificate.json", &doc)?;
    art.write(Format::Csv, "certificate.csv", || {
        csv_string(&SUMMARY_COLUMNS, &[summary_row(&cert)])
    })?;
    let code = if cert.certified.is_some() {
        exit::OK
    } else {
        exit::BOUNDS
    };
    Ok((doc, code))
}

fn reproduce_all(search: &Search, output: &Output) -> Result<(Value, i32), CliError> {
    let art = Artifacts::new(output, &[Format::Json, Format::Csv])?;
    let opts = options(search);
    let mut certs = Vec::new();
    for problem in WidthProblem::reproducible() {
        let c = certify_problem(&problem, &opts)?;
        eprintln!(
            "{problem}: lower {} upper {} {}",
            decimal17(c.lower.value),
            decimal17(c.upper.value),
            match &c.closed_form {
                Some(cf) if c.certified.is_some() => format!("certified {cf}"),
                _ => "NOT certified".into(),
            }
        );
        certs.push(c);
    }
    let all = certs.iter().all(|c| c.certified.is_some());
    let rows: Vec<Vec<String>> = certs.iter().map(summary_row).collect();
    let summary: Vec<Value> = rows
        .iter()
        .map(|r| {
            SUMMARY_COLUMNS
                .iter()
                .zip(r)
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect::<serde_json::Map<_, _>>()
                .into()
        })
        .collect();
    let doc = json!({
        "all_certified": all,
        "options": { "grid": opts.grid, "rounds": opts.rounds },
        "summary": summary,
        "certificates": certs.iter().map(WidthCertificate::to_json).collect::<Vec<_>>(),
    });
    art.json("reproduce.json", &doc)?;
    art.write(Format::Csv, "summary.csv", || {
        csv_string(&SUMMARY_COLUMNS, &rows)
    })?;
    Ok((doc, if all { exit::OK } else { exit::BOUNDS }))
}
