mod filter;
mod record;

use std::fs;
use std::io::{self, BufRead, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use twodist_core::error::Error;
use twodist_core::geometry::{
    circumcenter, jspherical_embedding_with, kuperberg_decompose, realize_with, PointConfig, PointFactorization,
    Tolerances,
};
use twodist_core::graph::{all_graphs, parse_edge_list_limited, parse_graph6_limited, Graph};
use twodist_core::invariants::{profile_with, Settings};
use twodist_core::join::join_decompose_with;
use twodist_core::oracle::{reciprocal_check, verify_profile, OracleReport};

use filter::Filter;
use record::{analyze, round15, AnalysisRecord, CsvRow, ErrorRecord};

const DEFAULT_MAX_N: usize = 16;
const DEFAULT_CATALOG_N: usize = 6;
const CATALOG_LIMIT: usize = 8;
const BATCH_CHUNK: usize = 256;

#[derive(Parser)]
#[command(name = "twodist", version, about = "Two-distance representation numbers of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,

    /// Distance and hull slack for numeric checks.
    #[arg(long, global = true, env = "TWODIST_TOL")]
    tol: Option<f64>,

    /// Width 2^-bits of reported enclosures.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,

    /// Largest accepted vertex count; for catalog, the census size.
    #[arg(long, global = true, env = "TWODIST_MAX_N")]
    max_n: Option<usize>,

    #[arg(long, global = true, value_enum)]
    output: Option<Output>,

    /// Worker threads for batch, catalog and verify (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Representation numbers and invariants of one graph.
    Analyze { input: String },
    /// Coordinates of a representation.
    Embed {
        input: String,
        #[arg(long, value_enum, default_value_t = Model::Euclidean)]
        model: Model,
        /// Long distance for the Euclidean model (short distance 1).
        #[arg(long)]
        b: Option<f64>,
    },
    /// Join factors and the point-set factorization of the J-spherical representation.
    Decompose { input: String },
    /// Analyze every graph6 line of a file ("-" for standard input).
    Batch { path: String },
    /// Every graph up to isomorphism with min-n ≤ n ≤ max-n that matches the filter.
    Catalog {
        /// `dim_e=K`, `dim_s=n-1`, `dim_j=n/2`, ...
        #[arg(long)]
        filter: Option<Filter>,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
    },
    /// Cross-check the invariants of one graph, or of a whole census.
    Verify {
        input: Option<String>,
        /// Check every graph on at most this many vertices instead.
        #[arg(long, conflicts_with = "input")]
        census: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Euclidean,
    Spherical,
    Jspherical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Jsonl,
    Csv,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Graph6(_) | Error::EdgeList { .. } | Error::Signature(_) => 2,
        Error::TooLarge { .. } => 3,
        Error::Undecidable { .. } => 4,
        Error::Infeasible(_) => 5,
        Error::CompleteGraph(_) => 6,
        _ => 1,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(2, e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

struct Config {
    settings: Settings,
    max_n: usize,
    format: Format,
    output: Option<Output>,
}

fn read_source(source: &str) -> io::Result<String> {
    if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(source)
    }
}

/// A graph6 word, or a path to a file holding one; edge lists always come from a file.
fn load_graph(input: &str, cfg: &Config) -> Result<Graph, Failure> {
    match cfg.format {
        Format::Graph6 => {
            let text = if input == "-" || Path::new(input).is_file() { read_source(input)? } else { input.to_string() };
            let word = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Failure::new(2, "no graph6 word in the input"))?;
            Ok(parse_graph6_limited(word, cfg.max_n)?)
        }
        Format::Edgelist => Ok(parse_edge_list_limited(&read_source(input)?, cfg.max_n)?),
    }
}

fn emit_one<T: Serialize>(value: &T) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(|e| Failure::new(1, e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

enum Row {
    Ok(AnalysisRecord),
    Err(ErrorRecord),
}

impl Row {
    fn json(&self) -> String {
        match self {
            Row::Ok(r) => serde_json::to_string(r),
            Row::Err(e) => serde_json::to_string(e),
        }
        .expect("records serialize")
    }
}

/// Writes analysis or error records in the chosen format as they arrive.
enum RecordSink<W: Write> {
    Json { out: W, first: bool },
    Jsonl(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> RecordSink<W> {
    fn new(format: Output, out: W) -> Self {
        match format {
            Output::Json => RecordSink::Json { out, first: true },
            Output::Jsonl => RecordSink::Jsonl(out),
            Output::Csv => RecordSink::Csv(Box::new(csv::Writer::from_writer(out))),
        }
    }

    fn push(&mut self, row: &Row) -> Result<(), Failure> {
        match self {
            RecordSink::Jsonl(out) => writeln!(out, "{}", row.json())?,
            RecordSink::Json { out, first } => {
                write!(out, "{}{}", if *first { "[\n" } else { ",\n" }, row.json())?;
                *first = false;
            }
            RecordSink::Csv(w) => match row {
                Row::Ok(r) => w.serialize(CsvRow::from(r))?,
                Row::Err(e) => w.serialize(CsvRow::from(e))?,
            },
        }
        Ok(())
    }

    fn finish(self) -> Result<(), Failure> {
        match self {
            RecordSink::Json { mut out, first } => {
                writeln!(out, "{}", if first { "[]" } else { "\n]" })?;
                out.flush()?;
            }
            RecordSink::Jsonl(mut out) => out.flush()?,
            RecordSink::Csv(mut w) => w.flush()?,
        }
        Ok(())
    }
}

fn cmd_analyze(input: &str, cfg: &Config) -> Result<(), Failure> {
    let g = load_graph(input, cfg)?;
    let rec = analyze(&g, &cfg.settings)?;
    match cfg.output.unwrap_or(Output::Json) {
        Output::Json | Output::Jsonl => emit_one(&rec),
        Output::Csv => {
            let mut sink = RecordSink::new(Output::Csv, io::stdout().lock());
            sink.push(&Row::Ok(rec))?;
            sink.finish()
        }
    }
}

#[derive(Serialize)]
struct Embedding {
    input: String,
    model: &'static str,
    n: usize,
    dimension: usize,
    a: f64,
    b: f64,
    /// Circumradius, when the points lie on a common sphere.
    radius: Option<f64>,
    points: Vec<Vec<f64>>,
    max_distance_residual: f64,
}

fn recentre(cfg: &mut PointConfig, center: &[f64]) {
    for p in cfg.points.iter_mut() {
        for (x, c) in p.iter_mut().zip(center) {
            *x -= c;
        }
    }
}

/// Circumradius if every point lies on one sphere within `tol`.
fn sphere_radius(cfg: &PointConfig, tol: f64) -> Option<(Vec<f64>, f64)> {
    if cfg.n() < 2 {
        return Some((vec![0.0; cfg.dim()], 0.0));
    }
    let (c, r, dev) = circumcenter(&cfg.points);
    (dev <= tol * r.max(1.0)).then_some((c, r))
}

fn cmd_embed(input: &str, model: Model, b: Option<f64>, cfg: &Config) -> Result<(), Failure> {
    let g = load_graph(input, cfg)?;
    let s = &cfg.settings;
    let tol = s.tol.distance;
    if b.is_some() && model != Model::Euclidean {
        return Err(Failure::new(2, "--b applies to the euclidean model only"));
    }
    let (name, pts, radius) = match model {
        Model::Euclidean => {
            let p = profile_with(&g, s)?;
            let b = match b {
                Some(b) => {
                    let (t0, t1) = p.feasible_interval();
                    let t = b * b;
                    if b.is_nan() || b <= 0.0 || t > t1 * (1.0 + tol) || t < t0 * (1.0 - tol) {
                        return Err(Failure::new(5, format!("b^2 = {t} lies outside the feasible window [{t0}, {t1}]")));
                    }
                    b
                }
                None if p.tau1.is_some() => p.tau1_f64().sqrt(),
                None => 2f64.sqrt(),
            };
            let pts = realize_with(&g, b, 1.0, &s.tol)?;
            let radius = sphere_radius(&pts, tol).map(|(_, r)| r);
            ("euclidean", pts, radius)
        }
        Model::Spherical => {
            let p = profile_with(&g, s)?;
            // Past τ₁ the representation is spherical only when 𝓡 is finite;
            // below τ₁ the points form a simplex.
            let t = match p.tau1_f64() {
                t if t.is_infinite() => 2.0,
                t if p.r_squared.is_finite() => t,
                t => 0.5 * (1.0 + t),
            };
            let mut pts = realize_with(&g, t.sqrt(), 1.0, &s.tol)?;
            let (c, r) = sphere_radius(&pts, tol)
                .ok_or_else(|| Failure::new(1, "the representation failed the sphere check"))?;
            recentre(&mut pts, &c);
            ("spherical", pts, Some(r))
        }
        Model::Jspherical => ("jspherical", jspherical_embedding_with(&g, s)?, Some(1.0)),
    };
    let residual = pts.distance_residual(&g);
    if residual > tol {
        return Err(Failure::new(1, format!("distance residual {residual:e} exceeds {tol:e}")));
    }
    emit_one(&Embedding {
        input: g.to_graph6(),
        model: name,
        n: g.n(),
        dimension: pts.rank,
        a: pts.a,
        b: round15(pts.b),
        radius: radius.map(round15),
        points: pts.points,
        max_distance_residual: residual,
    })
}

#[derive(Serialize)]
struct FactorOut {
    vertices: Vec<usize>,
    graph6: String,
    size: usize,
    beta_star: Option<f64>,
    dim_j: Option<usize>,
    #[serde(rename = "type")]
    kind: Option<&'static str>,
}

#[derive(Serialize)]
struct Decomposition {
    input: String,
    n: usize,
    k: usize,
    beta_star: Option<f64>,
    factors: Vec<FactorOut>,
    point_factorization: Option<PointFactorization>,
}

fn cmd_decompose(input: &str, cfg: &Config) -> Result<(), Failure> {
    let g = load_graph(input, cfg)?;
    let fac = join_decompose_with(&g, &cfg.settings)?;
    let finite = |x: f64| x.is_finite().then(|| round15(x));
    let factors = fac
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| FactorOut {
            vertices: f.vertices.clone(),
            graph6: f.graph.to_graph6(),
            size: f.vertices.len(),
            beta_star: finite(f.beta_star.value()),
            dim_j: f.dim_j,
            kind: (fac.k > 0).then_some(if i < fac.k { "I" } else { "II" }),
        })
        .collect();
    let point_factorization = if g.is_complete() {
        None
    } else {
        Some(kuperberg_decompose(&jspherical_embedding_with(&g, &cfg.settings)?)?)
    };
    emit_one(&Decomposition {
        input: g.to_graph6(),
        n: g.n(),
        k: fac.k,
        beta_star: finite(fac.beta_star()),
        factors,
        point_factorization,
    })
}

fn analyze_line(line_no: usize, raw: &str, cfg: &Config) -> Row {
    let fail = |e: Error| {
        Row::Err(ErrorRecord { line: line_no, input: raw.to_string(), error: e.to_string(), exit_code: exit_code(&e).into() })
    };
    match parse_graph6_limited(raw, cfg.max_n) {
        Ok(g) => match analyze(&g, &cfg.settings) {
            Ok(r) => Row::Ok(r),
            Err(e) => fail(e),
        },
        Err(e) => fail(e),
    }
}

fn cmd_batch(path: &str, cfg: &Config) -> Result<(), Failure> {
    let reader: Box<dyn BufRead> = if path == "-" {
        Box::new(io::BufReader::new(io::stdin()))
    } else {
        Box::new(io::BufReader::new(fs::File::open(path)?))
    };
    let mut sink = RecordSink::new(cfg.output.unwrap_or(Output::Jsonl), BufWriter::new(io::stdout().lock()));
    let mut chunk: Vec<(usize, String)> = Vec::with_capacity(BATCH_CHUNK);
    let flush = |chunk: &mut Vec<(usize, String)>, sink: &mut RecordSink<_>| -> Result<(), Failure> {
        // `collect` on an indexed parallel iterator keeps input order.
        let rows: Vec<Row> = chunk.par_iter().map(|(i, raw)| analyze_line(*i, raw, cfg)).collect();
        for r in &rows {
            sink.push(r)?;
        }
        chunk.clear();
        Ok(())
    };
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        chunk.push((i + 1, word.to_string()));
        if chunk.len() == BATCH_CHUNK {
            flush(&mut chunk, &mut sink)?;
        }
    }
    flush(&mut chunk, &mut sink)?;
    sink.finish()
}

fn census(min_n: usize, max_n: usize) -> Result<Vec<Graph>, Failure> {
    if max_n > CATALOG_LIMIT {
        return Err(Failure::new(3, format!("census limited to {CATALOG_LIMIT} vertices, asked for {max_n}")));
    }
    let mut out = Vec::new();
    for n in min_n.max(1)..=max_n {
        out.extend(all_graphs(n)?);
    }
    Ok(out)
}

fn cmd_catalog(filter: Option<Filter>, min_n: usize, cfg: &Config, max_n: usize) -> Result<(), Failure> {
    let graphs = census(min_n, max_n)?;
    let rows: Vec<Row> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| match analyze(g, &cfg.settings) {
            Ok(r) => Row::Ok(r),
            Err(e) => Row::Err(ErrorRecord { line: i + 1, input: g.to_graph6(), error: e.to_string(), exit_code: exit_code(&e).into() }),
        })
        .collect();
    let mut sink = RecordSink::new(cfg.output.unwrap_or(Output::Jsonl), BufWriter::new(io::stdout().lock()));
    for row in &rows {
        let keep = match (row, &filter) {
            (Row::Ok(r), Some(f)) => f.matches(r),
            _ => true,
        };
        if keep {
            sink.push(row)?;
        }
    }
    sink.finish()
}

fn check(g: &Graph, settings: &Settings) -> OracleReport {
    match profile_with(g, settings) {
        Ok(p) => {
            let mut rep = verify_profile(g, &p);
            rep.checks.extend(reciprocal_check(g).checks);
            rep
        }
        Err(e) => OracleReport {
            subject: g.to_graph6(),
            checks: vec![twodist_core::oracle::Check { name: "profile".into(), pass: false, detail: e.to_string() }],
            worst_residual: f64::INFINITY,
        },
    }
}

fn cmd_verify(input: Option<&str>, census_n: Option<usize>, cfg: &Config) -> Result<(), Failure> {
    let graphs = match (input, census_n) {
        (Some(i), _) => vec![load_graph(i, cfg)?],
        (None, Some(n)) => census(1, n)?,
        (None, None) => return Err(Failure::new(2, "give a graph or --census N")),
    };
    let reports: Vec<OracleReport> = graphs.par_iter().map(|g| check(g, &cfg.settings)).collect();
    let mut out = BufWriter::new(io::stdout().lock());
    for r in &reports {
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(Failure::new(1, format!("{failed} of {} graphs failed verification", reports.len())));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut settings = Settings::default();
    if let Some(t) = cli.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(Failure::new(2, "--tol must be positive"));
        }
        settings.tol = Tolerances::with_tol(t);
    }
    if let Some(b) = cli.precision_bits {
        settings.precision_bits = b;
        settings.max_precision_bits = settings.max_precision_bits.max(b);
    }
    if cli.jobs > 0 {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    let cfg = Config { settings, max_n: cli.max_n.unwrap_or(DEFAULT_MAX_N), format: cli.format, output: cli.output };
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(input, &cfg),
        Command::Embed { input, model, b } => cmd_embed(input, *model, *b, &cfg),
        Command::Decompose { input } => cmd_decompose(input, &cfg),
        Command::Batch { path } => cmd_batch(path, &cfg),
        Command::Catalog { filter, min_n } => cmd_catalog(*filter, *min_n, &cfg, cli.max_n.unwrap_or(DEFAULT_CATALOG_N)),
        Command::Verify { input, census } => cmd_verify(input.as_deref(), *census, &cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("twodist: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
