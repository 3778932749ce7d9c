//! Command-line front end. `main` only parses arguments and forwards to
//! [`execute`], so everything here is testable in-process.

mod generate;
mod report;

pub use generate::{gen_random, GenParams};
pub use report::{json_ints, HyperplaneOut, JsonInt, Report, SandwichOut, StatsOut};

use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};

use crate::cayley::{
    build_cayley, check_essential, parse_input, parse_projection_spec, preprocess, unproject, ProblemInput,
    ProjectionSpec,
};
use crate::error::{Error, Result};
use crate::exactlin::{Int, MinorCache, Rat};
use crate::geometry::TriangulatedHull;
use crate::oracle::Oracle;
use crate::reconstruct::{compute_pi_approx, compute_pi_exact, compute_pi_random, BuildState};

#[derive(Debug, Parser)]
#[command(name = "respoly", version, about = "Resultant polytopes and their projections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the polytope of a problem file.
    Run(RunConfig),
    /// Print a random essential problem file.
    Gen(GenConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Approx,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Problem file; reads standard input when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Stopping ratio vol(Q)/vol(Q_o) for approx mode, as a decimal or fraction.
    #[arg(long, default_value = "0.9")]
    pub threshold: String,
    /// Number of random directions for random mode.
    #[arg(long, default_value_t = 100)]
    pub directions: usize,
    /// Overrides the projection of the input: full, u-res, implicit or
    /// "custom b p ; b p ...".
    #[arg(long)]
    pub projection: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    /// Recompute every minor instead of caching.
    #[arg(long)]
    pub no_hash: bool,
    /// Keep specialized points inside the hull of their support.
    #[arg(long)]
    pub no_preprocess: bool,
    /// Also print full exponent vectors.
    #[arg(long)]
    pub unproject: bool,
    #[arg(long)]
    pub f_vector: bool,
    /// Print oracle, cache and timing statistics.
    #[arg(long)]
    pub stats: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: None,
            mode: Mode::Exact,
            threshold: "0.9".into(),
            directions: 100,
            projection: None,
            seed: 0,
            format: Format::Plain,
            no_hash: false,
            no_preprocess: false,
            unproject: false,
            f_vector: false,
            stats: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenConfig {
    #[arg(long)]
    pub n: usize,
    /// Size of the simplex (dense) or twice the cube side (sparse).
    #[arg(long)]
    pub delta: u32,
    #[arg(long, conflicts_with = "sparse")]
    pub dense: bool,
    #[arg(long)]
    pub sparse: bool,
    /// Points per support, one value for all or comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Projection line written into the generated file.
    #[arg(long)]
    pub projection: Option<String>,
    /// Write JSON instead of the text format.
    #[arg(long)]
    pub json: bool,
}

/// Exit status and what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Run(cfg) => read_input(cfg.input.as_ref()).and_then(|src| run(cfg, &src)),
        Command::Gen(cfg) => generate(cfg),
    };
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::NotEssential { .. } => 3,
        _ => 1,
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidArgument(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(s)
}

/// Runs on the given problem text and renders the report.
pub fn run(cfg: &RunConfig, src: &str) -> Result<String> {
    let report = solve(cfg, parse_input(src)?)?;
    Ok(match cfg.format {
        Format::Plain => report.to_plain(),
        Format::Json => report.to_json(),
    })
}

/// Exact decimal (`0.95`) or fraction (`19/20`).
pub fn parse_ratio(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidArgument(format!("not a decimal or fraction: {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a = Int::from_str(a.trim()).map_err(|_| bad())?;
        let b = Int::from_str(b.trim()).map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(a, b));
    }
    let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let num = Int::from_str(if digits.is_empty() || digits == "-" { "x" } else { &digits }).map_err(|_| bad())?;
    Ok(Rat::new(num, num_traits::pow(Int::from(10), frac.len())))
}

pub fn solve(cfg: &RunConfig, mut input: ProblemInput) -> Result<Report> {
    if let Some(p) = &cfg.projection {
        input = input.with_projection(parse_projection_spec(p)?);
    }
    let threshold = parse_ratio(&cfg.threshold)?;
    if cfg.mode == Mode::Approx && !(threshold > Rat::zero() && threshold < Rat::one()) {
        return Err(Error::InvalidArgument("threshold must lie strictly between 0 and 1".into()));
    }
    if cfg.mode == Mode::Random && cfg.directions == 0 {
        return Err(Error::InvalidArgument("at least one direction is needed".into()));
    }
    let start = Instant::now();
    let family = input.family()?;
    check_essential(&family)?;
    let family = if cfg.no_preprocess { family } else { preprocess(&family) };
    let removed: Vec<(usize, usize)> = input
        .supports
        .iter()
        .enumerate()
        .flat_map(|(b, s)| {
            let kept = &family.labels()[b];
            (0..s.len()).filter(move |p| !kept.contains(p)).map(move |p| (b, p))
        })
        .collect();
    let sys = build_cayley(&family)?;
    let cache = if cfg.no_hash { MinorCache::disabled() } else { MinorCache::new() };
    let mut oracle = Oracle::with_cache(sys.clone(), cfg.seed, cache);

    let mut sandwich = None;
    let (hull, state): (TriangulatedHull, Option<BuildState>) = match cfg.mode {
        Mode::Exact => {
            let s = compute_pi_exact(&mut oracle)?;
            (s.hull().clone(), Some(s))
        }
        Mode::Approx => {
            let (s, outer, r) = compute_pi_approx(&mut oracle, &threshold)?;
            sandwich = Some(SandwichOut {
                volume_inner: r.vol_q.to_string(),
                volume_outer: r.vol_qo.to_string(),
                ratio: r.ratio.to_string(),
                threshold: r.threshold.to_string(),
                outer_vertices: outer
                    .vertices()
                    .iter()
                    .map(|v| v.iter().map(ToString::to_string).collect())
                    .collect(),
            });
            (s.hull().clone(), Some(s))
        }
        Mode::Random => (compute_pi_random(&mut oracle, cfg.directions, cfg.seed)?.hull, None),
    };

    let vertices: Vec<Vec<Int>> = hull.vertices().iter().map(|v| v.iter().map(|x| x.to_integer()).collect()).collect();
    let mut note = None;
    let unprojected = match (&state, cfg.unproject) {
        (Some(s), true) => match unproject(&sys, &vertices, s.reference_rho().unwrap_or(&[])) {
            Ok(full) => Some(full.iter().map(|v| json_ints(v)).collect()),
            Err(Error::SingularM1) => {
                note = Some(Error::SingularM1.to_string());
                None
            }
            Err(e) => return Err(e),
        },
        (None, true) => {
            note = Some("unprojection needs the exact or approx mode".into());
            None
        }
        _ => None,
    };
    let stats = cfg.stats.then(|| {
        let c = oracle.cache();
        let (init, calls) = match &state {
            Some(s) => (s.stats().init_calls, s.stats().oracle_calls),
            None => (0, oracle.calls()),
        };
        StatsOut {
            oracle_calls: calls,
            init_calls: init,
            calls_after_init: calls - init,
            call_bound: (vertices.len() + hull.facet_planes().len()) as u64,
            cache_enabled: c.is_enabled(),
            cache_entries: c.len(),
            minor_hits: c.stats().hits,
            minor_misses: c.stats().misses,
            cache_clears: c.stats().clears,
            predicate_micros: c.predicate_time().as_micros() as u64,
            wall_micros: start.elapsed().as_micros() as u64,
        }
    });
    Ok(Report {
        mode: format!("{:?}", cfg.mode).to_lowercase(),
        n: sys.n(),
        points: sys.len(),
        coordinates: sys.symbolic_columns().iter().map(|&c| sys.column_label(c)).collect(),
        removed,
        dimension: hull.dim(),
        resultant_dimension: sys.resultant_dim() as i64,
        facets: hull.facet_planes().iter().map(HyperplaneOut::from).collect(),
        affine_hull: hull.affine_equations().iter().map(HyperplaneOut::from).collect(),
        volume: hull.volume().to_string(),
        f_vector: cfg.f_vector.then(|| hull.f_vector()),
        vertices: vertices.iter().map(|v| json_ints(v)).collect(),
        unprojected,
        note,
        sandwich,
        stats,
    })
}

fn generate(cfg: &GenConfig) -> Result<String> {
    let projection = match &cfg.projection {
        Some(p) => parse_projection_spec(p)?,
        None => ProjectionSpec::Full,
    };
    let sizes = if cfg.sizes.len() == 1 { vec![cfg.sizes[0]; cfg.n + 1] } else { cfg.sizes.clone() };
    let params = GenParams {
        n: cfg.n,
        delta: cfg.delta,
        dense: !cfg.sparse,
        sizes,
        projection,
    };
    let p = gen_random(&params, cfg.seed)?;
    Ok(if cfg.json { problem_json(&p) } else { p.to_text() })
}

fn problem_json(p: &ProblemInput) -> String {
    let supports: Vec<Vec<Vec<JsonInt>>> = p
        .supports
        .iter()
        .map(|s| s.iter().map(|q| json_ints(q)).collect())
        .collect();
    let v = serde_json::json!({ "n": p.n, "supports": supports, "projection": p.projection });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
