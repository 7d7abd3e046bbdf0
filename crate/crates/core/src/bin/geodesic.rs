//! Command-line front end. Structured output is JSON with numbers rounded to
//! 12 significant digits.
//!
//! Exit codes: 0 success, 1 invalid domain or failed check, 2 usage or I/O.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use geodesic_center::oracle::{check_lemma1, random_domain, RandomDomainSpec};
use geodesic_center::{
    approx_center, approx_diameter, build_spm, farthest_neighbors, svg, validate, Error, GeodesicIndex, Point,
    PolygonalDomain, RawDomain,
};

#[derive(Parser)]
#[command(
    name = "geodesic",
    version,
    about = "Geodesic distances and centers in polygonal domains with holes"
)]
struct Cli {
    /// Write structured output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a domain file and report violations.
    Validate { domain: PathBuf },
    /// Geodesic distance and a shortest path between two points.
    Dist {
        domain: PathBuf,
        #[arg(long, value_parser = parse_point)]
        from: Point,
        #[arg(long, value_parser = parse_point)]
        to: Point,
    },
    /// Shortest path map of a source.
    Spm {
        domain: PathBuf,
        #[arg(long, value_parser = parse_point)]
        source: Point,
        /// Also draw the map.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Farthest distance from a point and the map vertices attaining it.
    Farthest {
        domain: PathBuf,
        #[arg(long, value_parser = parse_point)]
        point: Point,
    },
    /// Grid estimate of the geodesic center with certified radius bounds.
    Center {
        domain: PathBuf,
        #[arg(long, default_value_t = 0.1, value_parser = parse_eps)]
        eps: f64,
        /// Refine the grid optimum by pattern search down to this step.
        #[arg(long, value_parser = parse_positive)]
        tol: Option<f64>,
        /// Draw the domain, grid, center and farthest paths.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Grid bounds on the geodesic diameter.
    Diameter {
        domain: PathBuf,
        #[arg(long, default_value_t = 0.1, value_parser = parse_eps)]
        eps: f64,
    },
    /// Compare farthest distances with brute-force sampling at random points.
    Check {
        domain: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a seeded random domain.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// No holes.
        #[arg(long)]
        simple: bool,
    },
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Point::new(x, y))
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v <= 1.0 {
        Ok(v)
    } else {
        Err("eps must lie in (0, 1]".into())
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("must be positive".into())
    }
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::OutsideDomain(_) | Error::OutOfRange(_) => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

/// Rounds every number to 12 significant digits.
fn round(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => {
                let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
                json!(r)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round(v))).collect()),
        other => other,
    }
}

fn emit(out: &Option<PathBuf>, value: &impl Serialize) -> Result<(), Failure> {
    let v = round(serde_json::to_value(value).map_err(|e| Failure(2, e.to_string()))?);
    let text = serde_json::to_string_pretty(&v).expect("json values serialize") + "\n";
    match out {
        Some(p) => write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GeodesicIndex, Failure> {
    let raw = RawDomain::load(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    let domain = PolygonalDomain::new(raw).map_err(|e| Failure(1, format!("{}: {e}", path.display())))?;
    Ok(GeodesicIndex::new(domain))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let out = &cli.output;
    match cli.command {
        Command::Validate { domain } => {
            let raw = RawDomain::load(&domain).map_err(|e| Failure(2, format!("{}: {e}", domain.display())))?;
            let report = validate(&raw);
            emit(out, &report)?;
            return Ok(if report.ok { 0 } else { 1 });
        }
        Command::Dist { domain, from, to } => {
            let ix = load(&domain)?;
            let (d, path) = ix.distance(from, to)?;
            let points = path.points(ix.domain());
            emit(out, &json!({ "from": from, "to": to, "distance": d, "path": points }))?;
        }
        Command::Spm { domain, source, svg } => {
            let ix = load(&domain)?;
            let map = build_spm(&ix, source)?;
            if let Some(p) = svg {
                write(&p, &svg::spm_svg(&map))?;
            }
            emit(out, &map)?;
        }
        Command::Farthest { domain, point } => {
            let ix = load(&domain)?;
            emit(out, &farthest_neighbors(&ix, point)?)?;
        }
        Command::Center { domain, eps, tol, svg } => {
            let ix = load(&domain)?;
            let mut est = approx_center(&ix, eps)?;
            if let Some(tol) = tol {
                est = est.refined(&ix, tol)?;
            }
            if let Some(p) = svg {
                let grid = geodesic_center::grid_candidates(ix.domain(), eps)?;
                write(&p, &svg::center_svg(&ix, &est, Some(&grid)))?;
            }
            emit(out, &est)?;
        }
        Command::Diameter { domain, eps } => {
            let ix = load(&domain)?;
            emit(out, &approx_diameter(&ix, eps)?)?;
        }
        Command::Check {
            domain,
            trials,
            k,
            seed,
        } => {
            let ix = load(&domain)?;
            let report = check_lemma1(&ix, trials, k as usize, seed)?;
            emit(out, &report)?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
        Command::Gen { seed, simple } => {
            let spec = if simple {
                RandomDomainSpec::simple()
            } else {
                RandomDomainSpec::default()
            };
            emit(out, &random_domain(seed, spec).to_raw())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("GEODESIC_THREADS").ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
