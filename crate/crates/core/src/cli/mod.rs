//! Command-line front end.
//!
//! Exit codes: 0 every check passed, 1 some check failed, 2 some
//! construction was infeasible (and nothing failed), 64 usage error.

pub mod fuzz;
pub mod json;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::exec::Execution;
use crate::extremal::AngleTriple;
use crate::geom::Point;
use crate::six_circle::six_point_theorem_check;
use crate::tolerance::Tolerances;
use crate::triangle::Triangle;
use crate::verify::{evaluate, EvalOptions};

pub use svg::Layer;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "hexacycle", version, about = "Pedal points, extremal triangles and the six-point circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct and check one instance; writes a JSON report.
    Verify(VerifyArgs),
    /// Check many seeded random instances; writes a JSON summary.
    Fuzz(FuzzArgs),
    /// Draw one instance as SVG.
    Svg(SvgArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Reference triangle as "x,y x,y x,y".
    #[arg(long, allow_hyphen_values = true)]
    triangle: String,
    /// Prescribed angles in degrees, "alpha,beta,gamma", summing to 180.
    #[arg(long)]
    angles: String,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Relative concyclicity threshold for the six interior points; the
    /// exterior threshold is ten times this.
    #[arg(long)]
    tol_concyclic: Option<f64>,
    /// Threshold for incidence and concurrency residuals.
    #[arg(long)]
    tol_construct: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also draw the instance.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "interior")]
    layers: Vec<Layer>,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    tol: TolArgs,
    /// Write the summary here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SvgArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    tol: TolArgs,
    /// Output file; stdout if absent.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "interior")]
    layers: Vec<Layer>,
}

/// Failure that maps to an exit code, with a message for stderr.
struct Exit(i32, String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(EXIT_USAGE, msg.into())
}

fn parse_numbers(s: &str, what: &str) -> Result<Vec<f64>, Exit> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| usage(format!("malformed {what}: {s:?}")))
}

pub fn parse_triangle(s: &str) -> Result<Triangle, String> {
    let pts = s
        .split_whitespace()
        .map(|pair| match parse_numbers(pair, "point").ok()?.as_slice() {
            [x, y] => Some(Point::new(*x, *y)),
            _ => None,
        })
        .collect::<Option<Vec<Point>>>()
        .ok_or_else(|| format!("malformed triangle {s:?}, expected \"x,y x,y x,y\""))?;
    let [a, b, c] = pts.as_slice() else {
        return Err(format!("triangle needs 3 points, got {}", pts.len()));
    };
    Triangle::new(*a, *b, *c).map_err(|e| e.to_string())
}

pub fn parse_angles(s: &str) -> Result<AngleTriple, String> {
    let v = parse_numbers(s, "angles").map_err(|e| e.1)?;
    let [a, b, c] = v.as_slice() else {
        return Err(format!("need 3 angles, got {}", v.len()));
    };
    AngleTriple::from_degrees(*a, *b, *c)
        .map_err(|_| format!("angles must be positive and sum to 180 degrees, got {s:?}"))
}

fn tolerances(args: &TolArgs) -> Result<Tolerances, Exit> {
    let check = |v: Option<f64>, name: &str| match v {
        Some(x) if !(x > 0.0 && x.is_finite()) => Err(usage(format!("--{name} must be positive, got {x}"))),
        _ => Ok(v),
    };
    let mut tol = Tolerances::default();
    if let Some(x) = check(args.tol_concyclic, "tol-concyclic")? {
        tol = tol.with_concyclic(x);
    }
    if let Some(x) = check(args.tol_construct, "tol-construct")? {
        tol = tol.with_construct(x);
    }
    Ok(tol)
}

fn instance(args: &InstanceArgs) -> Result<(Triangle, AngleTriple), Exit> {
    let t = parse_triangle(&args.triangle).map_err(usage)?;
    let a = parse_angles(&args.angles).map_err(usage)?;
    Ok((t, a))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), Exit> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| Exit(EXIT_USAGE, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Exit> {
    let (t, a) = instance(&args.instance)?;
    let tol = tolerances(&args.tol)?;
    let ev = evaluate(&t, &a, &tol, &EvalOptions::default());
    let input = json!({
        "triangle": t.vertices().iter().map(|p| json::point(*p)).collect::<Vec<_>>(),
        "angles_degrees": a.to_degrees(),
    });
    write_output(args.json.as_deref(), &json::to_string(&json::evaluation(&ev, input)))?;
    if let Some(path) = &args.svg {
        let (doc, warnings) = svg::render(&ev.six, &args.layers);
        for w in warnings {
            eprintln!("{w}");
        }
        write_output(Some(path), &doc)?;
    }
    for f in &ev.failures {
        eprintln!("failed: {f}");
    }
    Ok(ev.outcome.exit_code())
}

fn cmd_svg(args: &SvgArgs) -> Result<i32, Exit> {
    let (t, a) = instance(&args.instance)?;
    let tol = tolerances(&args.tol)?;
    let report = six_point_theorem_check(&t, &a, &tol);
    let (doc, warnings) = svg::render(&report, &args.layers);
    for w in warnings {
        eprintln!("{w}");
    }
    write_output(args.svg.as_deref(), &doc)?;
    Ok(if report.feasible_count() == 0 { EXIT_INFEASIBLE } else { EXIT_PASS })
}

fn cmd_fuzz(args: &FuzzArgs) -> Result<i32, Exit> {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let tol = tolerances(&args.tol)?;
    let summary = fuzz::run(args.seed, args.trials, &tol, Execution::default());
    write_output(args.json.as_deref(), &json::to_string(&summary.to_json()))?;
    eprintln!(
        "pass {} fail {} infeasible {}",
        summary.counts.pass, summary.counts.fail, summary.counts.infeasible
    );
    Ok(if summary.counts.fail == 0 { EXIT_PASS } else { EXIT_FAIL })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Svg(a) => cmd_svg(a),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
