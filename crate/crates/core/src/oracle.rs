//! Brute-force checks that share no construction code with `extremal` or
//! `six_circle`: one-parameter sweeps of the inscribed and circumscribed
//! triangles of a fixed shape, and a moment-based circle fit.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::extremal::{check_feasible, AngleTriple, SideAssignment};
use crate::geom::{circle_through, Circle, Line, Point};
use crate::triangle::{Side, Triangle};

pub const DEFAULT_GRID: usize = 720;
pub const MIN_GRID: usize = 360;

/// Bracket width at which golden-section refinement stops.
const REFINE_WIDTH: f64 = 1e-12 * PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FamilySample {
    /// Inscribed sweeps: direction of the side from the vertex on BC to the
    /// vertex on AB, in [0, pi). Circumscribed sweeps: position angle of S
    /// on its circle, in [0, 2 pi).
    pub theta: f64,
    pub triangle: Option<Triangle>,
    /// NaN when infeasible.
    pub area: f64,
}

impl FamilySample {
    pub fn is_feasible(&self) -> bool {
        self.triangle.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub samples: Vec<FamilySample>,
    pub extremum_theta: f64,
    pub extremum_area: f64,
    pub extremum_triangle: Triangle,
    pub refinement_iterations: usize,
}

impl SweepResult {
    pub fn feasible_samples(&self) -> impl Iterator<Item = &FamilySample> {
        self.samples.iter().filter(|s| s.is_feasible())
    }
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut iterations = 0;
    while hi - lo > width && iterations < 200 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
        iterations += 1;
    }
    if f1 <= f2 {
        (x1, f1, iterations)
    } else {
        (x2, f2, iterations)
    }
}

/// Grid evaluation followed by golden-section refinement of the best
/// sample's bracket. `score` is minimized; infeasible samples score +inf.
fn sweep(
    grid: usize,
    period: f64,
    exec: Execution,
    build: impl Fn(f64) -> Option<Triangle> + Sync + Send,
    score: impl Fn(&Triangle) -> f64,
) -> Result<SweepResult> {
    if grid < MIN_GRID {
        return Err(Error::GridTooSmall { min: MIN_GRID, got: grid });
    }
    let step = period / grid as f64;
    let samples = exec.map_range(grid, |k| {
        let theta = k as f64 * step;
        let triangle = build(theta);
        let area = triangle.map_or(f64::NAN, |t| t.area());
        FamilySample { theta, triangle, area }
    });

    let (best_k, best) = samples
        .iter()
        .enumerate()
        .filter_map(|(k, s)| s.triangle.map(|t| (k, score(&t))))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::EmptyFamily)?;

    let objective = |theta: f64| build(theta).map_or(f64::INFINITY, |t| score(&t));
    let center = best_k as f64 * step;
    let (theta, value, iterations) = golden_min(objective, center - step, center + step, REFINE_WIDTH);

    let (extremum_theta, extremum_triangle) = match build(theta) {
        Some(t) if value <= best => (theta.rem_euclid(period), t),
        _ => (samples[best_k].theta, samples[best_k].triangle.expect("feasible")),
    };
    Ok(SweepResult {
        extremum_area: extremum_triangle.area(),
        samples,
        extremum_theta,
        extremum_triangle,
        refinement_iterations: iterations,
    })
}

fn angles_match(t: &Triangle, want: [f64; 3], tol: f64) -> bool {
    t.angles().iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

/// Inscribed triangle with vertex P1 on BC, P2 on CA, P3 on AB, prescribed
/// angles at each, the reference orientation, and P1P3 along `theta`.
fn inscribed_member(reference: &Triangle, side_angles: [f64; 3], theta: f64) -> Option<Triangle> {
    let [a, b, c] = reference.vertices();
    let [a1, a2, a3] = side_angles;
    let w = Point::from_angle(theta);
    // |P1P2| / |P1P3| by the law of sines; P2 turns away from P3 by a1.
    let rho = a3.sin() / a2.sin();
    let v = w.rotate(-reference.orientation() * a1) * rho;
    // P1 = B + t (C - B); P3 = P1 + s w on AB; P2 = P1 + s v on CA.
    let (m11, m12, r1) = ((c - b).cross(b - a), w.cross(b - a), 0.0);
    let (m21, m22, r2) = (-(b - c).cross(a - c), v.cross(a - c), -(b - c).cross(a - c));
    let det = m11 * m22 - m12 * m21;
    let norm = (m11.abs() + m12.abs()) * (m21.abs() + m22.abs());
    if det.abs() <= 1e-12 * norm {
        return None;
    }
    let t = (r1 * m22 - m12 * r2) / det;
    let s = (m11 * r2 - r1 * m21) / det;
    let p1 = b + (c - b) * t;
    let tri = Triangle::new(p1, p1 + v * s, p1 + w * s).ok()?;
    let tri_ok = tri.vertices().iter().all(|p| p.is_finite()) && angles_match(&tri, side_angles, 1e-9);
    tri_ok.then_some(tri)
}

/// Minimum-area inscribed triangle of the assignment's shape, found by
/// sweeping the direction of one side over [0, pi).
pub fn inscribed_family_min(
    reference: &Triangle,
    angles: &AngleTriple,
    asg: &SideAssignment,
    grid: usize,
    exec: Execution,
) -> Result<SweepResult> {
    let side_angles = asg.side_angles(angles);
    sweep(grid, PI, exec, |theta| inscribed_member(reference, side_angles, theta), |t| t.area())
}

/// Circle through `p` and `q` whose arc on the side away from `away` sees
/// the chord under `angle`: through the apex of the isosceles triangle on
/// that side with apex angle `angle`.
fn far_arc(p: Point, q: Point, away: Point, angle: f64) -> Result<Circle> {
    let line = Line::through(p, q)?;
    let mut n = line.normal();
    if line.signed_distance(away) > 0.0 {
        n = -n;
    }
    let half = p.distance(q) / 2.0;
    let apex = p.midpoint(q) + n * (half / (angle / 2.0).tan());
    circle_through(p, q, apex)
}

/// The three arcs carrying S (over AB), Q (over BC), R (over CA).
pub struct CircumscribedArcs {
    pub over_ab: Circle,
    pub over_bc: Circle,
    pub over_ca: Circle,
}

pub fn circumscribed_arcs(reference: &Triangle, angles: &AngleTriple, asg: &SideAssignment) -> Result<CircumscribedArcs> {
    let [a, b, c] = reference.vertices();
    Ok(CircumscribedArcs {
        over_ab: far_arc(a, b, c, asg.angle_on(Side::AB, angles))?,
        over_bc: far_arc(b, c, a, asg.angle_on(Side::BC, angles))?,
        over_ca: far_arc(c, a, b, asg.angle_on(Side::CA, angles))?,
    })
}

/// Second point of the line through `on` and `from` on `circle`, where
/// `on` already lies on `circle`.
fn chord_end(circle: &Circle, on: Point, from: Point) -> Option<Point> {
    let d = on - from;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return None;
    }
    let t = -2.0 * d.dot(on - circle.center) / len_sq;
    Some(on + d * t)
}

fn circumscribed_member(reference: &Triangle, arcs: &CircumscribedArcs, side_angles: [f64; 3], phi: f64) -> Option<Triangle> {
    let [a, b, c] = reference.vertices();
    let s = arcs.over_ab.point_at(phi);
    let q = chord_end(&arcs.over_bc, b, s)?;
    let r = chord_end(&arcs.over_ca, a, s)?;
    let tri = Triangle::new(q, r, s).ok()?;
    let scale = reference.scale();
    let c_on_qr = Line::through(q, r).ok()?.distance(c) <= 1e-8 * scale;
    let ok = c_on_qr
        && tri.orientation() == reference.orientation()
        && angles_match(&tri, side_angles, 1e-9);
    ok.then_some(tri)
}

/// Maximum-area circumscribed triangle of the assignment's shape, found by
/// sweeping S around its circle.
pub fn circumscribed_family_max(
    reference: &Triangle,
    angles: &AngleTriple,
    asg: &SideAssignment,
    grid: usize,
    exec: Execution,
) -> Result<SweepResult> {
    check_feasible(reference, angles, asg)?;
    let arcs = circumscribed_arcs(reference, angles, asg)?;
    let side_angles = asg.side_angles(angles);
    sweep(
        grid,
        2.0 * PI,
        exec,
        |phi| circumscribed_member(reference, &arcs, side_angles, phi),
        |t| -t.area(),
    )
}

/// Angle between side SQ of a circumscribed triangle (Q, R, S) and the
/// line of centers of the arcs over AB and BC.
pub fn parallel_condition(arcs: &CircumscribedArcs, tri: &Triangle) -> f64 {
    let [q, _, s] = tri.vertices();
    let (u, v) = (q - s, arcs.over_bc.center - arcs.over_ab.center);
    (u.cross(v).abs() / (u.norm() * v.norm())).min(1.0).asin()
}

/// Algebraic circle fit from centered second and third moments, without
/// refinement. Returns the circle and the largest radial residual.
pub fn reference_circle_fit(points: &[Point]) -> Result<(Circle, f64)> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let n = points.len() as f64;
    let mean = points.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / n);
    let (mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0);
    let (mut suuu, mut svvv, mut suvv, mut svuu) = (0.0, 0.0, 0.0, 0.0);
    for p in points {
        let (u, v) = (p.x - mean.x, p.y - mean.y);
        suu += u * u;
        svv += v * v;
        suv += u * v;
        suuu += u * u * u;
        svvv += v * v * v;
        suvv += u * v * v;
        svuu += v * u * u;
    }
    let det = suu * svv - suv * suv;
    if det.abs() <= 1e-14 * (suu * svv).max(f64::MIN_POSITIVE) {
        return Err(Error::CollinearPoints);
    }
    let r1 = (suuu + suvv) / 2.0;
    let r2 = (svvv + svuu) / 2.0;
    let uc = (r1 * svv - suv * r2) / det;
    let vc = (suu * r2 - suv * r1) / det;
    let radius = (uc * uc + vc * vc + (suu + svv) / n).sqrt();
    let circle = Circle::new(mean + Point::new(uc, vc), radius).map_err(|_| Error::CollinearPoints)?;
    let residual = points.iter().map(|p| circle.radial_residual(*p)).fold(0.0, f64::max);
    Ok((circle, residual))
}
