//! The six pedal points whose pedal triangles share a prescribed shape,
//! their common circle, and the circle through their inverses.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{check_feasible, min_inscribed, AngleId, AngleTriple, SideAssignment};
use crate::geom::{
    angle_at, circle_through, inscribed_angle_circle, invert_point, scale_of, second_intersection, signed_area,
    Circle, Inversion, Point, REL_EPS,
};
use crate::tolerance::Tolerances;
use crate::triangle::{antipedal_triangle, Side, Triangle};

/// Outcome of fitting a circle to a point set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CircleFit {
    Fitted {
        circle: Circle,
        /// Largest `| |p - center| - radius |` over the points.
        max_residual: f64,
        /// Circle through the three points spanning the largest triangle.
        triple: Option<Circle>,
    },
    /// All points within `1e-9 * scale` of each other.
    Coincident,
    /// No finite circle fits (radius beyond `1e6 * scale`).
    Collinear,
}

impl CircleFit {
    pub fn circle(&self) -> Option<&Circle> {
        match self {
            CircleFit::Fitted { circle, .. } => Some(circle),
            _ => None,
        }
    }

    pub fn max_residual(&self) -> f64 {
        match self {
            CircleFit::Fitted { max_residual, .. } => *max_residual,
            _ => 0.0,
        }
    }

    /// Residual over fitted radius; zero for degenerate outcomes.
    pub fn relative_residual(&self) -> f64 {
        match self {
            CircleFit::Fitted { circle, max_residual, .. } => max_residual / circle.radius,
            _ => 0.0,
        }
    }
}

const COLLINEAR_RADIUS: f64 = 1e6;

/// Least-squares circle: algebraic fit in centered, normalized
/// coordinates, then one Gauss-Newton step on the geometric residuals.
/// `scale` is the length that degeneracy thresholds are relative to.
pub fn fit_circle(points: &[Point], scale: f64) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let spread = scale_of(points);
    if spread <= REL_EPS * scale {
        return Ok(CircleFit::Coincident);
    }
    let n = points.len();
    let centroid = points.iter().fold(Point::ORIGIN, |acc, p| acc + *p) * (1.0 / n as f64);
    let local: Vec<Point> = points.iter().map(|p| (*p - centroid) * (1.0 / spread)).collect();

    // u^2 + v^2 + D u + E v + F = 0
    let design = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => local[i].x,
        1 => local[i].y,
        _ => 1.0,
    });
    let rhs = DVector::from_fn(n, |i, _| -local[i].norm_sq());
    let svd = design.svd(true, true);
    let sv = &svd.singular_values;
    if sv.min() <= 1e-12 * sv.max() {
        return Ok(CircleFit::Collinear);
    }
    let Ok(sol) = svd.solve(&rhs, 0.0) else {
        return Ok(CircleFit::Collinear);
    };
    let mut center = Point::new(-sol[0] / 2.0, -sol[1] / 2.0);
    let r_sq = center.norm_sq() - sol[2];
    if !(r_sq > 0.0) || !r_sq.is_finite() {
        return Ok(CircleFit::Collinear);
    }
    let mut radius = r_sq.sqrt();

    // Gauss-Newton on d_i - r.
    let dists: Vec<f64> = local.iter().map(|p| p.distance(center)).collect();
    if dists.iter().all(|d| *d > 0.0) {
        let jac = DMatrix::from_fn(n, 3, |i, j| match j {
            0 => -(local[i].x - center.x) / dists[i],
            1 => -(local[i].y - center.y) / dists[i],
            _ => -1.0,
        });
        let res = DVector::from_fn(n, |i, _| radius - dists[i]);
        if let Ok(step) = jac.svd(true, true).solve(&res, 0.0) {
            let (c2, r2) = (center + Point::new(step[0], step[1]), radius + step[2]);
            if c2.is_finite() && r2 > 0.0 && r2.is_finite() {
                center = c2;
                radius = r2;
            }
        }
    }

    let radius = radius * spread;
    if radius > COLLINEAR_RADIUS * scale {
        return Ok(CircleFit::Collinear);
    }
    let circle = Circle::new(centroid + center * spread, radius)?;
    let max_residual = points.iter().map(|p| circle.radial_residual(*p)).fold(0.0, f64::max);
    Ok(CircleFit::Fitted { circle, max_residual, triple: best_triple_circle(points) })
}

fn best_triple_circle(points: &[Point]) -> Option<Circle> {
    let n = points.len();
    let mut best: Option<(f64, [usize; 3])> = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let area = signed_area(points[i], points[j], points[k]).abs();
                if best.is_none_or(|(a, _)| area > a) {
                    best = Some((area, [i, j, k]));
                }
            }
        }
    }
    let (_, [i, j, k]) = best?;
    circle_through(points[i], points[j], points[k]).ok()
}

/// Circle over AB seeing it under `C + theta_AB` from C's side.
fn circle_over_ab(reference: &Triangle, theta: f64) -> Result<Circle> {
    let [a, b, c] = reference.vertices();
    inscribed_angle_circle(a, b, reference.angles()[2] + theta, c)
}

/// Circle over CA seeing it under `B + theta_CA` from B's side.
fn circle_over_ca(reference: &Triangle, theta: f64) -> Result<Circle> {
    let [a, b, c] = reference.vertices();
    inscribed_angle_circle(c, a, reference.angles()[1] + theta, b)
}

/// Circle over BC seeing it under `A + theta_BC` from A's side.
fn circle_over_bc(reference: &Triangle, theta: f64) -> Result<Circle> {
    let [a, b, c] = reference.vertices();
    inscribed_angle_circle(b, c, reference.angles()[0] + theta, a)
}

/// A pedal point found by intersecting inscribed-angle circles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PedalPointConstruction {
    pub assignment: SideAssignment,
    pub point: Point,
    /// Distance to the circle over BC, over the reference scale.
    pub third_circle_residual: f64,
    /// `|AMB + BMC + CMA - 2 pi|`.
    pub angle_sum_residual: f64,
}

/// Pedal point whose pedal triangle has the assignment's angles at the
/// feet on the assigned sides.
pub fn pedal_point_by_circles(
    reference: &Triangle,
    angles: &AngleTriple,
    asg: &SideAssignment,
) -> Result<PedalPointConstruction> {
    check_feasible(reference, angles, asg)?;
    let [a, b, c] = reference.vertices();
    let scale = reference.scale();
    let over_ab = circle_over_ab(reference, asg.angle_on(Side::AB, angles))?;
    let over_ca = circle_over_ca(reference, asg.angle_on(Side::CA, angles))?;
    let over_bc = circle_over_bc(reference, asg.angle_on(Side::BC, angles))?;
    let m = second_intersection(&over_ab, &over_ca, a).map_err(|_| Error::NoInteriorPedalPoint)?;
    if !reference.circumcircle().contains_strictly(m, REL_EPS) || m.distance(a) <= REL_EPS * scale {
        return Err(Error::NoInteriorPedalPoint);
    }
    let around = angle_at(m, a, b)? + angle_at(m, b, c)? + angle_at(m, c, a)?;
    Ok(PedalPointConstruction {
        assignment: *asg,
        point: m,
        third_circle_residual: over_bc.radial_residual(m) / scale,
        angle_sum_residual: (around - 2.0 * PI).abs(),
    })
}

/// All six assignments in index order, each with its pedal point or the
/// reason it does not exist.
pub fn six_pedal_points(
    reference: &Triangle,
    angles: &AngleTriple,
) -> [(SideAssignment, Result<PedalPointConstruction>); 6] {
    SideAssignment::all().map(|asg| (asg, pedal_point_by_circles(reference, angles, &asg)))
}

/// The circles over AB carrying (M1, M2), (M3, M4), (M5, M6) and over CA
/// carrying (M3, M5), (M1, M6), (M2, M4): the angle on AB (resp. CA) is
/// alpha, beta, gamma in turn. `None` where the subtended angle reaches pi.
pub fn defining_circles(reference: &Triangle, angles: &AngleTriple) -> [Option<Circle>; 6] {
    let ids = [AngleId::Alpha, AngleId::Beta, AngleId::Gamma];
    let over_ab = ids.map(|id| circle_over_ab(reference, angles.get(id)).ok());
    let over_ca = ids.map(|id| circle_over_ca(reference, angles.get(id)).ok());
    [over_ab[0], over_ab[1], over_ab[2], over_ca[0], over_ca[1], over_ca[2]]
}

/// Per-assignment outcome in a [`SixPointReport`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteriorPoint {
    pub construction: PedalPointConstruction,
    /// Distance to the pedal point of the area-minimizing inscribed
    /// triangle, over the reference scale. `None` if that route failed.
    pub route_agreement: Option<f64>,
    /// Angles of the antipedal triangle, for inspection only.
    pub antipedal_angles: Option<[f64; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExteriorPoint {
    Point(Point),
    /// The interior point is the circumcenter.
    UndefinedCenter,
    /// The interior point itself is missing.
    Missing,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FitStatus {
    Fit(CircleFit),
    /// Fewer than three points were available.
    Insufficient(usize),
    Skipped(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
    Skipped,
}

impl FitStatus {
    pub fn fit(&self) -> Option<&CircleFit> {
        match self {
            FitStatus::Fit(f) => Some(f),
            _ => None,
        }
    }

    /// Coincident points count as concyclic; a collinear set does not.
    pub fn verdict(&self, rel_tol: f64) -> Verdict {
        match self {
            FitStatus::Fit(CircleFit::Fitted { .. }) => {
                let fit = self.fit().expect("fitted");
                if fit.relative_residual() <= rel_tol {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            FitStatus::Fit(CircleFit::Coincident) => Verdict::Pass,
            FitStatus::Fit(CircleFit::Collinear) => Verdict::Fail,
            FitStatus::Insufficient(_) => Verdict::Infeasible,
            FitStatus::Skipped(_) => Verdict::Skipped,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SixPointReport {
    pub reference: Triangle,
    pub angles: AngleTriple,
    /// M1..M6 in assignment order.
    pub interior_points: [std::result::Result<InteriorPoint, Error>; 6],
    pub defining_circles: [Option<Circle>; 6],
    pub interior_fit: FitStatus,
    /// N1..N6: inverses of M1..M6 in the circumcircle.
    pub exterior_points: [ExteriorPoint; 6],
    pub exterior_fit: FitStatus,
    pub interior_verdict: Verdict,
    pub exterior_verdict: Verdict,
}

impl SixPointReport {
    pub fn interior_positions(&self) -> Vec<Point> {
        self.interior_points
            .iter()
            .filter_map(|r| r.as_ref().ok().map(|p| p.construction.point))
            .collect()
    }

    pub fn exterior_positions(&self) -> Vec<Point> {
        self.exterior_points
            .iter()
            .filter_map(|e| match e {
                ExteriorPoint::Point(p) => Some(*p),
                _ => None,
            })
            .collect()
    }

    pub fn feasible_count(&self) -> usize {
        self.interior_points.iter().filter(|r| r.is_ok()).count()
    }

    /// Worst third-circle, route-agreement and angle-sum residuals over the
    /// constructed points.
    pub fn worst_construction(&self) -> (f64, f64, f64) {
        let mut worst = (0.0f64, 0.0f64, 0.0f64);
        for p in self.interior_points.iter().flatten() {
            worst.0 = worst.0.max(p.construction.third_circle_residual);
            worst.1 = worst.1.max(p.route_agreement.unwrap_or(f64::INFINITY));
            worst.2 = worst.2.max(p.construction.angle_sum_residual);
        }
        worst
    }
}

fn fit_status(points: &[Point], scale: f64) -> FitStatus {
    match fit_circle(points, scale) {
        Ok(fit) => FitStatus::Fit(fit),
        Err(_) => FitStatus::Insufficient(points.len()),
    }
}

/// Builds the six pedal points, fits their circle and the circle through
/// their inverses, and grades both against `tol`.
pub fn six_point_theorem_check(reference: &Triangle, angles: &AngleTriple, tol: &Tolerances) -> SixPointReport {
    let scale = reference.scale();
    let cc = reference.circumcircle();
    let inversion = Inversion::in_circle(&cc);

    let interior_points = six_pedal_points(reference, angles).map(|(asg, res)| {
        res.map(|construction| {
            let route_agreement = min_inscribed(reference, angles, &asg)
                .ok()
                .map(|cfg| cfg.pedal_point.distance(construction.point) / scale);
            let antipedal_angles = antipedal_triangle(reference, construction.point).ok().map(|t| t.angles());
            InteriorPoint { construction, route_agreement, antipedal_angles }
        })
    });

    let exterior_points = interior_points.each_ref().map(|r| match r {
        Err(_) => ExteriorPoint::Missing,
        Ok(p) => {
            let m = p.construction.point;
            if m.distance(cc.center) <= REL_EPS * cc.radius {
                ExteriorPoint::UndefinedCenter
            } else {
                invert_point(&inversion, m).map_or(ExteriorPoint::UndefinedCenter, ExteriorPoint::Point)
            }
        }
    });

    let inside: Vec<Point> = interior_points
        .iter()
        .filter_map(|r| r.as_ref().ok().map(|p| p.construction.point))
        .collect();
    let interior_fit = fit_status(&inside, scale);

    let exterior_fit = if exterior_points.contains(&ExteriorPoint::UndefinedCenter) {
        FitStatus::Skipped("undefined (center)".to_string())
    } else if interior_fit == FitStatus::Fit(CircleFit::Coincident) {
        // The inverses then differ only by sub-tolerance offsets.
        FitStatus::Skipped("interior points coincident".to_string())
    } else {
        let outside: Vec<Point> = exterior_points
            .iter()
            .filter_map(|e| match e {
                ExteriorPoint::Point(p) => Some(*p),
                _ => None,
            })
            .collect();
        fit_status(&outside, scale)
    };

    let interior_verdict = interior_fit.verdict(tol.concyclic);
    let exterior_verdict = exterior_fit.verdict(tol.exterior_concyclic);
    SixPointReport {
        reference: *reference,
        angles: *angles,
        interior_points,
        defining_circles: defining_circles(reference, angles),
        interior_fit,
        exterior_points,
        exterior_fit,
        interior_verdict,
        exterior_verdict,
    }
}
