//! Area-minimizing inscribed and area-maximizing circumscribed triangles of
//! a prescribed shape, and the inverse-point pedal similarity.
//!
//! Conventions: the inscribed triangle has one vertex on each side line of
//! the reference triangle ABC, and its angle at the vertex on side `s` is
//! the angle the [`SideAssignment`] places on `s`. The circumscribed
//! triangle QRS has Q between B and C, R between C and A, S between A and
//! B, so Q, R, S correspond to the inscribed vertices on BC, CA, AB under
//! the homothety that relates the two extremal triangles.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    foot_of_perpendicular, intersect_lines, invert_point, reflect_across, second_intersection,
    inscribed_angle_circle, turn_angle, wrap_angle, Circle, Inversion, Line, Point, REL_EPS,
};
use crate::triangle::{
    homothety_between, isogonal_conjugate, isogonal_residual, pedal_triangle, PedalResult, Side,
    Triangle,
};

/// Prescribed angles, in radians, summing to pi.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AngleTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let ok = [alpha, beta, gamma].iter().all(|a| *a > 0.0 && *a < PI)
            && (alpha + beta + gamma - PI).abs() <= 1e-12;
        if !ok {
            return Err(Error::InvalidAngles);
        }
        Ok(AngleTriple { alpha, beta, gamma })
    }

    /// Degrees summing to 180 within `1e-9`; rescaled so the radian sum is
    /// pi up to rounding.
    pub fn from_degrees(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let sum = alpha + beta + gamma;
        if !(alpha > 0.0 && beta > 0.0 && gamma > 0.0) || (sum - 180.0).abs() > 1e-9 {
            return Err(Error::InvalidAngles);
        }
        let k = PI / sum;
        let (a, b) = (alpha * k, beta * k);
        Self::new(a, b, PI - a - b)
    }

    pub fn get(&self, id: AngleId) -> f64 {
        match id {
            AngleId::Alpha => self.alpha,
            AngleId::Beta => self.beta,
            AngleId::Gamma => self.gamma,
        }
    }

    pub fn to_degrees(&self) -> [f64; 3] {
        [self.alpha.to_degrees(), self.beta.to_degrees(), self.gamma.to_degrees()]
    }

    pub fn max(&self) -> f64 {
        self.alpha.max(self.beta).max(self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleId {
    Alpha,
    Beta,
    Gamma,
}

impl AngleId {
    pub fn name(self) -> &'static str {
        match self {
            AngleId::Alpha => "alpha",
            AngleId::Beta => "beta",
            AngleId::Gamma => "gamma",
        }
    }
}

use AngleId::{Alpha, Beta, Gamma};

/// Which prescribed angle sits on which side line, as (AB, BC, CA).
/// Row `i` is the class of the pedal point M_{i+1}.
const ASSIGNMENT_TABLE: [[AngleId; 3]; 6] = [
    [Alpha, Beta, Gamma],
    [Alpha, Gamma, Beta],
    [Beta, Alpha, Gamma],
    [Beta, Gamma, Alpha],
    [Gamma, Alpha, Beta],
    [Gamma, Beta, Alpha],
];

/// Bijection from the prescribed angles to the side lines of ABC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SideAssignment {
    index: usize,
    /// Angle placed on BC, CA, AB.
    on_side: [AngleId; 3],
}

impl SideAssignment {
    /// Index in 1..=6.
    pub fn from_index(index: usize) -> Result<Self> {
        if !(1..=6).contains(&index) {
            return Err(Error::InvalidAssignment(index));
        }
        let [ab, bc, ca] = ASSIGNMENT_TABLE[index - 1];
        Ok(SideAssignment { index, on_side: [bc, ca, ab] })
    }

    pub fn all() -> [SideAssignment; 6] {
        std::array::from_fn(|i| Self::from_index(i + 1).expect("table index"))
    }

    /// Assignment with the given angles on BC, CA and AB.
    pub fn from_sides(bc: AngleId, ca: AngleId, ab: AngleId) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|a| a.on_side == [bc, ca, ab])
            .ok_or(Error::InvalidAssignment(0))
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn angle_id(&self, side: Side) -> AngleId {
        self.on_side[side.index()]
    }

    pub fn side_of(&self, id: AngleId) -> Side {
        Side::ALL
            .into_iter()
            .find(|s| self.on_side[s.index()] == id)
            .expect("bijection")
    }

    /// Angle of the inscribed triangle at its vertex on `side`.
    pub fn angle_on(&self, side: Side, angles: &AngleTriple) -> f64 {
        angles.get(self.angle_id(side))
    }

    /// Angles on BC, CA, AB.
    pub fn side_angles(&self, angles: &AngleTriple) -> [f64; 3] {
        Side::ALL.map(|s| self.angle_on(s, angles))
    }
}

impl Serialize for SideAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("index", &self.index)?;
        for side in [Side::AB, Side::BC, Side::CA] {
            map.serialize_entry(side.name(), self.angle_id(side).name())?;
        }
        map.end()
    }
}

/// Margin below pi for the angle-sum feasibility test.
const FEASIBILITY_MARGIN: f64 = 1e-9;

/// Fails unless every side's assigned angle plus the opposite reference
/// angle stays below pi, i.e. unless the pedal point lies strictly inside
/// the reference triangle.
pub fn check_feasible(reference: &Triangle, angles: &AngleTriple, asg: &SideAssignment) -> Result<()> {
    let ref_angles = reference.angles();
    for side in Side::ALL {
        let sum = asg.angle_on(side, angles) + ref_angles[side.opposite_vertex()];
        if !(sum < PI - FEASIBILITY_MARGIN) {
            return Err(Error::AssignmentInfeasible);
        }
    }
    Ok(())
}

pub fn all_feasible(reference: &Triangle, angles: &AngleTriple) -> bool {
    SideAssignment::all()
        .iter()
        .all(|a| check_feasible(reference, angles, a).is_ok())
}

/// The loci of the circumscribed vertices and their common point L.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcCircles {
    /// Through A and B, carrying S.
    pub over_ab: Circle,
    /// Through B and C, carrying Q.
    pub over_bc: Circle,
    /// Through C and A, carrying R.
    pub over_ca: Circle,
    pub common_point: Point,
    /// Distance from L to the third circle, over the reference scale.
    pub third_circle_residual: f64,
}

impl ArcCircles {
    pub fn on_side(&self, side: Side) -> &Circle {
        match side {
            Side::BC => &self.over_bc,
            Side::CA => &self.over_ca,
            Side::AB => &self.over_ab,
        }
    }
}

/// Circle through the endpoints of `side` that sees it under the assigned
/// angle from the far side (away from the opposite vertex).
fn far_arc_circle(reference: &Triangle, side: Side, angle: f64) -> Result<Circle> {
    let (p, q) = reference.side_endpoints(side);
    let opposite = reference.vertex(side.opposite_vertex());
    let witness = reflect_across(&reference.side_line(side), opposite);
    inscribed_angle_circle(p, q, angle, witness)
}

pub fn arc_circles(reference: &Triangle, angles: &AngleTriple, asg: &SideAssignment) -> Result<ArcCircles> {
    check_feasible(reference, angles, asg)?;
    let over_ab = far_arc_circle(reference, Side::AB, asg.angle_on(Side::AB, angles))?;
    let over_bc = far_arc_circle(reference, Side::BC, asg.angle_on(Side::BC, angles))?;
    let over_ca = far_arc_circle(reference, Side::CA, asg.angle_on(Side::CA, angles))?;

    // over_ab and over_ca share A; their other common point is L.
    let l = second_intersection(&over_ab, &over_ca, reference.a()).map_err(|_| Error::NoCommonPoint)?;
    let scale = reference.scale();
    let third = over_bc.radial_residual(l) / scale;
    let cc = reference.circumcircle();
    if !(third <= 1e-8) || !cc.contains_strictly(l, REL_EPS) || l.distance(reference.a()) <= REL_EPS * scale {
        return Err(Error::NoCommonPoint);
    }
    Ok(ArcCircles { over_ab, over_bc, over_ca, common_point: l, third_circle_residual: third })
}

fn antipodes(arcs: &ArcCircles) -> Result<Triangle> {
    let l = arcs.common_point;
    let far = |c: &Circle| c.center * 2.0 - l;
    Triangle::new(far(&arcs.over_bc), far(&arcs.over_ca), far(&arcs.over_ab))
}

/// The area-maximizing circumscribed triangle QRS: each vertex is the
/// point of its arc circle diametrically opposite L.
pub fn max_circumscribed(reference: &Triangle, angles: &AngleTriple, asg: &SideAssignment) -> Result<Triangle> {
    antipodes(&arc_circles(reference, angles, asg)?)
}

/// Residuals of every structural identity of an extremal configuration.
/// Lengths are divided by the reference scale; angles are in radians.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ExtremalResiduals {
    pub third_circle: f64,
    pub min_on_sides: f64,
    pub max_through_reference: f64,
    pub min_angles: f64,
    pub max_angles: f64,
    /// `| |min| |max| - |ABC|^2 | / |ABC|^2`
    pub geometric_mean: f64,
    pub homothety: f64,
    pub isogonal_lk: f64,
    pub isogonal_tl: f64,
    pub orthology: f64,
    pub collinearity_okt: f64,
    pub duality: f64,
    /// Angle between SQ and the line of centers of the AB and BC arc circles.
    pub parallel_condition: f64,
}

impl ExtremalResiduals {
    /// Names of the identities whose residual exceeds its threshold.
    pub fn failures(&self, tol: &crate::Tolerances) -> Vec<&'static str> {
        let checks = [
            ("third_circle", self.third_circle, tol.construct),
            ("min_on_sides", self.min_on_sides, tol.construct),
            ("max_through_reference", self.max_through_reference, tol.construct),
            ("min_angles", self.min_angles, tol.angle),
            ("max_angles", self.max_angles, tol.angle),
            ("geometric_mean", self.geometric_mean, tol.area),
            ("homothety", self.homothety, tol.construct),
            ("isogonal_LK", self.isogonal_lk, tol.construct),
            ("isogonal_TL", self.isogonal_tl, tol.construct),
            ("orthology", self.orthology, tol.construct),
            ("collinear_O_K_T", self.collinearity_okt, tol.construct),
            ("duality", self.duality, tol.construct),
            ("parallel_condition", self.parallel_condition, tol.construct),
        ];
        checks
            .into_iter()
            .filter(|(_, value, limit)| !(value <= limit))
            .map(|(name, _, _)| name)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremalConfig {
    pub reference: Triangle,
    pub angles: AngleTriple,
    pub assignment: SideAssignment,
    /// Vertices D, E, F on BC, CA, AB.
    pub min_triangle: Triangle,
    /// Vertices Q, R, S.
    pub max_triangle: Triangle,
    /// K: pedal point of the minimizer.
    pub pedal_point: Point,
    /// L: antipedal point of the maximizer.
    pub antipedal_point: Point,
    /// T: common point of the perpendiculars from Q, R, S to BC, CA, AB.
    pub orthology_point: Point,
    pub homothety_center: Point,
    pub homothety_ratio: f64,
    pub arc_circles: ArcCircles,
    pub residuals: ExtremalResiduals,
}

impl ExtremalConfig {
    pub fn min_area(&self) -> f64 {
        self.min_triangle.area()
    }

    pub fn max_area(&self) -> f64 {
        self.max_triangle.area()
    }
}

fn angle_between_lines(u: Point, v: Point) -> f64 {
    let s = u.cross(v).abs() / (u.norm() * v.norm());
    s.min(1.0).asin()
}

/// Distance of the odd point out from the line through the farthest pair.
fn collinearity(points: [Point; 3], scale: f64) -> f64 {
    let pairs = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
    let (i, j, k) = pairs
        .into_iter()
        .max_by(|a, b| {
            let da = points[a.0].distance(points[a.1]);
            let db = points[b.0].distance(points[b.1]);
            da.total_cmp(&db)
        })
        .expect("three pairs");
    match Line::through(points[i], points[j]) {
        Ok(line) if points[i].distance(points[j]) > REL_EPS * scale => line.distance(points[k]) / scale,
        _ => 0.0,
    }
}

/// Builds the full extremal configuration and measures its identities.
pub fn min_inscribed(reference: &Triangle, angles: &AngleTriple, asg: &SideAssignment) -> Result<ExtremalConfig> {
    let arcs = arc_circles(reference, angles, asg)?;
    let l = arcs.common_point;
    let k = isogonal_conjugate(reference, l)?;
    let pedal = pedal_triangle(reference, k);
    let min_triangle = pedal.triangle()?;
    let max_triangle = antipodes(&arcs)?;
    let [q, r, s] = max_triangle.vertices();
    let [a, b, c] = reference.vertices();
    let scale = reference.scale();

    let perp_s = Line::with_normal(s, b - a)?;
    let perp_q = Line::with_normal(q, c - b)?;
    let perp_r = Line::with_normal(r, a - c)?;
    let t = intersect_lines(&perp_s, &perp_q)?;

    let homothety = homothety_between(&min_triangle, &max_triangle)?;
    let o = homothety.finite_center().ok_or(Error::NotHomothetic)?;

    let side_angles = asg.side_angles(angles);
    let min_angles = min_triangle.angles();
    let max_angles = max_triangle.angles();
    let angle_err = |got: [f64; 3]| {
        got.iter()
            .zip(side_angles)
            .map(|(g, want)| (g - want).abs())
            .fold(0.0, f64::max)
    };

    let min_on_sides = Side::ALL
        .iter()
        .map(|s| reference.side_line(*s).distance(pedal.foot(*s)))
        .fold(0.0, f64::max)
        / scale;
    // A on SR, B on SQ, C on QR
    let max_through_reference = [(a, s, r), (b, s, q), (c, q, r)]
        .iter()
        .map(|(v, p1, p2)| Line::through(*p1, *p2).map(|l| l.distance(*v)).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
        / scale;

    let ref_area = reference.area();
    let geometric_mean =
        (min_triangle.area() * max_triangle.area() - ref_area * ref_area).abs() / (ref_area * ref_area);

    let homothety_residual = min_triangle
        .vertices()
        .iter()
        .zip(max_triangle.vertices())
        .map(|(src, dst)| homothety.apply(*src).distance(dst))
        .fold(0.0, f64::max)
        / scale;

    // Parallels through A, B, C to the sides of the minimizer.
    let [d, e, f] = min_triangle.vertices();
    let through_a = Line::from_direction(a, f - e)?;
    let through_b = Line::from_direction(b, d - f)?;
    let through_c = Line::from_direction(c, e - d)?;
    let dual = [
        intersect_lines(&through_b, &through_c)?,
        intersect_lines(&through_c, &through_a)?,
        intersect_lines(&through_a, &through_b)?,
    ];
    let duality = dual
        .iter()
        .zip(max_triangle.vertices())
        .map(|(x, y)| x.distance(y))
        .fold(0.0, f64::max)
        / scale;

    let residuals = ExtremalResiduals {
        third_circle: arcs.third_circle_residual,
        min_on_sides,
        max_through_reference,
        min_angles: angle_err(min_angles),
        max_angles: angle_err(max_angles),
        geometric_mean,
        homothety: homothety_residual,
        isogonal_lk: isogonal_residual(reference, l, k)?,
        isogonal_tl: isogonal_residual(&max_triangle, t, l)? * max_triangle.scale() / scale,
        orthology: perp_r.distance(t) / scale,
        collinearity_okt: collinearity([o, k, t], scale),
        duality,
        parallel_condition: angle_between_lines(q - s, arcs.over_bc.center - arcs.over_ab.center),
    };

    Ok(ExtremalConfig {
        reference: *reference,
        angles: *angles,
        assignment: *asg,
        min_triangle,
        max_triangle,
        pedal_point: k,
        antipedal_point: l,
        orthology_point: t,
        homothety_center: o,
        homothety_ratio: homothety.ratio,
        arc_circles: arcs,
        residuals,
    })
}

/// A point inside the circumcircle, its inverse in the circumcircle, and
/// their pedal triangles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversePedalPair {
    pub m: Point,
    pub n: Point,
    pub pedal_m: PedalResult,
    pub pedal_n: PedalResult,
    /// `|pedal(m)| / |pedal(n)|`, measured.
    pub area_ratio: f64,
    /// `(R^2 - OM^2) / (ON^2 - R^2)`.
    pub predicted_ratio: f64,
    /// Largest difference between the pedal angles at feet on the same side.
    pub angle_mismatch: f64,
}

pub fn inverse_pedal_pair(reference: &Triangle, m: Point) -> Result<InversePedalPair> {
    let cc = reference.circumcircle();
    let r = cc.radius;
    let om = m.distance(cc.center);
    if om <= REL_EPS * r {
        return Err(Error::InverseAtInfinity);
    }
    if (om - r).abs() <= REL_EPS * r {
        return Err(Error::FixedPoint);
    }
    if om > r {
        return Err(Error::OutsideCircumcircle);
    }
    let n = invert_point(&Inversion::in_circle(&cc), m)?;
    let pedal_m = pedal_triangle(reference, m);
    let pedal_n = pedal_triangle(reference, n);
    let (Some(am), Some(an)) = (pedal_m.angles, pedal_n.angles) else {
        return Err(Error::DegeneratePedal);
    };
    let angle_mismatch = am.iter().zip(an).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let on = n.distance(cc.center);
    Ok(InversePedalPair {
        m,
        n,
        pedal_m,
        pedal_n,
        area_ratio: pedal_m.area / pedal_n.area,
        predicted_ratio: (r * r - om * om) / (on * on - r * r),
        angle_mismatch,
    })
}

/// Angle of the pedal triangle of `p` at its foot on `side`, predicted from
/// the directed angle under which `p` sees that side:
/// `turn(p; U -> W) - (reference angle opposite the side)`, wrapped into
/// (-pi, pi]. Positive inside the circumcircle, negative outside, where the
/// pedal triangle's orientation flips.
pub fn predicted_pedal_angle(reference: &Triangle, p: Point, side: Side) -> Result<f64> {
    let (u, w) = reference.side_endpoints(side);
    let turn = reference.orientation() * turn_angle(p, u, w)?;
    let opposite = reference.angles()[side.opposite_vertex()];
    Ok(wrap_angle(turn - opposite))
}

/// Residuals, per side BC, CA, AB, between the pedal angles of `p` and the
/// directed-angle prediction of [`predicted_pedal_angle`].
pub fn verify_angle_relations(reference: &Triangle, p: Point) -> Result<[f64; 3]> {
    let pedal = pedal_triangle(reference, p);
    let angles = pedal.angles.ok_or(Error::DegeneratePedal)?;
    let mut out = [0.0; 3];
    for side in Side::ALL {
        let predicted = predicted_pedal_angle(reference, p, side)?;
        out[side.index()] = (predicted.abs() - angles[side.index()]).abs();
    }
    Ok(out)
}

/// Foot-of-perpendicular helper kept public for diagnostics: the pedal
/// vertex of `p` on `side`.
pub fn pedal_vertex(reference: &Triangle, p: Point, side: Side) -> Point {
    foot_of_perpendicular(p, &reference.side_line(side))
}
