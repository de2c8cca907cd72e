//! Planar primitives: points, normalized lines, circles and inversions.
//!
//! Every tolerance here is relative to a geometry scale, the diameter of
//! the input point set, so that all predicates are invariant under
//! similarity transforms.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default relative epsilon for incidence and degeneracy predicates.
pub const REL_EPS: f64 = 1e-9;

/// Lines whose unit normals have a cross product below this are parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at `angle` radians from the positive x axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(c, s)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    /// Polar angle in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(serializer)
    }
}

/// Diameter of a point set; the reference length for relative tolerances.
pub fn scale_of(points: &[Point]) -> f64 {
    let mut diam: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            diam = diam.max(p.distance(*q));
        }
    }
    diam
}

/// Line `a*x + b*y = c` with `a^2 + b^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    /// Normalizes the implicit form; fails when `(a, b)` vanishes.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 0.0) || !n.is_finite() || !c.is_finite() {
            return Err(Error::DegenerateLine);
        }
        Ok(Line { a: a / n, b: b / n, c: c / n })
    }

    pub fn through(p: Point, q: Point) -> Result<Self> {
        let d = (q - p).normalized().ok_or(Error::DegenerateLine)?;
        Self::with_normal(p, d.perp())
    }

    pub fn from_direction(p: Point, direction: Point) -> Result<Self> {
        let d = direction.normalized().ok_or(Error::DegenerateLine)?;
        Self::with_normal(p, d.perp())
    }

    /// Line through `p` perpendicular to `normal`.
    pub fn with_normal(p: Point, normal: Point) -> Result<Self> {
        Self::new(normal.x, normal.y, normal.dot(p))
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    /// Distance from `p` to the circle along the radial direction.
    pub fn radial_residual(&self, p: Point) -> f64 {
        (p.distance(self.center) - self.radius).abs()
    }

    pub fn contains_strictly(&self, p: Point, rel_tol: f64) -> bool {
        p.distance(self.center) < self.radius * (1.0 - rel_tol)
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::from_angle(angle) * self.radius
    }
}

/// Inversion in the circle of squared radius `power` around `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion {
    center: Point,
    power: f64,
}

impl Inversion {
    pub fn new(center: Point, power: f64) -> Result<Self> {
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::InvalidPower(power));
        }
        Ok(Inversion { center, power })
    }

    /// Inversion in `circle`, whose power is the squared radius.
    pub fn in_circle(circle: &Circle) -> Self {
        Inversion { center: circle.center, power: circle.radius * circle.radius }
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn power(&self) -> f64 {
        self.power
    }
}

/// Half the cross product of `q - p` and `r - p`; positive iff counterclockwise.
pub fn signed_area(p: Point, q: Point, r: Point) -> f64 {
    0.5 * (q - p).cross(r - p)
}

/// Unsigned angle at `vertex` between the rays towards `p` and `q`, in [0, pi].
pub fn angle_at(vertex: Point, p: Point, q: Point) -> Result<f64> {
    let u = p - vertex;
    let v = q - vertex;
    if is_zero_vector(u, vertex, p) || is_zero_vector(v, vertex, q) {
        return Err(Error::DegenerateRay);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Signed rotation in (-pi, pi] carrying the ray `vertex -> from` onto the
/// ray `vertex -> to`; positive when counterclockwise.
pub fn turn_angle(vertex: Point, from: Point, to: Point) -> Result<f64> {
    let u = from - vertex;
    let v = to - vertex;
    if is_zero_vector(u, vertex, from) || is_zero_vector(v, vertex, to) {
        return Err(Error::DegenerateRay);
    }
    Ok(u.cross(v).atan2(u.dot(v)))
}

fn is_zero_vector(d: Point, a: Point, b: Point) -> bool {
    let magnitude = a.x.abs().max(a.y.abs()).max(b.x.abs()).max(b.y.abs());
    d.norm() <= 4.0 * f64::EPSILON * magnitude || d.norm() == 0.0
}

/// Wraps an angle into (-pi, pi].
pub fn wrap_angle(angle: f64) -> f64 {
    let mut a = angle % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

pub fn foot_of_perpendicular(p: Point, line: &Line) -> Point {
    p - line.normal() * line.signed_distance(p)
}

pub fn reflect_across(line: &Line, p: Point) -> Point {
    p - line.normal() * (2.0 * line.signed_distance(p))
}

pub fn intersect_lines(l1: &Line, l2: &Line) -> Result<Point> {
    let det = l1.a * l2.b - l2.a * l1.b;
    if det.abs() < PARALLEL_EPS {
        return Err(Error::ParallelLines);
    }
    Ok(Point::new(
        (l1.c * l2.b - l2.c * l1.b) / det,
        (l1.a * l2.c - l2.a * l1.c) / det,
    ))
}

pub fn circle_through(p: Point, q: Point, r: Point) -> Result<Circle> {
    let scale = scale_of(&[p, q, r]);
    let u = q - p;
    let v = r - p;
    let d = 2.0 * u.cross(v);
    if !(scale > 0.0) || d.abs() <= 2.0 * REL_EPS * scale * scale {
        return Err(Error::CollinearPoints);
    }
    let (uu, vv) = (u.norm_sq(), v.norm_sq());
    let offset = Point::new(v.y * uu - u.y * vv, u.x * vv - v.x * uu) * (1.0 / d);
    Circle::new(p + offset, offset.norm())
}

/// Intersection points of two circles, ordered by increasing polar angle
/// about the first circle's center.
pub fn intersect_circles(c1: &Circle, c2: &Circle) -> Result<Vec<Point>> {
    let delta = c2.center - c1.center;
    let d = delta.norm();
    let tol = REL_EPS * c1.radius.max(c2.radius).max(d);
    if d <= tol {
        if (c1.radius - c2.radius).abs() <= tol {
            return Err(Error::CoincidentCircles);
        }
        return Ok(Vec::new());
    }
    if d > c1.radius + c2.radius + tol || d < (c1.radius - c2.radius).abs() - tol {
        return Ok(Vec::new());
    }
    let u = delta * (1.0 / d);
    let along = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    let h = (c1.radius * c1.radius - along * along).max(0.0).sqrt();
    let base = c1.center + u * along;
    if h <= tol {
        return Ok(vec![base]);
    }
    let mut pts = vec![base + u.perp() * h, base - u.perp() * h];
    pts.sort_by(|a, b| {
        let ta = (*a - c1.center).angle();
        let tb = (*b - c1.center).angle();
        ta.total_cmp(&tb)
    });
    Ok(pts)
}

/// Circle through `p` and `q` whose arc on the side of `side` sees the
/// chord `pq` under the angle `phi`.
pub fn inscribed_angle_circle(p: Point, q: Point, phi: f64, side: Point) -> Result<Circle> {
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::AngleOutOfRange(phi));
    }
    let chord = q - p;
    let len = chord.norm();
    let scale = scale_of(&[p, q, side]);
    if !(len > 0.0) {
        return Err(Error::DegenerateLine);
    }
    let cross = chord.cross(side - p);
    if cross.abs() <= REL_EPS * scale * scale {
        return Err(Error::WitnessOnChord);
    }
    let mut normal = chord.perp() * (1.0 / len);
    if cross < 0.0 {
        normal = -normal;
    }
    let center = p.midpoint(q) + normal * (0.5 * len / phi.tan());
    Circle::new(center, 0.5 * len / phi.sin())
}

pub fn invert_point(inv: &Inversion, p: Point) -> Result<Point> {
    let d = p - inv.center;
    let dist_sq = d.norm_sq();
    if dist_sq <= (PARALLEL_EPS * PARALLEL_EPS) * inv.power || dist_sq == 0.0 {
        return Err(Error::InversionCenter);
    }
    Ok(inv.center + d * (inv.power / dist_sq))
}

/// Second intersection of two circles that are known to share `known`:
/// the mirror image of `known` across the line of centers.
pub fn second_intersection(c1: &Circle, c2: &Circle, known: Point) -> Result<Point> {
    let axis = Line::through(c1.center, c2.center).map_err(|_| Error::CoincidentCircles)?;
    Ok(reflect_across(&axis, known))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    fn line_xy(a: f64, b: f64, c: f64) -> Line {
        Line::new(a, b, c).unwrap()
    }

    #[test]
    fn signed_area_examples() {
        let o = Point::ORIGIN;
        assert_eq!(signed_area(o, Point::new(4.0, 0.0), Point::new(0.0, 3.0)), 6.0);
        assert_eq!(signed_area(o, Point::new(0.0, 3.0), Point::new(4.0, 0.0)), -6.0);
        assert_eq!(signed_area(o, Point::new(1.0, 1.0), Point::new(2.0, 2.0)), 0.0);
    }

    #[test]
    fn angle_at_examples() {
        let o = Point::ORIGIN;
        let e = Point::new(1.0, 0.0);
        assert!((angle_at(o, e, Point::new(0.0, 1.0)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((angle_at(o, e, Point::new(-1.0, 0.0)).unwrap() - PI).abs() < 1e-15);
        assert!((angle_at(o, e, Point::new(1.0, 1.0)).unwrap() - PI / 4.0).abs() < 1e-15);
        assert_eq!(angle_at(o, o, e), Err(Error::DegenerateRay));
    }

    #[test]
    fn foot_examples() {
        let x_axis = line_xy(0.0, 1.0, 0.0);
        assert_eq!(foot_of_perpendicular(Point::new(1.0, 1.0), &x_axis), Point::new(1.0, 0.0));
        let p = Point::new(7.5, 0.0);
        assert_eq!(foot_of_perpendicular(p, &x_axis), p);
        let y_axis = line_xy(1.0, 0.0, 0.0);
        assert_eq!(foot_of_perpendicular(Point::new(3.0, 4.0), &y_axis), Point::new(0.0, 4.0));
    }

    #[test]
    fn intersect_lines_examples() {
        let x0 = line_xy(1.0, 0.0, 0.0);
        let y0 = line_xy(0.0, 1.0, 0.0);
        assert!(close(intersect_lines(&x0, &y0).unwrap(), Point::ORIGIN, 1e-15));
        let diag = Line::through(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap();
        let anti = Line::through(Point::new(0.0, 4.0), Point::new(4.0, 0.0)).unwrap();
        assert!(close(intersect_lines(&diag, &anti).unwrap(), Point::new(2.0, 2.0), 1e-14));
        let y1 = line_xy(0.0, 1.0, 1.0);
        assert_eq!(intersect_lines(&y0, &y1), Err(Error::ParallelLines));
    }

    #[test]
    fn reflect_examples() {
        let x_axis = line_xy(0.0, 1.0, 0.0);
        assert_eq!(reflect_across(&x_axis, Point::new(1.0, 2.0)), Point::new(1.0, -2.0));
        assert_eq!(reflect_across(&x_axis, Point::new(3.0, 0.0)), Point::new(3.0, 0.0));
        let diag = Line::through(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap();
        assert!(close(reflect_across(&diag, Point::new(2.0, 0.0)), Point::new(0.0, 2.0), 1e-15));
    }

    #[test]
    fn circle_through_examples() {
        let c = circle_through(Point::ORIGIN, Point::new(4.0, 0.0), Point::new(0.0, 3.0)).unwrap();
        assert!(close(c.center, Point::new(2.0, 1.5), 1e-14));
        assert!((c.radius - 2.5).abs() < 1e-14);

        let c = circle_through(Point::ORIGIN, Point::new(2.0, 0.0), Point::new(1.0, SQRT3)).unwrap();
        assert!(close(c.center, Point::new(1.0, 1.0 / SQRT3), 1e-14));
        assert!((c.radius - 2.0 / SQRT3).abs() < 1e-14);

        let err = circle_through(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(2.0, 0.0));
        assert_eq!(err, Err(Error::CollinearPoints));
    }

    #[test]
    fn intersect_circles_examples() {
        let unit = |x: f64| Circle::new(Point::new(x, 0.0), 1.0).unwrap();
        let two = intersect_circles(&unit(0.0), &unit(1.0)).unwrap();
        assert_eq!(two.len(), 2);
        assert!(close(two[0], Point::new(0.5, -SQRT3 / 2.0), 1e-15));
        assert!(close(two[1], Point::new(0.5, SQRT3 / 2.0), 1e-15));

        let one = intersect_circles(&unit(0.0), &unit(2.0)).unwrap();
        assert_eq!(one, vec![Point::new(1.0, 0.0)]);

        assert!(intersect_circles(&unit(0.0), &unit(3.0)).unwrap().is_empty());
        assert_eq!(intersect_circles(&unit(0.0), &unit(0.0)), Err(Error::CoincidentCircles));
    }

    #[test]
    fn inscribed_angle_circle_examples() {
        let p = Point::ORIGIN;
        let q = Point::new(2.0, 0.0);
        let up = Point::new(0.0, 1.0);

        let c = inscribed_angle_circle(p, q, PI / 2.0, up).unwrap();
        assert!(close(c.center, Point::new(1.0, 0.0), 1e-15));
        assert!((c.radius - 1.0).abs() < 1e-15);

        let c = inscribed_angle_circle(p, q, PI / 3.0, up).unwrap();
        assert!(close(c.center, Point::new(1.0, 1.0 / SQRT3), 1e-15));
        assert!((c.radius - 2.0 / SQRT3).abs() < 1e-15);

        let c = inscribed_angle_circle(p, q, 2.0 * PI / 3.0, up).unwrap();
        assert!(close(c.center, Point::new(1.0, -1.0 / SQRT3), 1e-15));
        assert!((c.radius - 2.0 / SQRT3).abs() < 1e-15);
        // the arc above the chord: its topmost point
        let top = c.center + Point::new(0.0, c.radius);
        assert!((angle_at(top, p, q).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);

        assert!(inscribed_angle_circle(p, q, PI, up).is_err());
        assert!(inscribed_angle_circle(p, q, 0.0, up).is_err());
        assert_eq!(
            inscribed_angle_circle(p, q, 1.0, Point::new(5.0, 0.0)),
            Err(Error::WitnessOnChord)
        );
    }

    #[test]
    fn invert_point_examples() {
        let inv = Inversion::new(Point::ORIGIN, 4.0).unwrap();
        assert_eq!(invert_point(&inv, Point::new(1.0, 0.0)).unwrap(), Point::new(4.0, 0.0));
        let on_circle = Point::new(0.0, 2.0);
        assert!(close(invert_point(&inv, on_circle).unwrap(), on_circle, 1e-15));

        let inv = Inversion::new(Point::new(2.0, 1.0), 5.0).unwrap();
        assert!(close(invert_point(&inv, Point::new(1.0, 1.0)).unwrap(), Point::new(-3.0, 1.0), 1e-14));
        assert_eq!(invert_point(&inv, Point::new(2.0, 1.0)), Err(Error::InversionCenter));
        assert!(Inversion::new(Point::ORIGIN, 0.0).is_err());
    }

    #[test]
    fn line_is_normalized() {
        let l = Line::new(3.0, 4.0, 10.0).unwrap();
        let (a, b, c) = l.coefficients();
        assert!((a * a + b * b - 1.0).abs() < 1e-15);
        assert!((c - 2.0).abs() < 1e-15);
        assert_eq!(Line::new(0.0, 0.0, 1.0), Err(Error::DegenerateLine));
    }

    #[test]
    fn wrap_angle_range() {
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert!((wrap_angle(-3.0 * PI / 2.0) - PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
    }
}
