//! Triangle-level constructions: pedal and antipedal triangles, isogonal
//! conjugation, homothety detection and the homothetic inscription.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    angle_at, circle_through, foot_of_perpendicular, intersect_lines, reflect_across, scale_of,
    signed_area, Circle, Line, Point, REL_EPS,
};

/// A side line of the reference triangle, named by its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    BC,
    CA,
    AB,
}

impl Side {
    /// Order used for every per-side array in this crate.
    pub const ALL: [Side; 3] = [Side::BC, Side::CA, Side::AB];

    pub fn index(self) -> usize {
        match self {
            Side::BC => 0,
            Side::CA => 1,
            Side::AB => 2,
        }
    }

    /// Index of the vertex opposite this side (A = 0, B = 1, C = 2).
    pub fn opposite_vertex(self) -> usize {
        self.index()
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::BC => "BC",
            Side::CA => "CA",
            Side::AB => "AB",
        }
    }
}

/// Non-degenerate triangle with ordered vertices A, B, C.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        let vertices = [a, b, c];
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateTriangle);
        }
        let scale = scale_of(&vertices);
        if !(signed_area(a, b, c).abs() > REL_EPS * scale * scale) {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle { vertices })
    }

    pub fn from_array(v: [Point; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }

    pub fn a(&self) -> Point {
        self.vertices[0]
    }

    pub fn b(&self) -> Point {
        self.vertices[1]
    }

    pub fn c(&self) -> Point {
        self.vertices[2]
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(self.a(), self.b(), self.c())
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// +1 for counterclockwise, -1 for clockwise.
    pub fn orientation(&self) -> f64 {
        self.signed_area().signum()
    }

    pub fn scale(&self) -> f64 {
        scale_of(&self.vertices)
    }

    /// Endpoints of a side, in the cyclic order B->C, C->A, A->B.
    pub fn side_endpoints(&self, side: Side) -> (Point, Point) {
        let [a, b, c] = self.vertices;
        match side {
            Side::BC => (b, c),
            Side::CA => (c, a),
            Side::AB => (a, b),
        }
    }

    pub fn side_line(&self, side: Side) -> Line {
        let (p, q) = self.side_endpoints(side);
        Line::through(p, q).expect("non-degenerate triangle has distinct vertices")
    }

    /// Interior angles at A, B, C.
    pub fn angles(&self) -> [f64; 3] {
        // Non-degeneracy guarantees non-zero edges, whatever their size
        // relative to the coordinates.
        let angle = |v: Point, p: Point, q: Point| {
            let (u, w) = (p - v, q - v);
            u.cross(w).abs().atan2(u.dot(w))
        };
        let [a, b, c] = self.vertices;
        [angle(a, b, c), angle(b, c, a), angle(c, a, b)]
    }

    pub fn circumcircle(&self) -> Circle {
        let [a, b, c] = self.vertices;
        circle_through(a, b, c).expect("non-degenerate triangle has a circumcircle")
    }

    /// Angle-bisector incenter.
    pub fn incenter(&self) -> Point {
        let [a, b, c] = self.vertices;
        let (la, lb, lc) = (b.distance(c), c.distance(a), a.distance(b));
        (a * la + b * lb + c * lc) * (1.0 / (la + lb + lc))
    }

    pub fn centroid(&self) -> Point {
        let [a, b, c] = self.vertices;
        (a + b + c) * (1.0 / 3.0)
    }

    /// Strictly inside, with a margin relative to the triangle's scale.
    pub fn contains(&self, p: Point) -> bool {
        let margin = REL_EPS * self.scale();
        let o = self.orientation();
        Side::ALL
            .iter()
            .all(|s| o * self.side_line(*s).signed_distance(p) > margin)
    }

    /// Same triangle with every vertex mapped by `f`.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Triangle> {
        let [a, b, c] = self.vertices;
        Triangle::new(f(a), f(b), f(c))
    }
}

/// Perpendicular feet of a point onto the three side lines of a host triangle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PedalResult {
    pub pedal_point: Point,
    /// Feet on BC, CA, AB.
    pub feet: [Point; 3],
    pub area: f64,
    pub signed_area: f64,
    /// Interior angles at the feet, `None` when the feet are collinear.
    pub angles: Option<[f64; 3]>,
}

impl PedalResult {
    pub fn foot(&self, side: Side) -> Point {
        self.feet[side.index()]
    }

    pub fn angle(&self, side: Side) -> Option<f64> {
        self.angles.map(|a| a[side.index()])
    }

    pub fn is_degenerate(&self) -> bool {
        self.angles.is_none()
    }

    pub fn triangle(&self) -> Result<Triangle> {
        Triangle::from_array(self.feet)
    }
}

pub fn pedal_triangle(host: &Triangle, p: Point) -> PedalResult {
    let feet = Side::ALL.map(|s| foot_of_perpendicular(p, &host.side_line(s)));
    let signed = signed_area(feet[0], feet[1], feet[2]);
    let scale = host.scale();
    let angles = if signed.abs() > REL_EPS * scale * scale {
        let [d, e, f] = feet;
        match (angle_at(d, e, f), angle_at(e, f, d), angle_at(f, d, e)) {
            (Ok(x), Ok(y), Ok(z)) => Some([x, y, z]),
            _ => None,
        }
    } else {
        None
    };
    PedalResult { pedal_point: p, feet, area: signed.abs(), signed_area: signed, angles }
}

/// Triangle bounded by the perpendiculars to PA, PB, PC through A, B, C.
///
/// Vertex `i` of the result is opposite host vertex `i`, so the pedal
/// triangle of `p` with respect to the result has feet (A, B, C).
pub fn antipedal_triangle(host: &Triangle, p: Point) -> Result<Triangle> {
    let lines = host
        .vertices()
        .map(|v| Line::with_normal(v, v - p).map_err(|_| Error::AntipedalDegenerate));
    let [la, lb, lc] = lines;
    let (la, lb, lc) = (la?, lb?, lc?);
    let meet = |l1: &Line, l2: &Line| intersect_lines(l1, l2).map_err(|_| Error::AntipedalDegenerate);
    Triangle::new(meet(&lb, &lc)?, meet(&lc, &la)?, meet(&la, &lb)?)
        .map_err(|_| Error::AntipedalDegenerate)
}

/// Internal angle bisector line at vertex `i`.
fn bisector(host: &Triangle, i: usize) -> Line {
    let v = host.vertex(i);
    let u = (host.vertex((i + 1) % 3) - v).normalized().expect("distinct vertices");
    let w = (host.vertex((i + 2) % 3) - v).normalized().expect("distinct vertices");
    Line::from_direction(v, u + w).expect("bisector of a proper angle")
}

/// Cevian of `p` through vertex `i`, reflected across the bisector there.
fn reflected_cevian(host: &Triangle, i: usize, p: Point) -> Result<Line> {
    let v = host.vertex(i);
    let image = reflect_across(&bisector(host, i), p);
    Line::through(v, image).map_err(|_| Error::IsogonalUndefined)
}

pub fn isogonal_conjugate(host: &Triangle, p: Point) -> Result<Point> {
    let scale = host.scale();
    if Side::ALL
        .iter()
        .any(|s| host.side_line(*s).distance(p) <= REL_EPS * scale)
    {
        return Err(Error::IsogonalUndefined);
    }
    let cevians = [
        reflected_cevian(host, 0, p)?,
        reflected_cevian(host, 1, p)?,
        reflected_cevian(host, 2, p)?,
    ];
    // Intersect the best-conditioned pair.
    let (i, j) = [(0, 1), (1, 2), (2, 0)]
        .into_iter()
        .max_by(|&(a, b), &(c, d)| {
            let s1 = cevians[a].normal().cross(cevians[b].normal()).abs();
            let s2 = cevians[c].normal().cross(cevians[d].normal()).abs();
            s1.total_cmp(&s2)
        })
        .expect("three pairs");
    intersect_lines(&cevians[i], &cevians[j]).map_err(|_| Error::ConjugateAtInfinity)
}

/// Largest distance from `q` to the three cevians of `p` reflected across
/// the bisectors of `host`, divided by the host scale. Zero iff `q` is the
/// isogonal conjugate of `p`.
pub fn isogonal_residual(host: &Triangle, p: Point, q: Point) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        worst = worst.max(reflected_cevian(host, i, p)?.distance(q));
    }
    Ok(worst / host.scale())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HomothetyCenter {
    Finite(Point),
    /// Pure translation; carries the translation vector.
    AtInfinity(Point),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Homothety {
    pub center: HomothetyCenter,
    pub ratio: f64,
}

impl Homothety {
    pub fn apply(&self, p: Point) -> Point {
        match self.center {
            HomothetyCenter::Finite(o) => o + (p - o) * self.ratio,
            HomothetyCenter::AtInfinity(t) => p + t,
        }
    }

    pub fn finite_center(&self) -> Option<Point> {
        match self.center {
            HomothetyCenter::Finite(o) => Some(o),
            HomothetyCenter::AtInfinity(_) => None,
        }
    }
}

/// Side directions must agree to within this many radians.
pub const HOMOTHETY_ANGLE_TOL: f64 = 1e-8;

pub fn homothety_between(src: &Triangle, dst: &Triangle) -> Result<Homothety> {
    let s = src.vertices();
    let d = dst.vertices();
    let mut best_len = 0.0;
    let mut ratio = 0.0;
    for i in 0..3 {
        let j = (i + 1) % 3;
        let u = s[j] - s[i];
        let w = d[j] - d[i];
        let sin = u.cross(w).abs() / (u.norm() * w.norm());
        if !(sin <= HOMOTHETY_ANGLE_TOL) {
            return Err(Error::NotHomothetic);
        }
        if u.norm() > best_len {
            best_len = u.norm();
            ratio = u.dot(w) / u.norm_sq();
        }
    }
    if (ratio - 1.0).abs() <= 1e-12 {
        let t = ((d[0] - s[0]) + (d[1] - s[1]) + (d[2] - s[2])) * (1.0 / 3.0);
        return Ok(Homothety { center: HomothetyCenter::AtInfinity(t), ratio: 1.0 });
    }
    let sum = (d[0] - s[0] * ratio) + (d[1] - s[1] * ratio) + (d[2] - s[2] * ratio);
    let center = sum * (1.0 / (3.0 * (1.0 - ratio)));
    Ok(Homothety { center: HomothetyCenter::Finite(center), ratio })
}

/// Parameter `t` with `p = from + t (to - from)`, after checking that `p`
/// lies on the line and is not an endpoint.
fn side_parameter(p: Point, from: Point, to: Point, scale: f64) -> Result<f64> {
    let d = to - from;
    let line = Line::through(from, to)?;
    if line.distance(p) > REL_EPS * scale {
        return Err(Error::NotOnSideLine);
    }
    let t = (p - from).dot(d) / d.norm_sq();
    let len = d.norm();
    if (t * len).abs() <= REL_EPS * scale || ((1.0 - t) * len).abs() <= REL_EPS * scale {
        return Err(Error::RatioUndefined);
    }
    Ok(t)
}

/// Triangle C1C2C3 inscribed in B1B2B3 and homothetic to `outer`, where
/// B1 lies on A2A3, B2 on A3A1 and B3 on A1A2.
///
/// Each C divides its side of B1B2B3 in the same signed ratio as the
/// matching B divides its side of the outer triangle, which makes the
/// inscribed triangle's area the geometric mean of the other two.
pub fn inscribe_homothetic(outer: &Triangle, b1: Point, b2: Point, b3: Point) -> Result<Triangle> {
    let [a1, a2, a3] = outer.vertices();
    let scale = outer.scale();
    let t1 = side_parameter(b1, a2, a3, scale)?;
    let t2 = side_parameter(b2, a3, a1, scale)?;
    let t3 = side_parameter(b3, a1, a2, scale)?;
    let c1 = b3 + (b2 - b3) * t1;
    let c2 = b1 + (b3 - b1) * t2;
    let c3 = b2 + (b1 - b2) * t3;
    Triangle::new(c1, c2, c3)
}

/// `|R^2 - OM^2| / (4 R^2)` for the circumcircle (O, R) of `host`.
pub fn pedal_area_ratio(host: &Triangle, m: Point) -> f64 {
    let cc = host.circumcircle();
    let r2 = cc.radius * cc.radius;
    (r2 - m.distance(cc.center).powi(2)).abs() / (4.0 * r2)
}

/// Orthocenter via two altitudes.
pub fn orthocenter(host: &Triangle) -> Point {
    let [a, b, c] = host.vertices();
    let alt_a = Line::with_normal(a, c - b).expect("distinct vertices");
    let alt_b = Line::with_normal(b, a - c).expect("distinct vertices");
    intersect_lines(&alt_a, &alt_b).expect("altitudes of a proper triangle meet")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn scalene() -> Triangle {
        Triangle::new(p(0.0, 0.0), p(4.0, 0.0), p(1.0, 3.0)).unwrap()
    }

    fn equilateral() -> Triangle {
        Triangle::new(p(0.0, 0.0), p(2.0, 0.0), p(1.0, SQRT3)).unwrap()
    }

    fn near(a: Point, b: Point, tol: f64) {
        assert!(a.distance(b) <= tol, "{a} vs {b}");
    }

    #[test]
    fn degenerate_triangle_rejected() {
        assert_eq!(
            Triangle::new(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn pedal_of_circumcenter_is_medial() {
        let t = equilateral();
        let r = pedal_triangle(&t, p(1.0, 1.0 / SQRT3));
        near(r.foot(Side::AB), p(1.0, 0.0), 1e-15);
        near(r.foot(Side::BC), p(1.5, SQRT3 / 2.0), 1e-15);
        near(r.foot(Side::CA), p(0.5, SQRT3 / 2.0), 1e-15);
        assert!((r.area - SQRT3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn pedal_of_vertex_is_simson_line() {
        let t = Triangle::new(p(0.0, 0.0), p(4.0, 0.0), p(0.0, 3.0)).unwrap();
        let r = pedal_triangle(&t, p(0.0, 0.0));
        assert!(r.area < 1e-15);
        assert!(r.is_degenerate());
    }

    #[test]
    fn pedal_of_orthocenter_is_orthic() {
        let r = pedal_triangle(&scalene(), p(1.0, 1.0));
        near(r.foot(Side::BC), p(2.0, 2.0), 1e-14);
        near(r.foot(Side::CA), p(0.4, 1.2), 1e-14);
        near(r.foot(Side::AB), p(1.0, 0.0), 1e-14);
        assert!((r.area - 1.2).abs() < 1e-14);
        let sum: f64 = r.angles.unwrap().iter().sum();
        assert!((sum - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn antipedal_of_equilateral_center() {
        let t = equilateral();
        let c = p(1.0, 1.0 / SQRT3);
        let anti = antipedal_triangle(&t, c).unwrap();
        assert!((anti.area() - 4.0 * t.area()).abs() < 1e-13);
        let angles = anti.angles();
        for a in angles {
            assert!((a - std::f64::consts::FRAC_PI_3).abs() < 1e-13);
        }
    }

    #[test]
    fn antipedal_round_trip_at_centroid() {
        let t = scalene();
        let g = p(5.0 / 3.0, 1.0);
        let anti = antipedal_triangle(&t, g).unwrap();
        let back = pedal_triangle(&anti, g);
        for (foot, v) in back.feet.iter().zip(t.vertices()) {
            near(*foot, v, 1e-12);
        }
    }

    #[test]
    fn antipedal_rejects_side_line_points() {
        let t = scalene();
        assert_eq!(antipedal_triangle(&t, p(2.0, 0.0)), Err(Error::AntipedalDegenerate));
    }

    #[test]
    fn incenter_is_self_conjugate() {
        let t = scalene();
        let i = t.incenter();
        near(isogonal_conjugate(&t, i).unwrap(), i, 1e-13);
    }

    #[test]
    fn circumcenter_conjugates_to_orthocenter() {
        let t = scalene();
        near(t.circumcircle().center, p(2.0, 1.0), 1e-14);
        near(orthocenter(&t), p(1.0, 1.0), 1e-14);
        near(isogonal_conjugate(&t, p(2.0, 1.0)).unwrap(), p(1.0, 1.0), 1e-13);
        assert!(isogonal_residual(&t, p(2.0, 1.0), p(1.0, 1.0)).unwrap() < 1e-14);
    }

    #[test]
    fn isogonal_errors() {
        let t = scalene();
        assert_eq!(isogonal_conjugate(&t, p(2.0, 0.0)), Err(Error::IsogonalUndefined));
        assert_eq!(isogonal_conjugate(&t, p(0.0, 0.0)), Err(Error::IsogonalUndefined));
        // a point on the circumcircle away from the vertices
        let cc = t.circumcircle();
        let on = cc.point_at(-1.0);
        assert!(matches!(
            isogonal_conjugate(&t, on),
            Err(Error::ConjugateAtInfinity) | Ok(_)
        ));
    }

    #[test]
    fn medial_homothety() {
        let t = scalene();
        let [a, b, c] = t.vertices();
        let medial = Triangle::new(b.midpoint(c), c.midpoint(a), a.midpoint(b)).unwrap();
        let h = homothety_between(&t, &medial).unwrap();
        near(h.finite_center().unwrap(), p(5.0 / 3.0, 1.0), 1e-14);
        assert!((h.ratio + 0.5).abs() < 1e-15);
    }

    #[test]
    fn translation_is_at_infinity() {
        let t = scalene();
        let moved = t.map(|v| v + p(1.0, 0.0)).unwrap();
        let h = homothety_between(&t, &moved).unwrap();
        assert_eq!(h.ratio, 1.0);
        match h.center {
            HomothetyCenter::AtInfinity(v) => near(v, p(1.0, 0.0), 1e-15),
            other => panic!("expected translation, got {other:?}"),
        }
    }

    #[test]
    fn rotation_is_not_homothetic() {
        let t = scalene();
        let rot = t.map(|v| v.rotate(10f64.to_radians())).unwrap();
        assert_eq!(homothety_between(&t, &rot), Err(Error::NotHomothetic));
    }

    #[test]
    fn inscribe_with_midpoints() {
        let t = scalene();
        let [a1, a2, a3] = t.vertices();
        let inner = inscribe_homothetic(&t, a2.midpoint(a3), a3.midpoint(a1), a1.midpoint(a2)).unwrap();
        assert!((inner.area() - t.area() / 16.0).abs() < 1e-14);
        let medial_area = t.area() / 4.0;
        assert!((medial_area * medial_area - t.area() * inner.area()).abs() < 1e-13);
        assert!(homothety_between(&t, &inner).is_ok());
    }

    #[test]
    fn inscribe_rejects_vertex() {
        let t = scalene();
        let [a1, a2, a3] = t.vertices();
        assert_eq!(
            inscribe_homothetic(&t, a2, a3.midpoint(a1), a1.midpoint(a2)),
            Err(Error::RatioUndefined)
        );
        assert_eq!(
            inscribe_homothetic(&t, p(3.0, 3.0), a3.midpoint(a1), a1.midpoint(a2)),
            Err(Error::NotOnSideLine)
        );
    }

    #[test]
    fn pedal_area_ratio_examples() {
        let t = scalene();
        assert!((pedal_area_ratio(&t, p(2.0, 1.0)) - 0.25).abs() < 1e-15);
        assert!(pedal_area_ratio(&t, p(0.0, 0.0)) < 1e-15);
        let ratio = pedal_area_ratio(&t, p(1.0, 1.0));
        assert!((ratio - 0.2).abs() < 1e-15);
        assert!((ratio * t.area() - pedal_triangle(&t, p(1.0, 1.0)).area).abs() < 1e-14);
    }
}
