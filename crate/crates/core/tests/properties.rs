//! Randomized invariants of the constructions.

use std::f64::consts::PI;

use proptest::prelude::*;

use hexacycle::exec::Execution;
use hexacycle::extremal::{
    arc_circles, inverse_pedal_pair, max_circumscribed, min_inscribed, verify_angle_relations, AngleId,
};
use hexacycle::geom::{
    angle_at, circle_through, inscribed_angle_circle, intersect_circles, invert_point, Inversion,
};
use hexacycle::oracle::{circumscribed_family_max, inscribed_family_min, reference_circle_fit};
use hexacycle::six_circle::{fit_circle, six_point_theorem_check, CircleFit, Verdict};
use hexacycle::triangle::{
    antipedal_triangle, homothety_between, inscribe_homothetic, isogonal_conjugate, pedal_area_ratio,
    pedal_triangle,
};
use hexacycle::{AngleTriple, Circle, Point, Side, SideAssignment, Tolerances, Triangle};

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

/// Triangles with every angle at least 10 degrees.
fn triangle() -> impl Strategy<Value = Triangle> {
    (point(), point(), point())
        .prop_filter_map("thin triangle", |(a, b, c)| {
            Triangle::new(a, b, c).ok().filter(|t| t.angles().iter().all(|x| x.to_degrees() >= 10.0))
        })
}

/// Barycentric weights bounded away from the sides.
fn interior_weights() -> impl Strategy<Value = (f64, f64, f64)> {
    (0.05..1.0f64, 0.05..1.0f64, 0.05..1.0f64).prop_map(|(u, v, w)| {
        let s = u + v + w;
        (u / s, v / s, w / s)
    })
}

fn combine(t: &Triangle, (u, v, w): (f64, f64, f64)) -> Point {
    let [a, b, c] = t.vertices();
    a * u + b * v + c * w
}

fn angle_triple() -> impl Strategy<Value = AngleTriple> {
    (0.0..1.0f64, 0.0..1.0f64).prop_map(|(u, v)| {
        let min = 10f64.to_radians();
        let free = PI - 3.0 * min;
        let (lo, hi) = (u.min(v), u.max(v));
        let a = min + free * lo;
        let b = min + free * (hi - lo);
        AngleTriple::new(a, b, PI - a - b).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pedal_feet_lie_on_side_lines(t in triangle(), p in point()) {
        let pedal = pedal_triangle(&t, p);
        for side in Side::ALL {
            prop_assert!(t.side_line(side).distance(pedal.foot(side)) <= 1e-9 * t.scale());
        }
        if let Some(angles) = pedal.angles {
            prop_assert!((angles.iter().sum::<f64>() - PI).abs() <= 1e-9);
        }
    }

    #[test]
    fn antipedal_round_trip(t in triangle(), w in interior_weights()) {
        let p = combine(&t, w);
        let anti = antipedal_triangle(&t, p).unwrap();
        let pedal = pedal_triangle(&anti, p);
        for (i, side) in Side::ALL.iter().enumerate() {
            prop_assert!(pedal.foot(*side).distance(t.vertex(i)) <= 1e-8 * anti.scale());
        }
    }

    #[test]
    fn isogonal_conjugation_is_an_involution(t in triangle(), w in interior_weights()) {
        let p = combine(&t, w);
        let q = isogonal_conjugate(&t, p).unwrap();
        let back = isogonal_conjugate(&t, q).unwrap();
        prop_assert!(back.distance(p) <= 1e-8 * t.scale());
    }

    #[test]
    fn pedal_area_formula_matches_direct_area(t in triangle(), p in point()) {
        let cc = t.circumcircle();
        let off_circle = (p.distance(cc.center) - cc.radius).abs() >= 0.05 * cc.radius;
        prop_assume!(off_circle);
        let direct = pedal_triangle(&t, p).area / t.area();
        let formula = pedal_area_ratio(&t, p);
        prop_assert!((direct - formula).abs() <= 1e-10 * formula);
    }

    #[test]
    fn inversion_is_an_involution(c in point(), r in 0.5..5.0f64, p in point()) {
        prop_assume!(p.distance(c) > 1e-3);
        let inv = Inversion::new(c, r * r).unwrap();
        let q = invert_point(&inv, p).unwrap();
        prop_assert!((p.distance(c) * q.distance(c) - r * r).abs() <= 1e-12 * r * r);
        let back = invert_point(&inv, q).unwrap();
        prop_assert!(back.distance(p) <= 1e-10 * (1.0 + p.distance(c)));
    }

    #[test]
    fn inscribed_angle_circle_sees_chord_under_angle(
        p in point(), q in point(), phi in 0.1..3.0f64, up in any::<bool>()
    ) {
        prop_assume!(p.distance(q) > 0.5);
        let normal = (q - p).perp();
        let witness = p.midpoint(q) + if up { normal } else { -normal };
        let circle = inscribed_angle_circle(p, q, phi, witness).unwrap();
        // Top of the arc on the witness side.
        let toward = if up { normal } else { -normal };
        let x = circle.center + toward.normalized().unwrap() * circle.radius;
        let seen = angle_at(x, p, q).unwrap();
        prop_assert!((seen - phi).abs() <= 1e-9, "{seen} vs {phi}");
    }

    #[test]
    fn circle_intersections_lie_on_both(c1 in point(), r1 in 1.0..5.0f64, c2 in point(), r2 in 1.0..5.0f64) {
        let (a, b) = (Circle::new(c1, r1).unwrap(), Circle::new(c2, r2).unwrap());
        if let Ok(points) = intersect_circles(&a, &b) {
            for x in points {
                prop_assert!(a.radial_residual(x) <= 1e-9 * 5.0);
                prop_assert!(b.radial_residual(x) <= 1e-9 * 5.0);
            }
        }
    }

    #[test]
    fn homothetic_inscription(t in triangle(), s in (0.05..0.95f64, 0.05..0.95f64, 0.05..0.95f64)) {
        let [a1, a2, a3] = t.vertices();
        let b1 = a2 + (a3 - a2) * s.0;
        let b2 = a3 + (a1 - a3) * s.1;
        let b3 = a1 + (a2 - a1) * s.2;
        let c = inscribe_homothetic(&t, b1, b2, b3).unwrap();
        prop_assert!(homothety_between(&t, &c).is_ok());
        let [c1, c2, c3] = c.vertices();
        // C1 on B2B3, C2 on B3B1, C3 on B1B2, dividing them as the B's divide the outer sides.
        let ratio = |x: Point, y: Point, z: Point| x.distance(y) / y.distance(z);
        let tol = 1e-9;
        prop_assert!((ratio(a1, b3, a2) - ratio(b2, c3, b1)).abs() <= tol * (1.0 + ratio(a1, b3, a2)));
        prop_assert!((ratio(a2, b1, a3) - ratio(b3, c1, b2)).abs() <= tol * (1.0 + ratio(a2, b1, a3)));
        prop_assert!((ratio(a3, b2, a1) - ratio(b1, c2, b3)).abs() <= tol * (1.0 + ratio(a3, b2, a1)));
        let inner = Triangle::new(b1, b2, b3).unwrap();
        let lhs = inner.area() * inner.area();
        prop_assert!((lhs - t.area() * c.area()).abs() <= 1e-9 * lhs);
    }

    #[test]
    fn pedal_triangle_is_its_own_minimizer(t in triangle(), w in interior_weights()) {
        let p = combine(&t, w);
        let pedal = pedal_triangle(&t, p);
        let [on_bc, on_ca, _] = pedal.angles.unwrap();
        let angles = AngleTriple::new(on_bc, on_ca, PI - on_bc - on_ca).unwrap();
        let asg = SideAssignment::from_sides(AngleId::Alpha, AngleId::Beta, AngleId::Gamma).unwrap();
        let cfg = min_inscribed(&t, &angles, &asg).unwrap();
        prop_assert!(cfg.pedal_point.distance(p) <= 1e-7 * t.scale());
        for side in Side::ALL {
            let d = cfg.min_triangle.vertex(side.index()).distance(pedal.foot(side));
            prop_assert!(d <= 1e-7 * t.scale());
        }
    }

    #[test]
    fn extremal_invariants(t in triangle(), angles in angle_triple(), index in 1..=6usize) {
        let asg = SideAssignment::from_index(index).unwrap();
        let Ok(cfg) = min_inscribed(&t, &angles, &asg) else {
            // Infeasible only when the angle-sum condition rules it out.
            let ok = Side::ALL
                .iter()
                .all(|s| asg.angle_on(*s, &angles) + t.angles()[s.opposite_vertex()] < PI - 1e-9);
            prop_assert!(!ok || arc_circles(&t, &angles, &asg).is_err());
            return Ok(());
        };
        let failures = cfg.residuals.failures(&Tolerances::default());
        prop_assert!(failures.is_empty(), "{:?} {:?}", failures, cfg.residuals);
        let max = max_circumscribed(&t, &angles, &asg).unwrap();
        prop_assert_eq!(max, cfg.max_triangle);
        let product = cfg.min_area() * cfg.max_area();
        prop_assert!((product - t.area() * t.area()).abs() <= 1e-9 * t.area() * t.area());
        prop_assert!(cfg.homothety_ratio.abs() >= 4.0 - 1e-9);
    }

    #[test]
    fn angle_relations_hold_inside_and_outside(t in triangle(), r in 0.02..3.0f64, phi in 0.0..(2.0 * PI)) {
        let cc = t.circumcircle();
        prop_assume!((r - 1.0).abs() > 0.02);
        let m = cc.center + Point::from_angle(phi) * (r * cc.radius);
        let on_side = Side::ALL.iter().any(|s| t.side_line(*s).distance(m) <= 1e-6 * t.scale());
        prop_assume!(!on_side && t.vertices().iter().all(|v| v.distance(m) > 1e-3 * t.scale()));
        let res = verify_angle_relations(&t, m).unwrap();
        prop_assert!(res.iter().all(|x| *x <= 1e-9), "{res:?}");
    }

    #[test]
    fn inverse_pedal_area_inequality(t in triangle(), r in 0.02..0.98f64, phi in 0.0..(2.0 * PI)) {
        let cc = t.circumcircle();
        let m = cc.center + Point::from_angle(phi) * (r * cc.radius);
        let pair = inverse_pedal_pair(&t, m).unwrap();
        prop_assert!(pair.pedal_m.area <= pair.pedal_n.area * (1.0 + 1e-12));
        prop_assert!(pair.angle_mismatch <= 1e-9);
    }

    #[test]
    fn circle_fits_agree(c in point(), r in 0.5..8.0f64, phases in prop::collection::vec(0.0..(2.0 * PI), 3..12)) {
        let pts: Vec<Point> = phases.iter().map(|a| c + Point::from_angle(*a) * r).collect();
        let spread = hexacycle::geom::scale_of(&pts);
        prop_assume!(spread > 0.1 * r);
        // Three well-separated phases keep the set away from collinear.
        let triple = circle_through(pts[0], pts[1], pts[2]);
        prop_assume!(triple.is_ok_and(|t| (t.radius - r).abs() < 1e-6 * r));
        let fit = fit_circle(&pts, r).unwrap();
        let CircleFit::Fitted { circle, max_residual, .. } = fit else {
            return Err(TestCaseError::fail(format!("{fit:?}")));
        };
        prop_assert!(max_residual <= 1e-9 * r);
        let (alt, _) = reference_circle_fit(&pts).unwrap();
        prop_assert!(alt.center.distance(circle.center) <= 1e-6 * r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn six_point_circle_on_random_instances(t in triangle(), angles in angle_triple()) {
        let report = six_point_theorem_check(&t, &angles, &Tolerances::default());
        prop_assert_ne!(report.interior_verdict, Verdict::Fail, "{:?}", report.interior_fit);
        prop_assert_ne!(report.exterior_verdict, Verdict::Fail, "{:?}", report.exterior_fit);
        for p in report.interior_points.iter().flatten() {
            prop_assert!(p.construction.third_circle_residual <= 1e-8);
            prop_assert!(p.construction.angle_sum_residual <= 1e-9);
            prop_assert!(p.route_agreement.is_some_and(|d| d <= 1e-7));
            prop_assert!(t.circumcircle().contains_strictly(p.construction.point, 0.0));
        }
    }

    #[test]
    fn sweeps_bound_the_constructions(t in triangle(), angles in angle_triple(), index in 1..=6usize) {
        let asg = SideAssignment::from_index(index).unwrap();
        let Ok(cfg) = min_inscribed(&t, &angles, &asg) else { return Ok(()) };
        let ref_sq = t.area() * t.area();
        let min = inscribed_family_min(&t, &angles, &asg, 720, Execution::Sequential).unwrap();
        let max = circumscribed_family_max(&t, &angles, &asg, 720, Execution::Sequential).unwrap();
        prop_assert!((min.extremum_area - cfg.min_area()).abs() <= 1e-6 * cfg.min_area());
        prop_assert!((max.extremum_area - cfg.max_area()).abs() <= 1e-6 * cfg.max_area());
        for (got, want) in min.extremum_triangle.vertices().iter().zip(cfg.min_triangle.vertices()) {
            prop_assert!(got.distance(want) <= 1e-5 * t.scale());
        }
        for s in min.feasible_samples() {
            prop_assert!(s.area * cfg.max_area() >= ref_sq * (1.0 - 1e-9));
        }
        for s in max.feasible_samples() {
            prop_assert!(s.area * cfg.min_area() <= ref_sq * (1.0 + 1e-9));
        }
    }
}
