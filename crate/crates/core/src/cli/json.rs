//! JSON documents for `verify` and `fuzz`, written with every float at 17
//! significant digits.

use std::io;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::extremal::ExtremalConfig;
use crate::geom::{Circle, Point};
use crate::six_circle::{CircleFit, ExteriorPoint, FitStatus};
use crate::tolerance::Tolerances;
use crate::triangle::Triangle;
use crate::verify::{AssignmentEvaluation, Evaluation};

pub const SCHEMA: &str = "hexacycle/1";

/// Compact formatter that prints floats in round-trip exact scientific
/// notation with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes with [`FullPrecision`]; non-finite floats become `null`.
pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser).expect("in-memory JSON");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn point(p: Point) -> Value {
    json!([p.x, p.y])
}

pub fn circle(c: &Circle) -> Value {
    json!({ "center": point(c.center), "radius": c.radius })
}

fn triangle(t: &Triangle) -> Value {
    Value::Array(t.vertices().iter().map(|p| point(*p)).collect())
}

fn error(e: &Error) -> Value {
    json!({ "status": "infeasible", "error": e.to_string() })
}

pub fn tolerances(t: &Tolerances) -> Value {
    serde_json::to_value(t).expect("plain struct")
}

pub fn fit(status: &FitStatus) -> Value {
    match status {
        FitStatus::Fit(CircleFit::Fitted { circle: c, max_residual, triple }) => json!({
            "status": "fitted",
            "circle": circle(c),
            "max_residual": max_residual,
            "relative_residual": max_residual / c.radius,
            "triple_circle": triple.as_ref().map(circle),
        }),
        FitStatus::Fit(CircleFit::Coincident) => json!({ "status": "degenerate: coincident", "max_residual": 0.0 }),
        FitStatus::Fit(CircleFit::Collinear) => json!({ "status": "degenerate: collinear" }),
        FitStatus::Insufficient(n) => json!({ "status": "insufficient points", "available": n }),
        FitStatus::Skipped(reason) => json!({ "status": "skipped", "reason": reason }),
    }
}

fn extremal(cfg: &ExtremalConfig, tol: &Tolerances) -> Value {
    json!({
        "K": point(cfg.pedal_point),
        "L": point(cfg.antipedal_point),
        "T": point(cfg.orthology_point),
        "O_h": point(cfg.homothety_center),
        "homothety_ratio": cfg.homothety_ratio,
        "min_triangle": triangle(&cfg.min_triangle),
        "max_triangle": triangle(&cfg.max_triangle),
        "min_area": cfg.min_area(),
        "max_area": cfg.max_area(),
        "arc_circles": {
            "AB": circle(&cfg.arc_circles.over_ab),
            "BC": circle(&cfg.arc_circles.over_bc),
            "CA": circle(&cfg.arc_circles.over_ca),
        },
        "residuals": serde_json::to_value(cfg.residuals).expect("plain struct"),
        "failures": cfg.residuals.failures(tol),
    })
}

fn assignment(ev: &AssignmentEvaluation, tol: &Tolerances) -> Value {
    let mut out = Map::new();
    out.insert("assignment".into(), serde_json::to_value(ev.assignment).expect("map"));
    match &ev.pedal {
        Ok(p) => {
            let c = &p.construction;
            out.insert("status".into(), json!("ok"));
            out.insert(format!("M{}", ev.assignment.index()), point(c.point));
            out.insert("third_circle_residual".into(), json!(c.third_circle_residual));
            out.insert("angle_sum_residual".into(), json!(c.angle_sum_residual));
            out.insert("route_agreement".into(), json!(p.route_agreement));
            out.insert(
                "antipedal_angles_degrees".into(),
                json!(p.antipedal_angles.map(|a| a.map(f64::to_degrees))),
            );
        }
        Err(e) => {
            out.insert("status".into(), json!("infeasible"));
            out.insert("error".into(), json!(e.to_string()));
        }
    }
    out.insert(
        "extremal".into(),
        match &ev.extremal {
            Ok(cfg) => extremal(cfg, tol),
            Err(e) => error(e),
        },
    );
    out.insert(
        "oracle".into(),
        match &ev.oracle {
            Some(Ok(cmp)) => serde_json::to_value(cmp).expect("plain struct"),
            Some(Err(e)) => error(e),
            None => Value::Null,
        },
    );
    out.insert("pedal_area_formula_residual".into(), json!(ev.pedal_formula));
    out.insert(
        "inverse_pair".into(),
        match &ev.inverse {
            Some(Ok(pair)) => json!({
                "N": point(pair.n),
                "pedal_area_M": pair.pedal_m.area,
                "pedal_area_N": pair.pedal_n.area,
                "area_ratio": pair.area_ratio,
                "predicted_ratio": pair.predicted_ratio,
                "angle_mismatch": pair.angle_mismatch,
            }),
            Some(Err(e)) => json!({ "status": "skipped", "error": e.to_string() }),
            None => Value::Null,
        },
    );
    Value::Object(out)
}

pub fn evaluation(ev: &Evaluation, input: Value) -> Value {
    let r = &ev.six.reference;
    let cc = r.circumcircle();
    let mut interior = Map::new();
    for (i, p) in ev.six.interior_points.iter().enumerate() {
        let v = p.as_ref().map_or(Value::Null, |p| point(p.construction.point));
        interior.insert(format!("M{}", i + 1), v);
    }
    let mut exterior = Map::new();
    for (i, p) in ev.six.exterior_points.iter().enumerate() {
        let v = match p {
            ExteriorPoint::Point(q) => point(*q),
            ExteriorPoint::UndefinedCenter => json!("undefined (center)"),
            ExteriorPoint::Missing => Value::Null,
        };
        exterior.insert(format!("N{}", i + 1), v);
    }
    let mut checks = Map::new();
    for (check, verdict) in &ev.checks {
        checks.insert(check.name().into(), serde_json::to_value(verdict).expect("enum"));
    }
    json!({
        "schema": SCHEMA,
        "command": "verify",
        "input": input,
        "tolerances": tolerances(&ev.tolerances),
        "reference": {
            "vertices": triangle(r),
            "angles_degrees": r.angles().map(f64::to_degrees),
            "area": r.area(),
            "circumcircle": circle(&cc),
        },
        "interior": { "points": interior, "fit": fit(&ev.six.interior_fit) },
        "exterior": { "points": exterior, "fit": fit(&ev.six.exterior_fit) },
        "defining_circles": ev.six.defining_circles.iter().map(|c| c.as_ref().map(circle)).collect::<Vec<_>>(),
        "assignments": ev.assignments.iter().map(|a| assignment(a, &ev.tolerances)).collect::<Vec<_>>(),
        "checks": checks,
        "failures": ev.failures,
        "outcome": serde_json::to_value(ev.outcome).expect("enum"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_string(&json!({ "x": 0.1, "n": 3, "bad": f64::NAN }));
        assert_eq!(s, "{\"bad\":null,\"n\":3,\"x\":1.0000000000000001e-1}\n");
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 0.1);
    }
}
