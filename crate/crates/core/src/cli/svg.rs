//! Static SVG figure of the reference triangle, the six pedal points and
//! their circles.

use std::fmt::Write;

use clap::ValueEnum;

use crate::geom::{Circle, Point};
use crate::six_circle::{CircleFit, ExteriorPoint, FitStatus, SixPointReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Layer {
    /// Reference triangle, M1..M6 and their fitted circle (always drawn).
    Interior,
    /// N1..N6 and the exterior circle.
    Exterior,
    /// The six defining inscribed-angle circles.
    Circles,
}

/// Bounding box in figure coordinates (y already flipped).
struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn new() -> Self {
        Bounds { min: Point::new(f64::INFINITY, f64::INFINITY), max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn add(&mut self, p: Point) {
        self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn add_circle(&mut self, c: &Circle) {
        let r = Point::new(c.radius, c.radius);
        self.add(flip(c.center) - r);
        self.add(flip(c.center) + r);
    }
}

fn flip(p: Point) -> Point {
    Point::new(p.x, -p.y)
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn circle_path(out: &mut String, c: &Circle, class: &str, stroke: f64) {
    let p = flip(c.center);
    let r = c.radius;
    let _ = writeln!(
        out,
        r#"    <path class="{class}" fill="none" stroke-width="{}" d="M {} {} a {} {} 0 1 0 {} 0 a {} {} 0 1 0 {} 0 Z"/>"#,
        num(stroke),
        num(p.x - r),
        num(p.y),
        num(r),
        num(r),
        num(2.0 * r),
        num(r),
        num(r),
        num(-2.0 * r),
    );
}

fn marker(out: &mut String, p: Point, class: &str, label: &str, radius: f64) {
    let q = flip(p);
    let _ = writeln!(
        out,
        r#"    <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
        num(q.x),
        num(q.y),
        num(radius)
    );
    let _ = writeln!(
        out,
        r#"    <text class="label" x="{}" y="{}" font-size="{}">{label}</text>"#,
        num(q.x + 1.5 * radius),
        num(q.y - 1.5 * radius),
        num(4.0 * radius)
    );
}

/// Renders the report. Returns the document and warnings for stderr.
pub fn render(report: &SixPointReport, layers: &[Layer]) -> (String, Vec<String>) {
    let exterior = layers.contains(&Layer::Exterior);
    let circles = layers.contains(&Layer::Circles);
    let mut warnings = Vec::new();

    let mut bounds = Bounds::new();
    for v in report.reference.vertices() {
        bounds.add(flip(v));
    }
    for p in report.interior_positions() {
        bounds.add(flip(p));
    }
    if let Some(c) = report.interior_fit.fit().and_then(|f| f.circle()) {
        bounds.add_circle(c);
    }
    if exterior {
        for p in report.exterior_positions() {
            bounds.add(flip(p));
        }
        if let Some(c) = report.exterior_fit.fit().and_then(|f| f.circle()) {
            bounds.add_circle(c);
        }
    }
    if circles {
        for c in report.defining_circles.iter().flatten() {
            bounds.add_circle(c);
        }
    }
    let size = (bounds.max - bounds.min).x.max((bounds.max - bounds.min).y);
    let margin = 0.1 * size;
    let origin = bounds.min - Point::new(margin, margin);
    let (w, h) = (bounds.max.x - bounds.min.x + 2.0 * margin, bounds.max.y - bounds.min.y + 2.0 * margin);
    let stroke = 0.003 * size;
    let dot = 0.008 * size;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        num(origin.x),
        num(origin.y),
        num(w),
        num(h),
        num(800.0 * h / w)
    );
    let _ = writeln!(
        out,
        "  <style>.reference-triangle{{fill:none;stroke:#222}} .fitted-circle{{stroke:#c0392b}} \
         .exterior-circle{{stroke:#2471a3}} .defining-circle{{stroke:#999;stroke-dasharray:4 2}} \
         .point-marker{{fill:#c0392b}} .exterior-marker{{fill:#2471a3}} .label{{font-family:sans-serif}}</style>"
    );

    let _ = writeln!(out, r#"  <g id="reference">"#);
    let pts: Vec<String> = report
        .reference
        .vertices()
        .iter()
        .map(|v| format!("{},{}", num(v.x), num(-v.y)))
        .collect();
    let _ = writeln!(
        out,
        r#"    <polygon class="reference-triangle" stroke-width="{}" points="{}"/>"#,
        num(stroke),
        pts.join(" ")
    );
    for (v, name) in report.reference.vertices().iter().zip(["A", "B", "C"]) {
        let q = flip(*v);
        let _ = writeln!(
            out,
            r#"    <text class="label" x="{}" y="{}" font-size="{}">{name}</text>"#,
            num(q.x + dot),
            num(q.y - dot),
            num(4.0 * dot)
        );
    }
    let _ = writeln!(out, "  </g>");

    if circles {
        let _ = writeln!(out, r#"  <g id="defining-circles">"#);
        for c in report.defining_circles.iter().flatten() {
            circle_path(&mut out, c, "defining-circle", stroke);
        }
        let _ = writeln!(out, "  </g>");
    }

    let _ = writeln!(out, r#"  <g id="interior">"#);
    match &report.interior_fit {
        FitStatus::Fit(CircleFit::Fitted { circle, .. }) => circle_path(&mut out, circle, "fitted-circle", stroke),
        other => {
            let text = match other {
                FitStatus::Fit(CircleFit::Coincident) => "coincident points: no fitted circle".to_string(),
                FitStatus::Fit(CircleFit::Collinear) => "collinear points: no fitted circle".to_string(),
                FitStatus::Insufficient(n) => format!("only {n} pedal points: no fitted circle"),
                FitStatus::Skipped(reason) => format!("fit skipped: {reason}"),
                FitStatus::Fit(CircleFit::Fitted { .. }) => unreachable!(),
            };
            let _ = writeln!(
                out,
                r#"    <text class="annotation" x="{}" y="{}" font-size="{}">{text}</text>"#,
                num(origin.x + margin / 2.0),
                num(origin.y + margin / 2.0),
                num(4.0 * dot)
            );
            warnings.push(format!("warning: {text}"));
        }
    }
    for (i, p) in report.interior_points.iter().enumerate() {
        if let Ok(p) = p {
            marker(&mut out, p.construction.point, "point-marker", &format!("M{}", i + 1), dot);
        }
    }
    let _ = writeln!(out, "  </g>");

    if exterior {
        let _ = writeln!(out, r#"  <g id="exterior">"#);
        match report.exterior_fit.fit() {
            Some(CircleFit::Fitted { circle, .. }) => circle_path(&mut out, circle, "exterior-circle", stroke),
            _ => warnings.push("warning: no exterior circle".to_string()),
        }
        for (i, p) in report.exterior_points.iter().enumerate() {
            if let ExteriorPoint::Point(q) = p {
                marker(&mut out, *q, "exterior-marker", &format!("N{}", i + 1), dot);
            }
        }
        let _ = writeln!(out, "  </g>");
    }
    let _ = writeln!(out, "</svg>");
    (out, warnings)
}
