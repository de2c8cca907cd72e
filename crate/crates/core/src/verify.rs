//! Runs every construction for one instance and grades each identity.

use serde::Serialize;

use crate::error::Error;
use crate::exec::Execution;
use crate::extremal::{inverse_pedal_pair, min_inscribed, AngleTriple, ExtremalConfig, InversePedalPair, SideAssignment};
use crate::oracle::{circumscribed_arcs, circumscribed_family_max, inscribed_family_min, parallel_condition, DEFAULT_GRID};
use crate::six_circle::{six_point_theorem_check, InteriorPoint, SixPointReport, Verdict};
use crate::tolerance::Tolerances;
use crate::triangle::{pedal_area_ratio, pedal_triangle, Triangle};

/// Constructed extremal areas against the brute-force sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleComparison {
    pub inscribed_min_area: f64,
    pub circumscribed_max_area: f64,
    /// `|constructed - swept| / constructed`
    pub min_relative_gap: f64,
    pub max_relative_gap: f64,
    /// How far the best sweep sample beats the construction, over |ABC|.
    /// Non-positive when the construction is optimal.
    pub min_beaten_by: f64,
    pub max_beaten_by: f64,
    /// Angle between SQ and the arc-center line at the swept maximum.
    pub parallel_condition: f64,
}

impl OracleComparison {
    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.min_relative_gap <= tol.oracle_relative
            && self.max_relative_gap <= tol.oracle_relative
            && self.min_beaten_by <= tol.oracle_slack
            && self.max_beaten_by <= tol.oracle_slack
            && self.parallel_condition <= tol.oracle_relative
    }
}

pub fn compare_with_oracle(cfg: &ExtremalConfig, grid: usize, exec: Execution) -> Result<OracleComparison, Error> {
    let (reference, angles, asg) = (&cfg.reference, &cfg.angles, &cfg.assignment);
    let inscribed = inscribed_family_min(reference, angles, asg, grid, exec)?;
    let circumscribed = circumscribed_family_max(reference, angles, asg, grid, exec)?;
    let arcs = circumscribed_arcs(reference, angles, asg)?;
    let (min_area, max_area, ref_area) = (cfg.min_area(), cfg.max_area(), reference.area());
    let min_sample = inscribed.feasible_samples().map(|s| s.area).fold(f64::INFINITY, f64::min);
    let max_sample = circumscribed.feasible_samples().map(|s| s.area).fold(0.0, f64::max);
    Ok(OracleComparison {
        inscribed_min_area: inscribed.extremum_area,
        circumscribed_max_area: circumscribed.extremum_area,
        min_relative_gap: (min_area - inscribed.extremum_area).abs() / min_area,
        max_relative_gap: (max_area - circumscribed.extremum_area).abs() / max_area,
        min_beaten_by: (min_area - min_sample.min(inscribed.extremum_area)) / ref_area,
        max_beaten_by: (max_sample.max(circumscribed.extremum_area) - max_area) / ref_area,
        parallel_condition: parallel_condition(&arcs, &circumscribed.extremum_triangle),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssignmentEvaluation {
    pub assignment: SideAssignment,
    pub pedal: Result<InteriorPoint, Error>,
    pub extremal: Result<ExtremalConfig, Error>,
    pub oracle: Option<Result<OracleComparison, Error>>,
    /// Relative gap between the direct pedal area ratio at K and the
    /// closed form `|R^2 - OK^2| / (4 R^2)`.
    pub pedal_formula: Option<f64>,
    pub inverse: Option<Result<InversePedalPair, Error>>,
}

impl AssignmentEvaluation {
    pub fn is_feasible(&self) -> bool {
        self.pedal.is_ok() && self.extremal.is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    SixPointCircle,
    ExteriorCircle,
    GeometricMean,
    ExtremalStructure,
    PedalMinimizer,
    PedalAreaFormula,
    InversePedalSimilarity,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::SixPointCircle,
        Check::ExteriorCircle,
        Check::GeometricMean,
        Check::ExtremalStructure,
        Check::PedalMinimizer,
        Check::PedalAreaFormula,
        Check::InversePedalSimilarity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::SixPointCircle => "six_point_circle",
            Check::ExteriorCircle => "exterior_circle",
            Check::GeometricMean => "geometric_mean",
            Check::ExtremalStructure => "extremal_structure",
            Check::PedalMinimizer => "pedal_minimizer",
            Check::PedalAreaFormula => "pedal_area_formula",
            Check::InversePedalSimilarity => "inverse_pedal_similarity",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Infeasible,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Infeasible => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub tolerances: Tolerances,
    pub six: SixPointReport,
    pub assignments: Vec<AssignmentEvaluation>,
    pub checks: Vec<(Check, Verdict)>,
    /// Names of the individual identities that failed, for diagnostics.
    pub failures: Vec<String>,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Grid for the brute-force sweeps; `None` skips them.
    pub oracle_grid: Option<usize>,
    pub exec: Execution,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { oracle_grid: Some(DEFAULT_GRID), exec: Execution::Sequential }
    }
}

fn evaluate_assignment(
    reference: &Triangle,
    angles: &AngleTriple,
    pedal: &Result<InteriorPoint, Error>,
    asg: SideAssignment,
    opts: &EvalOptions,
) -> AssignmentEvaluation {
    let extremal = min_inscribed(reference, angles, &asg);
    let (mut oracle, mut pedal_formula, mut inverse) = (None, None, None);
    if let Ok(cfg) = &extremal {
        oracle = opts.oracle_grid.map(|grid| compare_with_oracle(cfg, grid, opts.exec));
        let k = cfg.pedal_point;
        let formula = pedal_area_ratio(reference, k);
        if formula > 0.0 {
            let direct = pedal_triangle(reference, k).area / reference.area();
            pedal_formula = Some((direct - formula).abs() / formula);
        }
        inverse = Some(inverse_pedal_pair(reference, k));
    }
    AssignmentEvaluation { assignment: asg, pedal: pedal.clone(), extremal, oracle, pedal_formula, inverse }
}

/// Folds per-assignment verdicts: any failure fails, nothing evaluated
/// means skipped.
fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut out = Verdict::Skipped;
    for v in verdicts {
        out = match (out, v) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Infeasible, _) | (_, Verdict::Infeasible) => Verdict::Infeasible,
            (Verdict::Pass, _) | (_, Verdict::Pass) => Verdict::Pass,
            _ => Verdict::Skipped,
        };
    }
    out
}

fn grade(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

pub fn evaluate(reference: &Triangle, angles: &AngleTriple, tol: &Tolerances, opts: &EvalOptions) -> Evaluation {
    let six = six_point_theorem_check(reference, angles, tol);
    let assignments: Vec<AssignmentEvaluation> = SideAssignment::all()
        .iter()
        .zip(&six.interior_points)
        .map(|(asg, pedal)| evaluate_assignment(reference, angles, pedal, *asg, opts))
        .collect();

    let mut failures = Vec::new();
    let mut note = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
        ok
    };

    let mut geometric = Vec::new();
    let mut structure = Vec::new();
    let mut minimizer = Vec::new();
    let mut formula = Vec::new();
    let mut inverse = Vec::new();
    for ev in &assignments {
        let tag = format!("M{}", ev.assignment.index());
        let Ok(cfg) = &ev.extremal else {
            continue;
        };
        let r = &cfg.residuals;
        geometric.push(grade(note(r.geometric_mean <= tol.area, format!("{tag}: geometric_mean"))));

        let mut ok = true;
        for name in r.failures(tol) {
            ok &= note(false, format!("{tag}: {name}"));
        }
        if let Ok(p) = &ev.pedal {
            let c = &p.construction;
            ok &= note(c.third_circle_residual <= tol.construct, format!("{tag}: defining_circles"));
            ok &= note(c.angle_sum_residual <= tol.angle, format!("{tag}: angle_sum"));
            let agree = p.route_agreement.is_some_and(|d| d <= tol.route_agreement);
            ok &= note(agree, format!("{tag}: route_agreement"));
        }
        structure.push(grade(ok));

        match &ev.oracle {
            Some(Ok(cmp)) => minimizer.push(grade(note(cmp.passes(tol), format!("{tag}: oracle")))),
            Some(Err(_)) => minimizer.push(Verdict::Infeasible),
            None => {}
        }
        if let Some(gap) = ev.pedal_formula {
            formula.push(grade(note(gap <= tol.pedal_formula, format!("{tag}: pedal_area_formula"))));
        }
        match &ev.inverse {
            Some(Ok(pair)) => {
                let ratio_ok = (pair.area_ratio - pair.predicted_ratio).abs() <= tol.area * pair.predicted_ratio
                    && pair.area_ratio <= 1.0 + tol.area;
                let ok = pair.angle_mismatch <= tol.angle && ratio_ok;
                inverse.push(grade(note(ok, format!("{tag}: inverse_pedal_similarity"))));
            }
            Some(Err(Error::InverseAtInfinity)) | None => {}
            Some(Err(_)) => inverse.push(Verdict::Infeasible),
        }
    }

    let checks = vec![
        (Check::SixPointCircle, six.interior_verdict),
        (Check::ExteriorCircle, six.exterior_verdict),
        (Check::GeometricMean, combine(geometric)),
        (Check::ExtremalStructure, combine(structure)),
        (Check::PedalMinimizer, combine(minimizer)),
        (Check::PedalAreaFormula, combine(formula)),
        (Check::InversePedalSimilarity, combine(inverse)),
    ];
    if six.interior_verdict == Verdict::Fail {
        failures.push("six_point_circle".into());
    }
    if six.exterior_verdict == Verdict::Fail {
        failures.push("exterior_circle".into());
    }

    let any_infeasible = assignments.iter().any(|a| !a.is_feasible())
        || checks.iter().any(|(_, v)| *v == Verdict::Infeasible);
    let outcome = if checks.iter().any(|(_, v)| *v == Verdict::Fail) {
        Outcome::Fail
    } else if any_infeasible {
        Outcome::Infeasible
    } else {
        Outcome::Pass
    };
    Evaluation { tolerances: *tol, six, assignments, checks, failures, outcome }
}

impl Evaluation {
    pub fn verdict(&self, check: Check) -> Verdict {
        self.checks.iter().find(|(c, _)| *c == check).map_or(Verdict::Skipped, |(_, v)| *v)
    }

    /// Worst value of each tracked residual over the feasible assignments.
    pub fn metrics(&self) -> Vec<(&'static str, f64)> {
        let worst = |f: &dyn Fn(&AssignmentEvaluation) -> Option<f64>| {
            self.assignments.iter().filter_map(f).fold(f64::NAN, f64::max)
        };
        let res = |f: fn(&crate::extremal::ExtremalResiduals) -> f64| {
            worst(&|a: &AssignmentEvaluation| a.extremal.as_ref().ok().map(|c| f(&c.residuals)))
        };
        let oracle = |f: fn(&OracleComparison) -> f64| {
            worst(&|a: &AssignmentEvaluation| match &a.oracle {
                Some(Ok(c)) => Some(f(c)),
                _ => None,
            })
        };
        let interior = self.six.interior_fit.fit().map_or(f64::NAN, |f| f.relative_residual());
        let exterior = self.six.exterior_fit.fit().map_or(f64::NAN, |f| f.relative_residual());
        vec![
            ("interior_relative_residual", interior),
            ("exterior_relative_residual", exterior),
            ("third_circle", worst(&|a| a.pedal.as_ref().ok().map(|p| p.construction.third_circle_residual))),
            ("route_agreement", worst(&|a| a.pedal.as_ref().ok().and_then(|p| p.route_agreement))),
            ("angle_sum", worst(&|a| a.pedal.as_ref().ok().map(|p| p.construction.angle_sum_residual))),
            ("geometric_mean", res(|r| r.geometric_mean)),
            ("homothety", res(|r| r.homothety)),
            ("isogonal_LK", res(|r| r.isogonal_lk)),
            ("isogonal_TL", res(|r| r.isogonal_tl)),
            ("collinear_O_K_T", res(|r| r.collinearity_okt)),
            ("duality", res(|r| r.duality)),
            ("oracle_min_relative_gap", oracle(|c| c.min_relative_gap)),
            ("oracle_max_relative_gap", oracle(|c| c.max_relative_gap)),
            ("oracle_min_beaten_by", oracle(|c| c.min_beaten_by)),
            ("oracle_max_beaten_by", oracle(|c| c.max_beaten_by)),
            ("pedal_area_formula", worst(&|a| a.pedal_formula)),
            (
                "inverse_angle_mismatch",
                worst(&|a| match &a.inverse {
                    Some(Ok(p)) => Some(p.angle_mismatch),
                    _ => None,
                }),
            ),
        ]
    }
}
