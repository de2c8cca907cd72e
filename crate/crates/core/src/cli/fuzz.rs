//! Seeded batch verification over random instances.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exec::Execution;
use crate::sample::{random_angles, random_triangle, trial_rng};
use crate::tolerance::Tolerances;
use crate::verify::{evaluate, EvalOptions, Outcome};

use super::json as report;

/// At most this many failing trials are listed individually.
const MAX_LISTED_FAILURES: usize = 50;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub infeasible: usize,
}

/// Largest value seen for one metric and the seed that reproduces it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Worst {
    pub value: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FailedTrial {
    pub trial: usize,
    pub seed: u64,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzSummary {
    pub seed: u64,
    pub trials: usize,
    pub tolerances: Tolerances,
    pub counts: Counts,
    /// Number of trials with exactly `k` feasible assignments, k = 0..=6.
    pub feasible_histogram: [usize; 7],
    pub worst: BTreeMap<&'static str, Worst>,
    pub failed: Vec<FailedTrial>,
}

struct TrialResult {
    outcome: Outcome,
    feasible: usize,
    metrics: Vec<(&'static str, f64)>,
    failures: Vec<String>,
}

/// Trial `i` draws from [`trial_rng`]`(seed, i)`, so `--seed seed+i
/// --trials 1` reproduces it.
pub fn run(seed: u64, trials: usize, tol: &Tolerances, exec: Execution) -> FuzzSummary {
    let opts = EvalOptions { exec: Execution::Sequential, ..EvalOptions::default() };
    let results = exec.map_range(trials, |i| {
        let mut rng = trial_rng(seed, i as u64);
        let t = random_triangle(&mut rng);
        let a = random_angles(&mut rng);
        let ev = evaluate(&t, &a, tol, &opts);
        TrialResult {
            outcome: ev.outcome,
            feasible: ev.six.feasible_count(),
            metrics: ev.metrics(),
            failures: ev.failures.clone(),
        }
    });

    let mut counts = Counts::default();
    let mut feasible_histogram = [0; 7];
    let mut worst: BTreeMap<&'static str, Worst> = BTreeMap::new();
    let mut failed = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let trial_seed = seed.wrapping_add(i as u64);
        match r.outcome {
            Outcome::Pass => counts.pass += 1,
            Outcome::Fail => counts.fail += 1,
            Outcome::Infeasible => counts.infeasible += 1,
        }
        feasible_histogram[r.feasible] += 1;
        for (name, value) in r.metrics {
            if value.is_nan() {
                continue;
            }
            let entry = worst.entry(name).or_insert(Worst { value, seed: trial_seed });
            if value > entry.value {
                *entry = Worst { value, seed: trial_seed };
            }
        }
        if r.outcome == Outcome::Fail && failed.len() < MAX_LISTED_FAILURES {
            failed.push(FailedTrial { trial: i, seed: trial_seed, failures: r.failures });
        }
    }
    FuzzSummary { seed, trials, tolerances: *tol, counts, feasible_histogram, worst, failed }
}

impl FuzzSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": report::SCHEMA,
            "command": "fuzz",
            "seed": self.seed,
            "trials": self.trials,
            "tolerances": report::tolerances(&self.tolerances),
            "counts": self.counts,
            "feasible_assignments_histogram": self.feasible_histogram,
            "worst": self.worst,
            "failed_trials": self.failed,
            "outcome": if self.counts.fail == 0 { "pass" } else { "fail" },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn execution_mode_does_not_change_summary() {
        let tol = Tolerances::default();
        let a = run(9, 6, &tol, Execution::Sequential);
        let b = run(9, 6, &tol, Execution::Parallel);
        assert_eq!(a, b);
        assert_eq!(a.counts.pass + a.counts.fail + a.counts.infeasible, 6);
    }
}
