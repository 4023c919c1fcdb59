use serde::Serialize;

use crate::config::RunConfig;

/// Per-instance result. Only `Fail` and `Inconclusive` make a suite fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// No witness within the capped window.
    Inconclusive,
    /// Hypothesis not met; recorded but not asserted.
    PremiseFail,
    /// Outside the scope of the check (degenerate data), with a diagnostic.
    Skipped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub premise_fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn tally(outcomes: impl IntoIterator<Item = Outcome>) -> Self {
        let mut s = Summary::default();
        for o in outcomes {
            s.total += 1;
            match o {
                Outcome::Pass => s.passed += 1,
                Outcome::Fail => s.failed += 1,
                Outcome::Inconclusive => s.inconclusive += 1,
                Outcome::PremiseFail => s.premise_fail += 1,
                Outcome::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

pub trait Instance {
    fn outcome(&self) -> Outcome;
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport<I> {
    pub theorem: &'static str,
    pub config: RunConfig,
    pub instances: Vec<I>,
    pub summary: Summary,
    pub pass: bool,
}

impl<I: Instance> HarnessReport<I> {
    pub fn new(theorem: &'static str, config: RunConfig, instances: Vec<I>) -> Self {
        let summary = Summary::tally(instances.iter().map(Instance::outcome));
        let pass = summary.failed == 0 && summary.inconclusive == 0;
        HarnessReport {
            theorem,
            config,
            instances,
            summary,
            pass,
        }
    }

    pub fn to_json(&self) -> String
    where
        I: Serialize,
    {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
