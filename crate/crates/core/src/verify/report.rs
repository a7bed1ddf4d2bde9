use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{FrobeniusBounds, LemmaBounds, SmallBounds, SweepBounds};
use crate::arith::Int;
use crate::nonvanish::SplitProfile;

/// Counterexamples kept per report; the total is always counted.
pub const MAX_RECORDED: usize = 1000;

/// One failing cell, with enough data to re-run it through the CLI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    /// Property that failed.
    pub check: String,
    pub weights: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<isize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<SplitProfile>,
    pub detail: String,
}

impl Counterexample {
    pub fn new(check: &str, weights: &[Int], detail: impl Into<String>) -> Self {
        Self {
            check: check.to_string(),
            weights: weights.to_vec(),
            s: None,
            h: None,
            d1: None,
            d2: None,
            profile: None,
            detail: detail.into(),
        }
    }

    pub fn at(mut self, s: Option<isize>, h: Option<Int>) -> Self {
        self.s = s;
        self.h = h;
        self
    }

    pub fn degrees(mut self, d1: Int, d2: Int) -> Self {
        self.d1 = Some(d1);
        self.d2 = Some(d2);
        self
    }

    pub fn with_profile(mut self, profile: SplitProfile) -> Self {
        self.profile = Some(profile);
        self
    }
}

/// Mergeable result of one or more sweep tasks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub instances: u64,
    pub counterexamples: BTreeSet<Counterexample>,
    pub counterexample_count: u64,
    pub overflows: BTreeSet<Counterexample>,
    pub overflow_count: u64,
    pub stats: BTreeMap<String, u64>,
    pub incomplete: bool,
}

fn union_capped(mut a: BTreeSet<Counterexample>, b: BTreeSet<Counterexample>) -> BTreeSet<Counterexample> {
    a.extend(b);
    while a.len() > MAX_RECORDED {
        a.pop_last();
    }
    a
}

impl Tally {
    pub fn merge(self, other: Self) -> Self {
        let mut stats = self.stats;
        for (k, v) in other.stats {
            *stats.entry(k).or_default() += v;
        }
        Self {
            instances: self.instances + other.instances,
            counterexamples: union_capped(self.counterexamples, other.counterexamples),
            counterexample_count: self.counterexample_count + other.counterexample_count,
            overflows: union_capped(self.overflows, other.overflows),
            overflow_count: self.overflow_count + other.overflow_count,
            stats,
            incomplete: self.incomplete || other.incomplete,
        }
    }

    pub fn fail(&mut self, cx: Counterexample) {
        self.counterexample_count += 1;
        if self.counterexamples.len() < MAX_RECORDED
            || self.counterexamples.last().is_some_and(|last| &cx < last)
        {
            self.counterexamples.insert(cx);
            if self.counterexamples.len() > MAX_RECORDED {
                self.counterexamples.pop_last();
            }
        }
    }

    pub fn overflow(&mut self, cx: Counterexample) {
        self.overflow_count += 1;
        self.overflows.insert(cx);
        if self.overflows.len() > MAX_RECORDED {
            self.overflows.pop_last();
        }
    }

    pub fn bump(&mut self, stat: &str, by: u64) {
        *self.stats.entry(stat.to_string()).or_default() += by;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ReportBounds {
    Sweep(SweepBounds),
    Frobenius(FrobeniusBounds),
    Lemmas(LemmaBounds),
    Small(SmallBounds),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    PassVacuous,
    Fail,
    Overflow,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub bounds: ReportBounds,
    pub instances_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub counterexample_count: u64,
    pub overflows: Vec<Counterexample>,
    pub overflow_count: u64,
    pub elapsed_ms: u64,
    pub vacuous: bool,
    pub incomplete: bool,
    pub verdict: Verdict,
    pub stats: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn from_tally(suite: &str, bounds: ReportBounds, tally: Tally, elapsed: Duration) -> Self {
        let vacuous = tally.instances == 0;
        let verdict = if tally.counterexample_count > 0 {
            Verdict::Fail
        } else if tally.overflow_count > 0 {
            Verdict::Overflow
        } else if tally.incomplete {
            Verdict::Incomplete
        } else if vacuous {
            Verdict::PassVacuous
        } else {
            Verdict::Pass
        };
        Self {
            suite: suite.to_string(),
            bounds,
            instances_checked: tally.instances,
            counterexamples: tally.counterexamples.into_iter().collect(),
            counterexample_count: tally.counterexample_count,
            overflows: tally.overflows.into_iter().collect(),
            overflow_count: tally.overflow_count,
            elapsed_ms: elapsed.as_millis() as u64,
            vacuous,
            incomplete: tally.incomplete,
            verdict,
            stats: tally.stats,
        }
    }

    /// No counterexample and no overflow (a vacuous run still passes).
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0 && self.overflow_count == 0
    }
}
