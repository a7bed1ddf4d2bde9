//! Exhaustive verification sweeps and their reports.
//!
//! Every sweep is a list of independent tasks evaluated on a dedicated
//! rayon pool. Task results are merged with an associative, commutative
//! operation (sums and ordered-set unions), so reports do not depend on the
//! worker count.

mod enumerate;
mod frobenius;
mod lemmas;
mod proposition;
mod report;
mod small;
mod theorem;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Int;
use crate::error::{Error, Result};

pub use enumerate::{enumerate_sequences, enumerate_split_sequences, side_sorted_sequences};
pub use frobenius::{verify_frobenius, FrobeniusBounds};
pub use lemmas::{verify_lemmas, LemmaBounds};
pub use proposition::verify_proposition;
pub use report::{Counterexample, ReportBounds, Tally, Verdict, VerificationReport};
pub use small::{verify_small_dimension, SmallBounds};
pub use theorem::verify_theorem;

/// Range of `h` examined per weight sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HRule {
    /// `1 ≤ h ≤ lcm(a)`: every divisibility pattern occurs once per period.
    Period,
    /// `1 ≤ h ≤ cap`.
    Cap(Int),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepBounds {
    pub n_min: usize,
    pub n_max: usize,
    pub max_weight: Int,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<Int>,
    pub h_rule: HRule,
}

impl SweepBounds {
    pub fn new(n_min: usize, n_max: usize, max_weight: Int) -> Self {
        Self { n_min, n_max, max_weight, max_degree: None, h_rule: HRule::Period }
    }

    pub fn with_max_degree(mut self, max_degree: Int) -> Self {
        self.max_degree = Some(max_degree);
        self
    }

    pub fn with_h_cap(mut self, cap: Int) -> Self {
        self.h_rule = HRule::Cap(cap);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max {
            return Err(Error::InvalidBounds(format!(
                "n range [{}, {}] is empty",
                self.n_min, self.n_max
            )));
        }
        if self.max_weight < 1 {
            return Err(Error::InvalidBounds("max weight must be at least 1".into()));
        }
        if matches!(self.max_degree, Some(d) if d < 1) {
            return Err(Error::InvalidBounds("max degree must be at least 1".into()));
        }
        if matches!(self.h_rule, HRule::Cap(c) if c < 1) {
            return Err(Error::InvalidBounds("h cap must be at least 1".into()));
        }
        Ok(())
    }

    fn require_n_at_least(&self, min: usize) -> Result<()> {
        if self.n_min < min {
            return Err(Error::InvalidBounds(format!("this sweep requires n ≥ {min}")));
        }
        Ok(())
    }

    /// Upper end of the `h` range for a sequence with the given lcm.
    pub(crate) fn h_max(&self, period: Int) -> Int {
        match self.h_rule {
            HRule::Period => period,
            HRule::Cap(c) => c,
        }
    }
}

/// Execution settings shared by all sweeps.
#[derive(Debug, Clone)]
pub struct SweepControl {
    pub jobs: usize,
    pub seed: u64,
    cancel: Arc<AtomicBool>,
}

impl Default for SweepControl {
    fn default() -> Self {
        Self::new(
            std::thread::available_parallelism().map_or(1, |n| n.get()),
            0,
        )
    }
}

impl SweepControl {
    pub fn new(jobs: usize, seed: u64) -> Self {
        Self { jobs: jobs.max(1), seed, cancel: Arc::new(AtomicBool::new(false)) }
    }

    /// Handle that stops the sweep when set; remaining tasks are skipped
    /// and the report is marked incomplete.
    pub fn cancel_handle(&self) -> Arc<AtomicBool> {
        Arc::clone(&self.cancel)
    }

    fn cancelled(&self) -> bool {
        self.cancel.load(Ordering::Relaxed)
    }

    /// Evaluates `task` on every item and merges the tallies.
    pub(crate) fn run<T, F>(&self, items: Vec<T>, task: F) -> Result<Tally>
    where
        T: Send + Sync,
        F: Fn(usize, &T) -> Tally + Send + Sync,
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::InvalidBounds(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(|| {
            items
                .par_iter()
                .enumerate()
                .map(|(k, item)| {
                    if self.cancelled() {
                        Tally { incomplete: true, ..Tally::default() }
                    } else {
                        task(k, item)
                    }
                })
                .reduce(Tally::default, Tally::merge)
        }))
    }
}

/// Per-task RNG seed, independent of scheduling.
pub(crate) fn task_seed(seed: u64, task: usize) -> u64 {
    seed ^ (task as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}
