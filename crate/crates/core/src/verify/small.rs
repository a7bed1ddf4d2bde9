//! `n = 2`: the certificate search may fail, but only in the
//! configuration described by [`small_failure_conditions`].

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{
    enumerate_split_sequences, Counterexample, ReportBounds, SweepBounds, SweepControl, Tally,
    VerificationReport,
};
use crate::arith::{divides, Int, WeightSequence};
use crate::error::{Error, Result};
use crate::nonvanish::{compute_profile_unchecked, search_certificate, small_failure_conditions};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallBounds {
    pub max_weight: Int,
}

pub fn verify_small_dimension(bounds: &SmallBounds, control: &SweepControl) -> Result<VerificationReport> {
    let sweep = SweepBounds::new(2, 2, bounds.max_weight);
    sweep.validate()?;
    let start = Instant::now();
    let cells = enumerate_split_sequences(&sweep)?;
    let tally = control.run(cells, |_, (a, s)| small_task(a, *s))?;
    Ok(VerificationReport::from_tally(
        "small-dimension",
        ReportBounds::Small(bounds.clone()),
        tally,
        start.elapsed(),
    ))
}

fn small_task(a: &WeightSequence, s: isize) -> Tally {
    let mut tally = Tally::default();
    let w = a.as_slice();
    let content = w.iter().fold(0, |g, &x| crate::arith::gcd(g, x));
    let Ok(period) = a.lcm() else {
        tally.overflow(Counterexample::new("small_dimension", w, "overflow").at(Some(s), None));
        return tally;
    };
    let mut h = content;
    while h <= period {
        if !w.iter().any(|&x| divides(x, h)) {
            tally.instances += 1;
            if let Err(e) = small_cell(&mut tally, a, s, h) {
                let cx = Counterexample::new("small_dimension", w, e.to_string()).at(Some(s), Some(h));
                match e {
                    Error::Overflow => tally.overflow(cx),
                    _ => tally.fail(cx),
                }
            }
        }
        h += content;
    }
    tally
}

fn small_cell(tally: &mut Tally, a: &WeightSequence, s: isize, h: Int) -> Result<()> {
    let profile = compute_profile_unchecked(a, s, h)?;
    if search_certificate(a, h, profile.lhs)?.is_some() {
        return Ok(());
    }
    tally.bump("search_failures", 1);
    let conditions = small_failure_conditions(a, s, h)?;
    if !conditions.all_hold() {
        tally.fail(
            Counterexample::new("small_dimension", a.as_slice(), format!("{conditions:?}"))
                .at(Some(s), Some(h))
                .with_profile(profile),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_exist_and_match_conditions() {
        let r = verify_small_dimension(&SmallBounds { max_weight: 15 }, &SweepControl::new(2, 0)).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        // (10, 12, 15) at s = −1, h = 6 is the smallest failing configuration
        assert!(r.stats.get("search_failures").copied().unwrap_or(0) > 0, "{:?}", r.stats);
    }
}
