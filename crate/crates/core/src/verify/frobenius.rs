//! Soundness and sharpness of the couple/triple representability bounds
//! against the membership-table oracle.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{Counterexample, ReportBounds, SweepControl, Tally, VerificationReport};
use crate::arith::{gcd, lcm_list, Int};
use crate::error::{Error, Result};
use crate::semigroup::{
    frobenius_bound_three, frobenius_bound_two, guaranteed_representable, CoinSystem,
    RepresentabilityTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusBounds {
    pub max_pair: Int,
    pub max_triple: Int,
}

/// Every ordered generator tuple is checked for `1 ≤ h ≤ 2·lcm`; the bound
/// for triples is not symmetric, so order matters.
pub fn verify_frobenius(bounds: &FrobeniusBounds, control: &SweepControl) -> Result<VerificationReport> {
    if bounds.max_pair < 1 || bounds.max_triple < 1 {
        return Err(Error::InvalidBounds("generator caps must be at least 1".into()));
    }
    let start = Instant::now();
    let mut tasks: Vec<Vec<Int>> = Vec::new();
    for a0 in 1..=bounds.max_pair {
        tasks.push(vec![a0]);
    }
    for a0 in 1..=bounds.max_triple {
        for a1 in 1..=bounds.max_triple {
            tasks.push(vec![a0, a1]);
        }
    }
    let tally = control.run(tasks, |_, prefix| match *prefix.as_slice() {
        [a0] => pair_task(a0, bounds.max_pair),
        [a0, a1] => triple_task(a0, a1, bounds.max_triple),
        _ => unreachable!(),
    })?;
    Ok(VerificationReport::from_tally(
        "frobenius",
        ReportBounds::Frobenius(bounds.clone()),
        tally,
        start.elapsed(),
    ))
}

fn soundness(tally: &mut Tally, gens: &[Int], bound: Int) {
    let check = if gens.len() == 2 { "couple_soundness" } else { "triple_soundness" };
    let sys = match CoinSystem::new(gens.to_vec()) {
        Ok(sys) => sys,
        Err(e) => return tally.fail(Counterexample::new(check, gens, e.to_string())),
    };
    let content = sys.content();
    let top = match lcm_list(gens).ok().and_then(|l| l.checked_mul(2)) {
        Some(top) => top,
        None => return tally.overflow(Counterexample::new(check, gens, "overflow")),
    };
    let table = match RepresentabilityTable::new(gens, top) {
        Ok(t) => t,
        Err(e) => return tally.overflow(Counterexample::new(check, gens, e.to_string())),
    };
    // the public predicate must agree with the bound evaluated here
    for h in [bound, bound + 1, bound + content] {
        if h >= 1 {
            let expected = h % content == 0 && h > bound;
            if guaranteed_representable(&sys, h) != Ok(expected) {
                tally.fail(Counterexample::new(check, gens, "predicate disagrees with bound").at(None, Some(h)));
            }
        }
    }
    for h in 1..=top {
        tally.instances += 1;
        if h % content == 0 && h > bound && !table.contains(h) {
            tally.fail(
                Counterexample::new(check, gens, format!("bound {bound}, not representable"))
                    .at(None, Some(h)),
            );
        }
    }
}

fn pair_task(a0: Int, max: Int) -> Tally {
    let mut tally = Tally::default();
    for a1 in 1..=max {
        match frobenius_bound_two(a0, a1) {
            Ok(bound) => soundness(&mut tally, &[a0, a1], bound),
            Err(_) => tally.overflow(Counterexample::new("couple_soundness", &[a0, a1], "overflow")),
        }
        // the classical Frobenius number of a coprime couple is a gap
        if a0 >= 2 && a1 >= 2 && gcd(a0, a1) == 1 {
            tally.instances += 1;
            let f = a0 * a1 - a0 - a1;
            let reachable = RepresentabilityTable::new(&[a0, a1], f).map(|t| t.contains(f));
            if reachable != Ok(false) {
                tally.fail(Counterexample::new("couple_sharpness", &[a0, a1], "Frobenius number representable").at(None, Some(f)));
            }
            tally.bump("sharpness_pairs", 1);
        }
    }
    tally
}

fn triple_task(a0: Int, a1: Int, max: Int) -> Tally {
    let mut tally = Tally::default();
    for a2 in 1..=max {
        match frobenius_bound_three(a0, a1, a2) {
            Ok(bound) => soundness(&mut tally, &[a0, a1, a2], bound),
            Err(_) => tally.overflow(Counterexample::new("triple_soundness", &[a0, a1, a2], "overflow")),
        }
    }
    tally
}
