//! End-to-end sweep of the witness pipeline over `(a, d1, d2, h)`.
//!
//! For fixed `(a, h)` the outcome of [`find_section_witness`] depends on
//! `(d1, d2)` only through which weights divide each degree: the Cartier
//! pair condition fixes both degrees to multiples of one modulus, the split
//! is determined by the two divisibility masks, and the certificate and
//! representation do not involve the degrees at all. Instances are therefore
//! grouped by mask pair; the pipeline runs once per group, every instance in
//! the group is counted, and the per-degree claims (`f₁ | d1`, `f₂ | d2`)
//! are checked on every member.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::proposition::triple_gcd_lcm;
use super::{
    enumerate_sequences, task_seed, Counterexample, ReportBounds, SweepBounds, SweepControl, Tally,
    VerificationReport,
};
use crate::arith::{divides, gcd, lcm, Int, WeightSequence};
use crate::error::{Error, Result};
use crate::nonvanish::{CertificateKind, MIN_N};
use crate::semigroup::RepresentabilityTable;
use crate::wci::{find_section_witness, SectionProof, WciInstance, WitnessRoute};

/// Fraction of groups that are re-run on a random permutation of the weights.
const PERMUTATION_RATE: f64 = 0.25;

pub fn verify_theorem(bounds: &SweepBounds, control: &SweepControl) -> Result<VerificationReport> {
    bounds.validate()?;
    bounds.require_n_at_least(MIN_N)?;
    let max_degree = bounds
        .max_degree
        .ok_or_else(|| Error::InvalidBounds("the theorem sweep needs a max degree".into()))?;
    let start = Instant::now();
    let seqs: Vec<WeightSequence> = enumerate_sequences(bounds)?.collect();
    let tally = control.run(seqs, |k, a| {
        let mut rng = ChaCha8Rng::seed_from_u64(task_seed(control.seed, k));
        match theorem_task(a, max_degree, bounds, &mut rng) {
            Ok(t) => t,
            Err(e) => {
                let mut t = Tally::default();
                let cx = Counterexample::new("theorem", a.as_slice(), e.to_string());
                match e {
                    Error::Overflow => t.overflow(cx),
                    _ => t.fail(cx),
                }
                t
            }
        }
    })?;
    Ok(VerificationReport::from_tally(
        "theorem",
        ReportBounds::Sweep(bounds.clone()),
        tally,
        start.elapsed(),
    ))
}

/// Independent oracle: membership tables for every pair and triple of
/// weights, shared across all `h` of one sequence.
struct SubsetOracle {
    tables: Vec<RepresentabilityTable>,
}

impl SubsetOracle {
    fn new(w: &[Int], h_max: Int) -> Result<Self> {
        let m = w.len();
        let mut tables = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                tables.push(RepresentabilityTable::new(&[w[i], w[j]], h_max)?);
                for k in j + 1..m {
                    tables.push(RepresentabilityTable::new(&[w[i], w[j], w[k]], h_max)?);
                }
            }
        }
        Ok(Self { tables })
    }

    /// Some subset of at most three weights represents `h`. Single weights
    /// are covered by pairs containing them.
    fn representable(&self, h: Int) -> bool {
        self.tables.iter().any(|t| t.contains(h))
    }
}

fn theorem_task(
    a: &WeightSequence,
    max_degree: Int,
    bounds: &SweepBounds,
    rng: &mut ChaCha8Rng,
) -> Result<Tally> {
    let mut tally = Tally::default();
    let w = a.as_slice();
    let m = w.len();
    let step = triple_gcd_lcm(w)?;
    let h_max = bounds.h_max(a.lcm()?);
    let total = a.sum()?;
    let oracle = SubsetOracle::new(w, h_max)?;
    let pair_gcds: Vec<Int> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .map(|(i, j)| gcd(w[i], w[j]))
        .collect();

    // Cartier triples force step | h
    let mut h = step;
    while h <= h_max {
        check_degree(&mut tally, a, h, total, max_degree, &pair_gcds, &oracle, rng)?;
        h += step;
    }
    Ok(tally)
}

#[allow(clippy::too_many_arguments)]
fn check_degree(
    tally: &mut Tally,
    a: &WeightSequence,
    h: Int,
    total: Int,
    max_degree: Int,
    pair_gcds: &[Int],
    oracle: &SubsetOracle,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let w = a.as_slice();
    let required: u32 = w
        .iter()
        .enumerate()
        .filter(|&(_, &x)| !divides(x, h))
        .fold(0, |mask, (i, _)| mask | 1 << i);
    // both degrees are multiples of every pair gcd not dividing h
    let modulus = pair_gcds
        .iter()
        .filter(|&&g| !divides(g, h))
        .try_fold(1, |acc, &g| lcm(acc, g))?;
    // amplitude: d1 + d2 < h + Σa
    let limit = h.checked_add(total).ok_or(Error::Overflow)?;
    if modulus > max_degree || 2 * modulus >= limit {
        return Ok(());
    }
    let mut groups: BTreeMap<u32, Vec<Int>> = BTreeMap::new();
    let mut d = modulus;
    while d <= max_degree {
        let mask = w
            .iter()
            .enumerate()
            .filter(|&(i, &x)| required >> i & 1 == 1 && divides(x, d))
            .fold(0u32, |mask, (i, _)| mask | 1 << i);
        groups.entry(mask).or_default().push(d);
        d += modulus;
    }

    for (&m1, ds1) in &groups {
        for (&m2, ds2) in &groups {
            if (m1 | m2) & required != required {
                continue;
            }
            let count: u64 = ds1
                .iter()
                .map(|&d1| ds2.partition_point(|&d2| d1 + d2 < limit) as u64)
                .sum();
            if count == 0 {
                continue;
            }
            tally.instances += count;
            tally.bump("groups", 1);
            let (d1, d2) = (ds1[0], ds2[0]);
            let inst = WciInstance::new(a.clone(), d1, d2)?;
            let cx = |check: &str, detail: String| {
                Counterexample::new(check, w, detail).at(None, Some(h)).degrees(d1, d2)
            };
            let proof = match find_section_witness(&inst, h) {
                Ok(p) => p,
                Err(Error::Overflow) => {
                    tally.overflow(cx("theorem", "overflow".into()));
                    continue;
                }
                Err(e) => {
                    tally.fail(cx("theorem", e.to_string()));
                    continue;
                }
            };
            if !proof.witness.is_valid_for(&inst.weights) {
                tally.fail(cx("witness_degree", format!("{:?}", proof.witness)));
            }
            match &proof.route {
                WitnessRoute::DirectDivisor { .. } => tally.bump("direct", count),
                WitnessRoute::Certificate { profile, certificate, greedy, .. } => {
                    tally.bump(
                        match certificate.kind {
                            CertificateKind::Couple => "couple",
                            CertificateKind::Triple => "triple",
                        },
                        count,
                    );
                    if !greedy {
                        tally.fail(cx("greedy_split", "greedy split had no certificate".into()).with_profile(profile.clone()));
                    }
                    let bad1 = ds1.iter().find(|&&x| x + ds2[0] < limit && !divides(profile.f1, x));
                    let bad2 = ds2.iter().find(|&&x| x + ds1[0] < limit && !divides(profile.f2, x));
                    if bad1.is_some() || bad2.is_some() {
                        tally.fail(
                            cx("divisibility_chain", format!("f1 ∤ {bad1:?} or f2 ∤ {bad2:?}"))
                                .with_profile(profile.clone()),
                        );
                    }
                    if !oracle.representable(h) {
                        tally.fail(cx("oracle_agreement", "oracle finds no subset".into()));
                    }
                }
                WitnessRoute::Exhaustive { .. } => {
                    tally.fail(cx("fallback_reached", format!("{:?}", proof.witness)));
                }
            }
            if rng.gen_bool(PERMUTATION_RATE) {
                permutation_check(tally, &inst, h, &proof, rng);
            }
        }
    }
    Ok(())
}

fn permutation_check(tally: &mut Tally, inst: &WciInstance, h: Int, proof: &SectionProof, rng: &mut ChaCha8Rng) {
    let mut order: Vec<usize> = (0..inst.weights.len()).collect();
    order.shuffle(rng);
    let permuted = WciInstance {
        weights: inst.weights.permuted(&order),
        d1: inst.d1,
        d2: inst.d2,
    };
    tally.bump("permutation_checks", 1);
    let ok = find_section_witness(&permuted, h)
        .is_ok_and(|p| p.witness.is_valid_for(&permuted.weights) && p.witness.degree == proof.witness.degree);
    if !ok {
        tally.fail(
            Counterexample::new("permutation", permuted.weights.as_slice(), "permuted instance has no witness")
                .at(None, Some(h))
                .degrees(inst.d1, inst.d2),
        );
    }
}
