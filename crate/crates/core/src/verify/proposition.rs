//! Sweep over `(a, s, h)` cells satisfying the hypotheses: certificate
//! existence, monotonicity of `f₁`/`f₂` in `s`, the `s ↔ n−1−s` symmetry and
//! invariance under permutations inside each side of the split.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    enumerate_split_sequences, task_seed, Counterexample, ReportBounds, SweepBounds, SweepControl,
    Tally, VerificationReport,
};
use crate::arith::{divides, gcd, lcm_fold, Int, WeightSequence};
use crate::error::{Error, Result};
use crate::nonvanish::{
    compute_profile, compute_profile_unchecked, search_certificate, star_condition, CertificateKind,
    MIN_N,
};

pub fn verify_proposition(bounds: &SweepBounds, control: &SweepControl) -> Result<VerificationReport> {
    bounds.validate()?;
    bounds.require_n_at_least(MIN_N)?;
    let start = Instant::now();
    let cells = enumerate_split_sequences(bounds)?;
    let tally = control.run(cells, |k, (a, s)| {
        let mut rng = ChaCha8Rng::seed_from_u64(task_seed(control.seed, k));
        proposition_task(a, *s, bounds, &mut rng)
    })?;
    Ok(VerificationReport::from_tally(
        "proposition",
        ReportBounds::Sweep(bounds.clone()),
        tally,
        start.elapsed(),
    ))
}

/// lcm of all triple gcds: `h` satisfies the triple hypothesis iff this
/// divides it.
pub(crate) fn triple_gcd_lcm(w: &[Int]) -> Result<Int> {
    let m = w.len();
    let mut gs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                gs.push(gcd(gcd(w[i], w[j]), w[k]));
            }
        }
    }
    lcm_fold(gs)
}

/// Random permutation of the positions of `a` that keeps each side of the
/// split in place.
fn side_shuffle(n: usize, s: isize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let cut = (s + 1) as usize;
    let mut left: Vec<usize> = (0..cut).collect();
    let mut right: Vec<usize> = (cut..=n).collect();
    left.shuffle(rng);
    right.shuffle(rng);
    left.extend(right);
    left
}

fn proposition_task(a: &WeightSequence, s: isize, bounds: &SweepBounds, rng: &mut ChaCha8Rng) -> Tally {
    let mut tally = Tally::default();
    let w = a.as_slice();
    let n = a.n();
    let (period, step) = match (a.lcm(), triple_gcd_lcm(w)) {
        (Ok(p), Ok(t)) => (p, t),
        _ => {
            tally.overflow(Counterexample::new("proposition", w, "overflow computing period").at(Some(s), None));
            return tally;
        }
    };
    let h_max = bounds.h_max(period);
    let reversed = a.reversed();
    let s_rev = n as isize - 1 - s;
    let shuffled = a.permuted(&side_shuffle(n, s, rng));
    let star = star_condition(a, s).unwrap_or(false);

    let mut h = step;
    while h <= h_max {
        if !w.iter().any(|&x| divides(x, h)) {
            tally.instances += 1;
            if let Err(e) = check_cell(&mut tally, a, s, h, &reversed, s_rev, &shuffled) {
                let cx = Counterexample::new("proposition", w, e.to_string()).at(Some(s), Some(h));
                match e {
                    Error::Overflow => tally.overflow(cx),
                    _ => tally.fail(cx),
                }
            }
            if star {
                tally.bump("star_cells", 1);
            }
        }
        h += step;
    }
    tally
}

fn check_cell(
    tally: &mut Tally,
    a: &WeightSequence,
    s: isize,
    h: Int,
    reversed: &WeightSequence,
    s_rev: isize,
    shuffled: &WeightSequence,
) -> Result<()> {
    let w = a.as_slice();
    let at = |check: &str, detail: String| Counterexample::new(check, w, detail).at(Some(s), Some(h));

    let profile = compute_profile(a, s, h)?;
    let certificate = search_certificate(a, h, profile.lhs)?;
    match &certificate {
        Some(c) if c.kind == CertificateKind::Couple => tally.bump("couple", 1),
        Some(_) => tally.bump("triple", 1),
        None => tally.fail(at("certificate", "no couple or triple certificate".into()).with_profile(profile.clone())),
    }

    if s >= 0 {
        tally.bump("monotonicity_checks", 1);
        let prev = compute_profile_unchecked(a, s - 1, h)?;
        if profile.f1 < prev.f1 {
            tally.fail(
                at("monotonicity_f1", format!("f1(s) = {} < f1(s-1) = {}", profile.f1, prev.f1))
                    .with_profile(profile.clone()),
            );
        }
        if divides(w[s as usize], profile.f2) && profile.f2 < prev.f2 {
            tally.fail(
                at("monotonicity_f2", format!("f2(s) = {} < f2(s-1) = {}", profile.f2, prev.f2))
                    .with_profile(profile.clone()),
            );
        }
    }

    let mirrored = compute_profile_unchecked(reversed, s_rev, h)?;
    let mirrored_cert = search_certificate(reversed, h, mirrored.lhs)?;
    if mirrored_cert.is_some() != certificate.is_some()
        || (mirrored.f1, mirrored.f2) != (profile.f2, profile.f1)
    {
        tally.fail(at("symmetry", format!("reversed split {s_rev} disagrees")).with_profile(profile.clone()));
    }

    let permuted = compute_profile_unchecked(shuffled, s, h)?;
    let permuted_cert = search_certificate(shuffled, h, permuted.lhs)?;
    let key = |p: &crate::nonvanish::SplitProfile| (p.h1, p.h2, p.f1, p.f2, p.lhs, p.sigma1.len(), p.sigma2.len());
    if key(&permuted) != key(&profile) || permuted_cert.is_some() != certificate.is_some() {
        tally.fail(
            at("side_permutation", format!("permuted sequence {shuffled} disagrees")).with_profile(profile),
        );
    }
    Ok(())
}
