//! Exhaustive checks of the gcd/lcm identities and inequalities.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{Counterexample, ReportBounds, SweepControl, Tally, VerificationReport};
use crate::arith::{gcd, gcd_of_lcms, lcm, lcm_of_pairwise_gcds, Int};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBounds {
    /// Sequences of length ≤ `subset_len` with entries ≤ `subset_max`.
    pub subset_len: usize,
    pub subset_max: Int,
    /// Lists of length ≤ `list_len` with entries ≤ `list_max`.
    pub list_len: usize,
    pub list_max: Int,
    /// `a, b ≤ binary_max` for the two-argument inequalities.
    pub binary_max: Int,
    /// Distinct `a_i ∈ [2, grid_max_a]`, `k_i ∈ [1, grid_max_k]`.
    pub grid_max_a: Int,
    pub grid_max_k: Int,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        Self {
            subset_len: 6,
            subset_max: 30,
            list_len: 4,
            list_max: 50,
            binary_max: 500,
            grid_max_a: 12,
            grid_max_k: 5,
        }
    }
}

impl LemmaBounds {
    fn validate(&self) -> Result<()> {
        let ok = self.subset_len >= 1
            && (1..=16).contains(&self.subset_len)
            && self.subset_max >= 1
            && self.subset_max <= 4096
            && self.list_len >= 1
            && self.list_max >= 1
            && self.binary_max >= 1
            && self.grid_max_a >= 2
            && self.grid_max_k >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBounds(format!("{self:?}")))
        }
    }
}

#[derive(Debug, Clone)]
enum Task {
    /// Subset-gcd union identity on nondecreasing sequences of this length
    /// starting with this entry.
    SubsetUnion { len: usize, first: Int },
    /// Distributivity on lists of powers of one prime.
    PrimePowerLists { prime: Int },
    /// Distributivity on all pairs of small sets.
    SmallSets,
    BinaryInequalities,
    ReciprocalGrid,
}

/// Runs every identity/inequality suite over `bounds`.
pub fn verify_lemmas(bounds: &LemmaBounds, control: &SweepControl) -> Result<VerificationReport> {
    bounds.validate()?;
    let start = Instant::now();
    let mut tasks = Vec::new();
    for len in 1..=bounds.subset_len {
        for first in 1..=bounds.subset_max {
            tasks.push(Task::SubsetUnion { len, first });
        }
    }
    for p in (2..=bounds.list_max).filter(|&p| is_prime(p)) {
        tasks.push(Task::PrimePowerLists { prime: p });
    }
    tasks.push(Task::SmallSets);
    tasks.push(Task::BinaryInequalities);
    tasks.push(Task::ReciprocalGrid);
    let tally = control.run(tasks, |_, task| match *task {
        Task::SubsetUnion { len, first } => subset_union(len, first, bounds.subset_max),
        Task::PrimePowerLists { prime } => prime_power_lists(prime, bounds),
        Task::SmallSets => small_sets(bounds),
        Task::BinaryInequalities => binary_inequalities(bounds.binary_max),
        Task::ReciprocalGrid => reciprocal_grid(bounds.grid_max_a, bounds.grid_max_k),
    })?;
    Ok(VerificationReport::from_tally(
        "lemmas",
        ReportBounds::Lemmas(bounds.clone()),
        tally,
        start.elapsed(),
    ))
}

fn is_prime(p: Int) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `gcd(a_I, a_J) = a_{I∪J}` for all nonempty `I, J`, on every nondecreasing
/// sequence of length `len` beginning with `first`. The identity quantifies
/// over all subsets, so sorted sequences cover every ordering.
fn subset_union(len: usize, first: Int, max: Int) -> Tally {
    let mut tally = Tally::default();
    let table_size = max as usize + 1;
    // gcd of values ≤ max stays ≤ max
    let table: Vec<u16> = (0..table_size * table_size)
        .map(|k| gcd((k / table_size) as Int, (k % table_size) as Int) as u16)
        .collect();
    let g = |x: u16, y: u16| table[x as usize * table_size + y as usize];
    let masks = 1usize << len;
    let mut subset_gcd = vec![0u16; masks];
    let mut seq = vec![first; len];
    loop {
        for (mask, slot) in subset_gcd.iter_mut().enumerate().skip(1) {
            *slot = (0..len)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0u16, |acc, i| g(acc, seq[i] as u16));
        }
        for i in 1..masks {
            for j in i..masks {
                if g(subset_gcd[i], subset_gcd[j]) != subset_gcd[i | j] {
                    tally.fail(Counterexample::new(
                        "subset_gcd_union",
                        &seq,
                        format!("I = {i:#b}, J = {j:#b}"),
                    ));
                }
            }
        }
        tally.instances += (masks as u64 - 1) * masks as u64 / 2;
        // next nondecreasing sequence with fixed first entry
        match (1..len).rposition(|k| seq[k] < max) {
            Some(p) => {
                let k = p + 1;
                let v = seq[k] + 1;
                seq[k..].iter_mut().for_each(|x| *x = v);
            }
            None => break,
        }
    }
    tally
}

fn check_distributive(tally: &mut Tally, xs: &[Int], ys: &[Int], check: &str) {
    tally.instances += 1;
    match (gcd_of_lcms(xs, ys), lcm_of_pairwise_gcds(xs, ys)) {
        (Ok(l), Ok(r)) if l == r => {}
        (Ok(l), Ok(r)) => {
            let mut w = xs.to_vec();
            w.extend_from_slice(ys);
            tally.fail(Counterexample::new(
                check,
                &w,
                format!("split after {}: {l} ≠ {r}", xs.len()),
            ));
        }
        _ => tally.overflow(Counterexample::new(check, xs, "overflow")),
    }
}

/// All lists (any order, repetitions allowed) of length ≤ `list_len` whose
/// entries are powers of `prime` not exceeding `list_max`. Both sides act
/// prime by prime (as max/min on valuations), so these lists realise every
/// valuation pattern of the full list domain.
fn prime_power_lists(prime: Int, bounds: &LemmaBounds) -> Tally {
    let mut powers = vec![1 as Int];
    while let Some(&last) = powers.last() {
        match last.checked_mul(prime) {
            Some(next) if next <= bounds.list_max => powers.push(next),
            _ => break,
        }
    }
    let lists: Vec<Vec<Int>> = (1..=bounds.list_len)
        .flat_map(|len| {
            let base = powers.len();
            (0..base.pow(len as u32)).map(move |code| {
                (0..len)
                    .map(|k| code / base.pow(k as u32) % base)
                    .collect::<Vec<usize>>()
            })
        })
        .map(|idx| idx.into_iter().map(|k| powers[k]).collect())
        .collect();
    let mut tally = Tally::default();
    for xs in &lists {
        for ys in &lists {
            check_distributive(&mut tally, xs, ys, "gcd_lcm_distributive");
        }
    }
    tally
}

/// Direct numeric check on all pairs of sets of size ≤ 2, and on every set
/// of size ≤ `list_len` against every singleton.
fn small_sets(bounds: &LemmaBounds) -> Tally {
    let m = bounds.list_max;
    let small: Vec<Vec<Int>> = (1..=m)
        .map(|a| vec![a])
        .chain((1..=m).flat_map(|a| (a + 1..=m).map(move |b| vec![a, b])))
        .collect();
    let mut tally = Tally::default();
    for xs in &small {
        for ys in &small {
            check_distributive(&mut tally, xs, ys, "gcd_lcm_distributive");
        }
    }
    // sets of size 3..=list_len against singletons
    fn sets(m: Int, len: usize, start: Int, prefix: &mut Vec<Int>, out: &mut dyn FnMut(&[Int])) {
        if prefix.len() == len {
            out(prefix);
            return;
        }
        for v in start..=m {
            prefix.push(v);
            sets(m, len, v + 1, prefix, out);
            prefix.pop();
        }
    }
    for len in 3..=bounds.list_len {
        sets(m, len, 1, &mut Vec::new(), &mut |xs| {
            for y in 1..=m {
                check_distributive(&mut tally, xs, &[y], "gcd_lcm_distributive");
            }
        });
    }
    tally
}

fn binary_inequalities(max: Int) -> Tally {
    let mut tally = Tally::default();
    for a in 1..=max {
        for b in 1..=max {
            let Ok(l) = lcm(a, b) else {
                tally.overflow(Counterexample::new("lcm", &[a, b], "overflow"));
                continue;
            };
            let g = gcd(a, b);
            tally.instances += 1;
            if l + g < a + b {
                tally.fail(Counterexample::new("lcm_plus_gcd", &[a, b], format!("{l} + {g} < {}", a + b)));
            }
            if a % b != 0 && b % a != 0 {
                tally.instances += 1;
                let m = a.max(b);
                if !(l >= 2 * m && 2 * m >= a + b) {
                    tally.fail(Counterexample::new("lcm_non_dividing", &[a, b], format!("lcm {l}")));
                }
            }
        }
    }
    tally
}

/// `1 − Σ 1/(k_i a_i) ≥ 0` for distinct `a_i ≥ 2` and `k_1k_2k_3 > 1`,
/// evaluated exactly over a common denominator.
fn reciprocal_grid(max_a: Int, max_k: Int) -> Tally {
    let mut tally = Tally::default();
    for a1 in 2..=max_a {
        for a2 in (2..=max_a).filter(|&x| x != a1) {
            for a3 in (2..=max_a).filter(|&x| x != a1 && x != a2) {
                for k1 in 1..=max_k {
                    for k2 in 1..=max_k {
                        for k3 in 1..=max_k {
                            if k1 * k2 * k3 == 1 {
                                continue;
                            }
                            tally.instances += 1;
                            let (x, y, z) = (k1 * a1, k2 * a2, k3 * a3);
                            let denom = x * y * z;
                            let numer = denom - y * z - x * z - x * y;
                            if numer < 0 {
                                tally.fail(Counterexample::new(
                                    "reciprocal_sum",
                                    &[a1, a2, a3, k1, k2, k3],
                                    format!("1 − Σ = {numer}/{denom}"),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_grid_needs_k_product_above_one() {
        // with all k_i = 1 the triple (2, 3, 4) would violate the inequality
        let (x, y, z) = (2, 3, 4);
        assert!(x * y * z - y * z - x * z - x * y < 0);
        assert_eq!(reciprocal_grid(4, 2).counterexample_count, 0);
    }

    #[test]
    fn small_bounds_pass() {
        let bounds = LemmaBounds {
            subset_len: 4,
            subset_max: 12,
            list_len: 3,
            list_max: 12,
            binary_max: 40,
            grid_max_a: 6,
            grid_max_k: 3,
        };
        let r = verify_lemmas(&bounds, &SweepControl::new(2, 0)).unwrap();
        assert!(r.passed() && !r.vacuous, "{r:?}");
    }

    #[test]
    fn subset_union_counts_pairs() {
        // length 2, first entry fixed at max: one sequence, 3 subsets, 6 pairs
        let t = subset_union(2, 5, 5);
        assert_eq!(t.instances, 6);
    }
}
