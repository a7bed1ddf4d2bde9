//! Codimension-two weighted complete intersections `X_{d1,d2} ⊂ P(a_0,…,a_n)`
//! reduced to their arithmetic shadow, and the construction of a monomial of
//! degree `h` in at most three variables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{divides, gcd, Int, WeightSequence};
use crate::error::{Error, Result};
use crate::nonvanish::{
    compute_profile, search_certificate, NonvanishingCertificate, SplitProfile, MIN_N,
};
use crate::semigroup::{find_representation, CoinSystem, RepresentabilityTable};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WciInstance {
    pub weights: WeightSequence,
    pub d1: Int,
    pub d2: Int,
}

impl WciInstance {
    pub fn new(weights: WeightSequence, d1: Int, d2: Int) -> Result<Self> {
        if weights.n() < MIN_N {
            return Err(Error::SequenceTooShort { n: weights.n(), min: MIN_N });
        }
        for d in [d1, d2] {
            if d < 1 {
                return Err(Error::NonPositive(d));
            }
        }
        Ok(Self { weights, d1, d2 })
    }

    /// Arithmetic proxy for a linear cone: some degree equals some weight.
    pub fn is_linear_cone(&self) -> bool {
        self.weights
            .as_slice()
            .iter()
            .any(|&a| a == self.d1 || a == self.d2)
    }
}

/// `d1 + d2 − Σ a_i`; `H − K_X` is ample iff `h` exceeds it.
pub fn canonical_degree(inst: &WciInstance) -> Result<Int> {
    inst.d1
        .checked_add(inst.d2)
        .and_then(|d| d.checked_sub(inst.weights.sum().ok()?))
        .ok_or(Error::Overflow)
}

fn triples(m: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..m).flat_map(move |i| {
        (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| [i, j, k]))
    })
}

fn pairs(m: usize) -> impl Iterator<Item = [usize; 2]> {
    (0..m).flat_map(move |i| (i + 1..m).map(move |j| [i, j]))
}

fn triple_failures(w: &[Int], h: Int) -> Vec<Vec<usize>> {
    triples(w.len())
        .filter(|&[i, j, k]| !divides(gcd(gcd(w[i], w[j]), w[k]), h))
        .map(|t| t.to_vec())
        .collect()
}

fn pair_failures(inst: &WciInstance, h: Int) -> Vec<Vec<usize>> {
    let w = inst.weights.as_slice();
    pairs(w.len())
        .filter(|&[i, j]| {
            let g = gcd(w[i], w[j]);
            !divides(g, h) && !(divides(g, inst.d1) && divides(g, inst.d2))
        })
        .map(|p| p.to_vec())
        .collect()
}

fn split_failures(inst: &WciInstance, h: Int) -> Vec<Vec<usize>> {
    inst.weights
        .as_slice()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| !divides(a, h) && !divides(a, inst.d1) && !divides(a, inst.d2))
        .map(|(i, _)| vec![i])
        .collect()
}

/// The Cartier conditions on `O(h)`: every triple gcd divides `h`, and every
/// pair gcd not dividing `h` divides both degrees.
pub fn cartier_conditions(inst: &WciInstance, h: Int) -> Result<bool> {
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    Ok(triple_failures(inst.weights.as_slice(), h).is_empty() && pair_failures(inst, h).is_empty())
}

/// A reordering of the weights plus a split point: positions `0..=s` of
/// `order` divide `d1`, positions `s+1..` divide `d2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Split {
    /// `order[k]` is the original index placed at position `k`.
    pub order: Vec<usize>,
    pub s: isize,
}

impl Split {
    fn from_sides(w: &[Int], mut side1: Vec<usize>, mut side2: Vec<usize>) -> Self {
        side1.sort_by_key(|&i| (w[i], i));
        side2.sort_by_key(|&i| (w[i], i));
        let s = side1.len() as isize - 1;
        side1.extend(side2);
        Split { order: side1, s }
    }
}

/// Greedy split: weights not dividing `h` go to the `d1` side when they
/// divide `d1`, otherwise to the `d2` side; weights dividing `h` follow on
/// whichever side they divide (`d1` preferred, `d2` otherwise). Each side
/// is sorted by weight, then index.
pub fn choose_split(inst: &WciInstance, h: Int) -> Result<Split> {
    let w = inst.weights.as_slice();
    let (mut side1, mut side2, mut free1, mut free2) = (vec![], vec![], vec![], vec![]);
    for (i, &a) in w.iter().enumerate() {
        let on_d1 = divides(a, inst.d1);
        match (divides(a, h), on_d1, divides(a, inst.d2)) {
            (false, true, _) => side1.push(i),
            (false, false, true) => side2.push(i),
            (false, false, false) => return Err(Error::SplitImpossible { index: i }),
            (true, true, _) => free1.push(i),
            (true, false, _) => free2.push(i),
        }
    }
    let mut split1 = Split::from_sides(w, side1, side2);
    // free indices go after the mandatory ones on their side
    let s = split1.s;
    let cut = (s + 1) as usize;
    let mut tail = split1.order.split_off(cut);
    free1.sort_by_key(|&i| (w[i], i));
    free2.sort_by_key(|&i| (w[i], i));
    split1.s = s + free1.len() as isize;
    split1.order.extend(free1);
    tail.extend(free2);
    split1.order.extend(tail);
    Ok(split1)
}

/// A monomial `∏ x_i^{k_i}` with at most three variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectionWitness {
    /// variable index → positive exponent
    pub terms: BTreeMap<usize, Int>,
    pub degree: Int,
}

impl SectionWitness {
    fn from_exponents(indices: &[usize], exponents: &[Int], degree: Int) -> Self {
        let terms = indices
            .iter()
            .zip(exponents)
            .filter(|(_, &k)| k > 0)
            .map(|(&i, &k)| (i, k))
            .collect();
        Self { terms, degree }
    }

    /// Weighted degree `Σ k_i a_i`.
    pub fn weighted_degree(&self, weights: &WeightSequence) -> Result<Int> {
        self.terms.iter().try_fold(0 as Int, |acc, (&i, &k)| {
            if i >= weights.len() {
                return Err(Error::IndexOutOfRange { index: i, len: weights.len() });
            }
            k.checked_mul(weights.get(i))
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow)
        })
    }

    /// Degree identity, at most three variables, positive exponents.
    pub fn is_valid_for(&self, weights: &WeightSequence) -> bool {
        self.terms.len() <= 3
            && self.terms.values().all(|&k| k > 0)
            && self.weighted_degree(weights).ok() == Some(self.degree)
    }
}

/// How a witness was obtained.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum WitnessRoute {
    /// Some `a_i` divides `h`.
    DirectDivisor { index: usize },
    /// Certificate search on a split; `greedy` is false when the greedy split
    /// failed and another assignment of the both-dividing weights was used.
    Certificate {
        split: Split,
        profile: SplitProfile,
        certificate: NonvanishingCertificate,
        /// Certificate indices mapped back to the caller's variable order.
        variables: Vec<usize>,
        greedy: bool,
        /// `f₁ | d1` and `f₂ | d2` on the split used.
        divisibility_chain: bool,
    },
    /// Exhaustive search over all subsets of at most three variables.
    Exhaustive { variables: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SectionProof {
    pub witness: SectionWitness,
    pub route: WitnessRoute,
}

/// Everything needed to reproduce a failed witness search.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TheoremDiagnostic {
    pub instance: WciInstance,
    pub h: Int,
    pub split: Option<Split>,
    pub profile: Option<SplitProfile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    /// Index sets witnessing each failure.
    pub failures: Vec<Vec<usize>>,
}

impl HypothesisCheck {
    fn new(name: &str, failures: Vec<Vec<usize>>) -> Self {
        Self { name: name.to_string(), passed: failures.is_empty(), failures }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub instance: WciInstance,
    pub h: Int,
    pub canonical_degree: Option<Int>,
    pub checks: Vec<HypothesisCheck>,
    /// Reported, never enforced.
    pub linear_cone: bool,
    /// Advisory: every `n` of the `n + 1` weights are coprime.
    pub ambient_gcd_ok: bool,
    pub all_pass: bool,
}

impl ValidationReport {
    pub fn failed(&self) -> impl Iterator<Item = &HypothesisCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn validate_instance(inst: &WciInstance, h: Int) -> ValidationReport {
    let w = inst.weights.as_slice();
    let k = canonical_degree(inst).ok();
    let mut checks = vec![HypothesisCheck {
        name: "positive_degree".into(),
        passed: h >= 1,
        failures: vec![],
    }];
    if h >= 1 {
        checks.push(HypothesisCheck::new("split_divisibility", split_failures(inst, h)));
        checks.push(HypothesisCheck::new("cartier_triples", triple_failures(w, h)));
        checks.push(HypothesisCheck::new("cartier_pairs", pair_failures(inst, h)));
    }
    checks.push(HypothesisCheck {
        name: "amplitude".into(),
        passed: k.is_some_and(|k| h > k),
        failures: vec![],
    });
    let ambient_gcd_ok = (0..w.len()).all(|skip| {
        w.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0, |g, (_, &a)| gcd(g, a))
            == 1
    });
    let all_pass = checks.iter().all(|c| c.passed);
    ValidationReport {
        instance: inst.clone(),
        h,
        canonical_degree: k,
        checks,
        linear_cone: inst.is_linear_cone(),
        ambient_gcd_ok,
        all_pass,
    }
}

fn certify_on_split(
    inst: &WciInstance,
    h: Int,
    split: Split,
    greedy: bool,
) -> Result<Option<SectionProof>> {
    let reordered = inst.weights.permuted(&split.order);
    let profile = compute_profile(&reordered, split.s, h)?;
    let Some(certificate) = search_certificate(&reordered, h, profile.lhs)? else {
        return Ok(None);
    };
    let variables: Vec<usize> = certificate.indices.iter().map(|&k| split.order[k]).collect();
    let gens: Vec<Int> = variables.iter().map(|&i| inst.weights.get(i)).collect();
    let Some(rep) = find_representation(&CoinSystem::new(gens)?, h)? else {
        return Ok(None);
    };
    let divisibility_chain = divides(profile.f1, inst.d1) && divides(profile.f2, inst.d2);
    Ok(Some(SectionProof {
        witness: SectionWitness::from_exponents(&variables, &rep.exponents, h),
        route: WitnessRoute::Certificate {
            split,
            profile,
            certificate,
            variables,
            greedy,
            divisibility_chain,
        },
    }))
}

/// Splits other than the greedy one: every assignment of the weights
/// dividing both degrees, in increasing bitmask order.
fn alternative_splits(inst: &WciInstance, h: Int) -> Vec<Split> {
    let w = inst.weights.as_slice();
    let (mut fixed1, mut fixed2, mut both) = (vec![], vec![], vec![]);
    for (i, &a) in w.iter().enumerate() {
        debug_assert!(!divides(a, h));
        match (divides(a, inst.d1), divides(a, inst.d2)) {
            (true, true) => both.push(i),
            (true, false) => fixed1.push(i),
            _ => fixed2.push(i),
        }
    }
    let all_mask = (1u32 << both.len()) - 1;
    // the all-ones mask reproduces the greedy split
    (0..all_mask)
        .map(|mask| {
            let mut side1 = fixed1.clone();
            let mut side2 = fixed2.clone();
            for (bit, &i) in both.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    side1.push(i);
                } else {
                    side2.push(i);
                }
            }
            Split::from_sides(w, side1, side2)
        })
        .collect()
}

/// Exhaustive oracle: the first subset of at most three variables (by size,
/// then lexicographically) whose weights represent `h`.
pub fn exhaustive_witness(weights: &WeightSequence, h: Int) -> Result<Option<SectionWitness>> {
    let w = weights.as_slice();
    let m = w.len();
    let subsets = (0..m)
        .map(|i| vec![i])
        .chain(pairs(m).map(|p| p.to_vec()))
        .chain(triples(m).map(|t| t.to_vec()));
    for subset in subsets {
        let gens: Vec<Int> = subset.iter().map(|&i| w[i]).collect();
        if RepresentabilityTable::new(&gens, h)?.contains(h) {
            let rep = find_representation(&CoinSystem::new(gens)?, h)?
                .expect("table and representation agree");
            return Ok(Some(SectionWitness::from_exponents(&subset, &rep.exponents, h)));
        }
    }
    Ok(None)
}

/// A monomial of degree `h` in at most three variables.
///
/// Requires every check of [`validate_instance`] to pass. The witness comes
/// from a direct divisor when some `a_i | h`, otherwise from the certificate
/// on the greedy split (then on the alternative splits), and only as a last
/// resort from the exhaustive search. Exhausting all three routes yields
/// [`Error::TheoremCounterexample`].
pub fn find_section_witness(inst: &WciInstance, h: Int) -> Result<SectionProof> {
    let report = validate_instance(inst, h);
    if !report.all_pass {
        let names: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
        return Err(Error::PreconditionViolated(names.join(", ")));
    }
    let w = inst.weights.as_slice();
    if let Some(i) = w.iter().position(|&a| divides(a, h)) {
        return Ok(SectionProof {
            witness: SectionWitness::from_exponents(&[i], &[h / w[i]], h),
            route: WitnessRoute::DirectDivisor { index: i },
        });
    }

    let greedy = choose_split(inst, h)?;
    if let Some(proof) = certify_on_split(inst, h, greedy.clone(), true)? {
        return Ok(proof);
    }
    for split in alternative_splits(inst, h) {
        if let Some(proof) = certify_on_split(inst, h, split, false)? {
            return Ok(proof);
        }
    }

    if let Some(witness) = exhaustive_witness(&inst.weights, h)? {
        let variables = witness.terms.keys().copied().collect();
        return Ok(SectionProof { witness, route: WitnessRoute::Exhaustive { variables } });
    }
    let reordered = inst.weights.permuted(&greedy.order);
    let profile = compute_profile(&reordered, greedy.s, h).ok();
    Err(Error::TheoremCounterexample(Box::new(TheoremDiagnostic {
        instance: inst.clone(),
        h,
        split: Some(greedy),
        profile,
    })))
}
