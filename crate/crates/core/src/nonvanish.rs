//! Split profiles and nonvanishing certificates.
//!
//! For a sequence `a = (a_0, …, a_n)`, a degree `h` and a split `s ∈ [−1, n]`
//! the profile collects
//!
//! ```text
//! Σ₁ = {{i,j} : a_{i,j} ∤ h, s < i < j ≤ n}     h₁ = lcm_{I∈Σ₁} a_I
//! Σ₂ = {{i,j} : a_{i,j} ∤ h, 0 ≤ i < j ≤ s}     h₂ = lcm_{I∈Σ₂} a_I
//! f₁ = lcm(a_0, …, a_s, h₁)                      f₂ = lcm(a_{s+1}, …, a_n, h₂)
//! ```
//!
//! with empty folds equal to 1. A certificate is a couple `{u,v}` with
//! `a_{u,v} | h` and `f₁ + f₂ − Σa ≥ lcm(a_u,a_v) − a_u − a_v`, or a triple
//! `(u,v,w)` with `f₁ + f₂ − Σa ≥ lcm(a_u,a_v) + lcm(a_{u,v},a_w) − a_u − a_v − a_w`.

use serde::{Deserialize, Serialize};

use crate::arith::{divides, gcd, lcm, Int, WeightSequence};
use crate::error::{Error, Result};
use crate::semigroup::{frobenius_bound_three, frobenius_bound_two};

/// Smallest `n` accepted by the public certificate API.
pub const MIN_N: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SplitProfile {
    pub s: isize,
    pub sigma1: Vec<(usize, usize)>,
    pub sigma2: Vec<(usize, usize)>,
    pub h1: Int,
    pub h2: Int,
    pub f1: Int,
    pub f2: Int,
    /// `f₁ + f₂ − Σ a_i`, the left-hand side of both assertions.
    pub lhs: Int,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Couple,
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NonvanishingCertificate {
    pub kind: CertificateKind,
    /// `[u, v]` or `[u, v, w]`; for triples `w` is the index entering through
    /// `lcm(a_{u,v}, a_w)`.
    pub indices: Vec<usize>,
    pub bound: Int,
    pub lhs: Int,
}

fn check_split(a: &WeightSequence, s: isize) -> Result<()> {
    if s < -1 || s > a.n() as isize {
        return Err(Error::SplitOutOfRange { s, n: a.n() });
    }
    Ok(())
}

fn check_len(a: &WeightSequence, min: usize) -> Result<()> {
    if a.n() < min {
        return Err(Error::SequenceTooShort { n: a.n(), min });
    }
    Ok(())
}

/// The first hypothesis that fails, if any: some `a_i | h`, or some triple
/// gcd not dividing `h`.
pub fn hypotheses_failure(a: &WeightSequence, h: Int) -> Option<String> {
    let w = a.as_slice();
    if let Some(i) = w.iter().position(|&x| divides(x, h)) {
        return Some(format!("a_{i} = {} divides h = {h}", w[i]));
    }
    let m = w.len();
    for i in 0..m {
        for j in i + 1..m {
            let gij = gcd(w[i], w[j]);
            for (k, &wk) in w.iter().enumerate().skip(j + 1) {
                let g = gcd(gij, wk);
                if !divides(g, h) {
                    return Some(format!("a_{{{i},{j},{k}}} = {g} does not divide h = {h}"));
                }
            }
        }
    }
    None
}

/// `a_i ∤ h` for every `i` and `a_I | h` for every `|I| = 3`.
pub fn hypotheses_hold(a: &WeightSequence, h: Int) -> Result<bool> {
    check_len(a, MIN_N)?;
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    Ok(hypotheses_failure(a, h).is_none())
}

/// Profile for any `n ≥ 1` without checking the hypotheses.
pub fn compute_profile_unchecked(a: &WeightSequence, s: isize, h: Int) -> Result<SplitProfile> {
    check_split(a, s)?;
    let w = a.as_slice();
    let m = w.len();
    // indices 0..=s form side one, s+1..=n side two
    let cut = (s + 1) as usize;
    let mut sigma1 = Vec::new();
    let mut sigma2 = Vec::new();
    let mut h1: Int = 1;
    let mut h2: Int = 1;
    for i in 0..m {
        for j in i + 1..m {
            let g = gcd(w[i], w[j]);
            if divides(g, h) {
                continue;
            }
            if i >= cut {
                sigma1.push((i, j));
                h1 = lcm(h1, g)?;
            } else if j < cut {
                sigma2.push((i, j));
                h2 = lcm(h2, g)?;
            }
        }
    }
    let f1 = w[..cut].iter().try_fold(h1, |acc, &x| lcm(acc, x))?;
    let f2 = w[cut..].iter().try_fold(h2, |acc, &x| lcm(acc, x))?;
    let lhs = f1
        .checked_add(f2)
        .and_then(|v| v.checked_sub(a.sum().ok()?))
        .ok_or(Error::Overflow)?;
    Ok(SplitProfile { s, sigma1, sigma2, h1, h2, f1, f2, lhs })
}

/// Profile of `(a, s)` at degree `h`; requires `n ≥ 3` and the hypotheses.
pub fn compute_profile(a: &WeightSequence, s: isize, h: Int) -> Result<SplitProfile> {
    check_len(a, MIN_N)?;
    check_split(a, s)?;
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    if let Some(why) = hypotheses_failure(a, h) {
        return Err(Error::HypothesesViolated(why));
    }
    compute_profile_unchecked(a, s, h)
}

/// First certificate in the fixed search order: couples `u < v`
/// lexicographically, then triples `(u, v, w)` with `u < v`, `w ∉ {u, v}`
/// lexicographically.
pub fn search_certificate(
    a: &WeightSequence,
    h: Int,
    lhs: Int,
) -> Result<Option<NonvanishingCertificate>> {
    let w = a.as_slice();
    let m = w.len();
    for u in 0..m {
        for v in u + 1..m {
            if !divides(gcd(w[u], w[v]), h) {
                continue;
            }
            let bound = frobenius_bound_two(w[u], w[v])?;
            if lhs >= bound {
                return Ok(Some(NonvanishingCertificate {
                    kind: CertificateKind::Couple,
                    indices: vec![u, v],
                    bound,
                    lhs,
                }));
            }
        }
    }
    for u in 0..m {
        for v in u + 1..m {
            for t in 0..m {
                if t == u || t == v {
                    continue;
                }
                let bound = frobenius_bound_three(w[u], w[v], w[t])?;
                if lhs >= bound {
                    return Ok(Some(NonvanishingCertificate {
                        kind: CertificateKind::Triple,
                        indices: vec![u, v, t],
                        bound,
                        lhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Certificate for `(a, s, h)`. A failed search is reported as
/// [`Error::CounterexampleFound`] carrying the profile.
pub fn find_certificate(a: &WeightSequence, s: isize, h: Int) -> Result<NonvanishingCertificate> {
    let profile = compute_profile(a, s, h)?;
    match search_certificate(a, h, profile.lhs)? {
        Some(cert) => Ok(cert),
        None => Err(Error::CounterexampleFound(Box::new(profile))),
    }
}

/// No divisibility relation between two weights on the same side of the
/// split.
pub fn star_condition(a: &WeightSequence, s: isize) -> Result<bool> {
    check_split(a, s)?;
    let w = a.as_slice();
    let cut = (s + 1) as usize;
    let side_ok = |side: &[Int]| {
        side.iter().enumerate().all(|(k, &x)| {
            side[k + 1..]
                .iter()
                .all(|&y| !divides(x, y) && !divides(y, x))
        })
    };
    Ok(side_ok(&w[..cut]) && side_ok(&w[cut..]))
}

/// The three necessary conditions for a failed search when `n = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SmallFailureConditions {
    /// `s = −1` or `s = 2`.
    pub split_at_end: bool,
    /// The unique pair `J` with `a_J ∤ h`, if exactly one exists.
    pub unique_pair: Option<(usize, usize)>,
    /// `a_i | lcm_{j≠i} a_j` for both members of `J`.
    pub members_divide_rest: bool,
}

impl SmallFailureConditions {
    pub fn all_hold(&self) -> bool {
        self.split_at_end && self.unique_pair.is_some() && self.members_divide_rest
    }
}

pub fn small_failure_conditions(
    a: &WeightSequence,
    s: isize,
    h: Int,
) -> Result<SmallFailureConditions> {
    if a.n() != 2 {
        return Err(Error::PreconditionViolated(format!("expected n = 2, got n = {}", a.n())));
    }
    check_split(a, s)?;
    let w = a.as_slice();
    let bad: Vec<(usize, usize)> = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .filter(|&(i, j)| !divides(gcd(w[i], w[j]), h))
        .collect();
    let unique_pair = match bad.as_slice() {
        [pair] => Some(*pair),
        _ => None,
    };
    let members_divide_rest = match unique_pair {
        Some((i, j)) => [i, j].into_iter().try_fold(true, |ok, t| {
            let rest = (0..3)
                .filter(|&k| k != t)
                .try_fold(1, |acc, k| lcm(acc, w[k]))?;
            Ok::<_, Error>(ok && divides(w[t], rest))
        })?,
        None => false,
    };
    Ok(SmallFailureConditions {
        split_at_end: s == -1 || s == 2,
        unique_pair,
        members_divide_rest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[Int]) -> WeightSequence {
        WeightSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hypotheses_examples() {
        assert_eq!(hypotheses_hold(&seq(&[4, 6, 10, 15]), 2), Ok(true));
        assert_eq!(hypotheses_hold(&seq(&[2, 3, 4, 5]), 7), Ok(true));
        assert_eq!(hypotheses_hold(&seq(&[2, 2, 2, 2]), 3), Ok(false));
        assert_eq!(hypotheses_hold(&seq(&[2, 3, 5, 7]), 4), Ok(false));
        assert_eq!(
            hypotheses_hold(&seq(&[2, 3, 5]), 7),
            Err(Error::SequenceTooShort { n: 2, min: 3 })
        );
    }

    #[test]
    fn profile_examples() {
        let p = compute_profile(&seq(&[4, 6, 10, 15]), 1, 2).unwrap();
        assert_eq!(p.sigma1, vec![(2, 3)]);
        assert!(p.sigma2.is_empty());
        assert_eq!((p.h1, p.h2, p.f1, p.f2), (5, 1, 60, 30));

        let p = compute_profile(&seq(&[2, 3, 4, 5]), 1, 7).unwrap();
        assert!(p.sigma1.is_empty() && p.sigma2.is_empty());
        assert_eq!((p.h1, p.h2, p.f1, p.f2), (1, 1, 6, 20));

        let p = compute_profile(&seq(&[2, 3, 4, 5]), -1, 7).unwrap();
        assert_eq!(p.sigma1, vec![(0, 2)]);
        assert!(p.sigma2.is_empty());
        assert_eq!((p.h1, p.h2, p.f1, p.f2), (2, 1, 2, 60));
        assert_eq!(p.lhs, 48);
    }

    #[test]
    fn profile_errors() {
        let a = seq(&[4, 6, 10, 15]);
        assert_eq!(compute_profile(&a, 4, 2), Err(Error::SplitOutOfRange { s: 4, n: 3 }));
        assert_eq!(compute_profile(&a, -2, 2), Err(Error::SplitOutOfRange { s: -2, n: 3 }));
        assert!(matches!(compute_profile(&a, 1, 4), Err(Error::HypothesesViolated(_))));
    }

    #[test]
    fn certificate_examples() {
        let c = find_certificate(&seq(&[4, 6, 10, 15]), 1, 2).unwrap();
        assert_eq!((c.kind, c.indices.as_slice(), c.bound, c.lhs), (CertificateKind::Couple, &[0, 1][..], 2, 55));

        let c = find_certificate(&seq(&[2, 3, 4, 5]), 1, 7).unwrap();
        assert_eq!((c.kind, c.indices.as_slice(), c.bound, c.lhs), (CertificateKind::Couple, &[0, 1][..], 1, 12));

        // f₁ = 2, f₂ = 60, Σa = 14; first couple {0,1} has bound 1.
        let c = find_certificate(&seq(&[2, 3, 4, 5]), -1, 7).unwrap();
        assert_eq!((c.kind, c.indices.as_slice(), c.bound, c.lhs), (CertificateKind::Couple, &[0, 1][..], 1, 48));
    }

    #[test]
    fn triple_certificate_is_found_when_no_couple_qualifies() {
        // n = 2 cell where no couple qualifies: a = (6, 10, 15), h = 1, s = 1.
        // All pair gcds (2, 3, 5) fail to divide 1.
        let a = seq(&[6, 10, 15]);
        let p = compute_profile_unchecked(&a, 1, 1).unwrap();
        assert_eq!(p.sigma2, vec![(0, 1)]);
        let c = search_certificate(&a, 1, p.lhs).unwrap().unwrap();
        assert_eq!(c.kind, CertificateKind::Triple);
        let w = a.as_slice();
        let (u, v, t) = (c.indices[0], c.indices[1], c.indices[2]);
        assert_eq!(c.bound, frobenius_bound_three(w[u], w[v], w[t]).unwrap());
        assert!(c.lhs >= c.bound);
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_condition(&seq(&[4, 6, 10, 15]), 1), Ok(true));
        assert_eq!(star_condition(&seq(&[2, 4, 3, 5]), 1), Ok(false));
        assert_eq!(star_condition(&seq(&[4, 6, 9, 10]), -1), Ok(true));
        assert_eq!(star_condition(&seq(&[4, 6, 9, 12]), -1), Ok(false));
        assert_eq!(star_condition(&seq(&[4, 6, 9, 12]), 2), Ok(true));
        assert_eq!(star_condition(&seq(&[4, 6]), 3), Err(Error::SplitOutOfRange { s: 3, n: 1 }));
    }

    #[test]
    fn small_failure_conditions_report() {
        // a_{0,1} = 2 ∤ 15 only; 6 | lcm(10, 105) and 10 | lcm(6, 105).
        let c = small_failure_conditions(&seq(&[6, 10, 105]), -1, 15).unwrap();
        assert!(c.split_at_end);
        assert_eq!(c.unique_pair, Some((0, 1)));
        assert!(c.members_divide_rest);
        assert!(c.all_hold());
        let c = small_failure_conditions(&seq(&[6, 10, 15]), 1, 1).unwrap();
        assert!(!c.split_at_end && c.unique_pair.is_none() && !c.all_hold());
        assert!(small_failure_conditions(&seq(&[2, 3, 5, 7]), 1, 1).is_err());
    }
}
