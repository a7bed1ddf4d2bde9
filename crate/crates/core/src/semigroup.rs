//! Membership in numerical semigroups generated by one to three weights
//! (the coin problem), constructive representations, and the closed-form
//! sufficiency bounds for couples and triples.

use serde::{Deserialize, Serialize};

use crate::arith::{divides, gcd, lcm, Int};
use crate::error::{Error, Result};

/// Largest `h` the membership tables will allocate for.
pub const DP_LIMIT: Int = 1 << 26;

/// Generators of a numerical semigroup, 1 to 3 of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinSystem {
    generators: Vec<Int>,
}

impl CoinSystem {
    pub fn new(generators: Vec<Int>) -> Result<Self> {
        if generators.is_empty() || generators.len() > 3 {
            return Err(Error::InvalidCoinSystem(generators.len()));
        }
        if let Some(&bad) = generators.iter().find(|&&g| g < 1) {
            return Err(Error::NonPositive(bad));
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[Int] {
        &self.generators
    }

    /// gcd of all generators; `h` must be a multiple of it to be reachable.
    pub fn content(&self) -> Int {
        self.generators.iter().fold(0, |acc, &g| gcd(acc, g))
    }
}

/// Exponents `k_i ≥ 0`, one per generator, with `Σ k_i g_i = value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub exponents: Vec<Int>,
}

impl Representation {
    pub fn value(&self, generators: &[Int]) -> Result<Int> {
        self.exponents
            .iter()
            .zip(generators)
            .try_fold(0 as Int, |acc, (&k, &g)| {
                k.checked_mul(g)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow)
            })
    }
}

/// Membership table for `0..=max` under an arbitrary list of generators.
///
/// This is the brute-force oracle used across the crate; it accepts any
/// number of generators (including none, in which case only 0 is reachable).
#[derive(Debug, Clone)]
pub struct RepresentabilityTable {
    reachable: Vec<bool>,
}

impl RepresentabilityTable {
    pub fn new(generators: &[Int], max: Int) -> Result<Self> {
        check_dp_range(max)?;
        let len = max as usize + 1;
        let mut reachable = vec![false; len];
        reachable[0] = true;
        let gens: Vec<usize> = generators
            .iter()
            .filter(|&&g| g <= max)
            .map(|&g| g as usize)
            .collect();
        for x in 1..len {
            reachable[x] = gens.iter().any(|&g| g <= x && reachable[x - g]);
        }
        Ok(Self { reachable })
    }

    pub fn max(&self) -> Int {
        self.reachable.len() as Int - 1
    }

    /// Panics if `h` is outside `0..=max`.
    pub fn contains(&self, h: Int) -> bool {
        self.reachable[h as usize]
    }
}

fn check_dp_range(h: Int) -> Result<()> {
    if h < 0 {
        return Err(Error::NonPositive(h));
    }
    if h > DP_LIMIT {
        return Err(Error::PreconditionViolated(format!(
            "h = {h} exceeds the membership table limit {DP_LIMIT}"
        )));
    }
    Ok(())
}

fn check_target(h: Int) -> Result<()> {
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    check_dp_range(h)
}

pub fn is_representable(sys: &CoinSystem, h: Int) -> Result<bool> {
    check_target(h)?;
    if !divides(sys.content(), h) {
        return Ok(false);
    }
    Ok(RepresentabilityTable::new(sys.generators(), h)?.contains(h))
}

/// The lexicographically smallest exponent vector (minimise `k_0`, then
/// `k_1`, …) representing `h`, or `None`.
pub fn find_representation(sys: &CoinSystem, h: Int) -> Result<Option<Representation>> {
    check_target(h)?;
    if !divides(sys.content(), h) {
        return Ok(None);
    }
    let gens = sys.generators();
    // suffix[i]: reachability using gens[i..]
    let suffix = (0..=gens.len())
        .map(|i| RepresentabilityTable::new(&gens[i..], h))
        .collect::<Result<Vec<_>>>()?;
    if !suffix[0].contains(h) {
        return Ok(None);
    }
    let mut rest = h;
    let mut exponents = Vec::with_capacity(gens.len());
    for (i, &g) in gens.iter().enumerate() {
        let k = (0..=rest / g)
            .find(|&k| suffix[i + 1].contains(rest - k * g))
            .expect("suffix table guarantees a completion");
        exponents.push(k);
        rest -= k * g;
    }
    debug_assert_eq!(rest, 0);
    Ok(Some(Representation { exponents }))
}

/// `lcm(a0, a1) − a0 − a1`; representability is guaranteed strictly above it
/// once `gcd(a0, a1) | h`.
pub fn frobenius_bound_two(a0: Int, a1: Int) -> Result<Int> {
    lcm(a0, a1)?
        .checked_sub(a0)
        .and_then(|v| v.checked_sub(a1))
        .ok_or(Error::Overflow)
}

/// `lcm(a0, a1) + lcm(gcd(a0, a1), a2) − a0 − a1 − a2`. Not symmetric in
/// `a2`.
pub fn frobenius_bound_three(a0: Int, a1: Int, a2: Int) -> Result<Int> {
    let first = lcm(a0, a1)?;
    let second = lcm(gcd(a0, a1), a2)?;
    first
        .checked_add(second)
        .and_then(|v| v.checked_sub(a0))
        .and_then(|v| v.checked_sub(a1))
        .and_then(|v| v.checked_sub(a2))
        .ok_or(Error::Overflow)
}

/// The sufficient condition for membership: the content divides `h` and `h`
/// strictly exceeds the couple/triple bound (generators taken in the given
/// order).
pub fn guaranteed_representable(sys: &CoinSystem, h: Int) -> Result<bool> {
    if h < 1 {
        return Err(Error::NonPositive(h));
    }
    let bound = match *sys.generators() {
        [a0, a1] => frobenius_bound_two(a0, a1)?,
        [a0, a1, a2] => frobenius_bound_three(a0, a1, a2)?,
        ref g => return Err(Error::WrongArity(g.len())),
    };
    Ok(divides(sys.content(), h) && h > bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(g: &[Int]) -> CoinSystem {
        CoinSystem::new(g.to_vec()).unwrap()
    }

    /// Enumerates every exponent vector with `Σ k_i g_i = h`.
    fn all_representations(g: &[Int], h: Int) -> Vec<Vec<Int>> {
        fn rec(g: &[Int], h: Int, prefix: &mut Vec<Int>, out: &mut Vec<Vec<Int>>) {
            match g.split_first() {
                None => {
                    if h == 0 {
                        out.push(prefix.clone());
                    }
                }
                Some((&first, rest)) => {
                    for k in 0..=h / first {
                        prefix.push(k);
                        rec(rest, h - k * first, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        rec(g, h, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn representability_examples() {
        assert_eq!(is_representable(&sys(&[2, 3]), 1), Ok(false));
        assert_eq!(is_representable(&sys(&[4, 6]), 58), Ok(true));
        assert_eq!(is_representable(&sys(&[4, 6, 9]), 11), Ok(false));
        assert!(all_representations(&[4, 6, 9], 11).is_empty());
        assert!(!all_representations(&[4, 6], 58).is_empty());
    }

    #[test]
    fn representation_examples() {
        // 4·1 + 6·9 = 58 is the smallest k_0 (58 is not a multiple of 6).
        let r = find_representation(&sys(&[4, 6]), 58).unwrap().unwrap();
        assert_eq!(r.exponents, vec![1, 9]);
        let r = find_representation(&sys(&[5]), 15).unwrap().unwrap();
        assert_eq!(r.exponents, vec![3]);
        let r = find_representation(&sys(&[4, 6, 9]), 13).unwrap().unwrap();
        assert_eq!(r.exponents, vec![1, 0, 1]);
        assert_eq!(find_representation(&sys(&[4, 6, 9]), 11), Ok(None));
    }

    #[test]
    fn representation_is_lexicographic_minimum() {
        for g in [vec![4, 6, 9], vec![3, 5], vec![6, 10, 15], vec![7, 2, 5]] {
            for h in 1..=60 {
                let brute = all_representations(&g, h).into_iter().min();
                let got = find_representation(&sys(&g), h).unwrap().map(|r| r.exponents);
                assert_eq!(got, brute, "generators {g:?}, h {h}");
            }
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(frobenius_bound_two(2, 3), Ok(1));
        assert_eq!(frobenius_bound_two(4, 6), Ok(2));
        assert_eq!(frobenius_bound_two(1, 1), Ok(-1));
        assert_eq!(frobenius_bound_three(4, 6, 9), Ok(11));
        assert_eq!(frobenius_bound_three(1, 1, 1), Ok(-1));
        // lcm(2,3) + lcm(1,5) − 10
        assert_eq!(frobenius_bound_three(2, 3, 5), Ok(1));
        assert_eq!(frobenius_bound_two(1 << 126, 3), Err(Error::Overflow));
    }

    #[test]
    fn guaranteed_examples() {
        assert_eq!(guaranteed_representable(&sys(&[4, 6]), 4), Ok(true));
        assert_eq!(guaranteed_representable(&sys(&[4, 6]), 2), Ok(false));
        assert_eq!(guaranteed_representable(&sys(&[4, 6, 9]), 12), Ok(true));
        assert_eq!(guaranteed_representable(&sys(&[4, 6]), 7), Ok(false));
        assert_eq!(guaranteed_representable(&sys(&[4]), 8), Err(Error::WrongArity(1)));
    }

    #[test]
    fn coin_system_validation() {
        assert_eq!(CoinSystem::new(vec![]), Err(Error::InvalidCoinSystem(0)));
        assert_eq!(CoinSystem::new(vec![1, 2, 3, 4]), Err(Error::InvalidCoinSystem(4)));
        assert_eq!(CoinSystem::new(vec![2, 0]), Err(Error::NonPositive(0)));
        assert_eq!(is_representable(&sys(&[2]), 0), Err(Error::NonPositive(0)));
        assert!(is_representable(&sys(&[2]), DP_LIMIT + 2).is_err());
    }

    #[test]
    fn table_matches_enumeration() {
        let g = [6, 10, 15];
        let table = RepresentabilityTable::new(&g, 80).unwrap();
        for h in 0..=80 {
            assert_eq!(table.contains(h), !all_representations(&g, h).is_empty(), "h {h}");
        }
        let empty = RepresentabilityTable::new(&[], 5).unwrap();
        assert!(empty.contains(0) && !empty.contains(3));
    }
}
