use super::SweepBounds;
use crate::arith::{Int, WeightSequence};
use crate::error::Result;

/// Nondecreasing tuples of a fixed length over `1..=max`, lexicographically.
struct Nondecreasing {
    max: Int,
    next: Option<Vec<Int>>,
}

impl Nondecreasing {
    fn new(len: usize, max: Int) -> Self {
        let next = (max >= 1).then(|| vec![1; len]);
        Self { max, next }
    }
}

impl Iterator for Nondecreasing {
    type Item = Vec<Int>;

    fn next(&mut self) -> Option<Vec<Int>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(pos) = succ.iter().rposition(|&x| x < self.max) {
            let v = succ[pos] + 1;
            succ[pos..].iter_mut().for_each(|x| *x = v);
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Every nondecreasing weight sequence with `n` in the bounds' range and
/// entries in `[1, max_weight]`, by `n` then lexicographically.
pub fn enumerate_sequences(bounds: &SweepBounds) -> Result<impl Iterator<Item = WeightSequence>> {
    bounds.validate()?;
    let max = bounds.max_weight;
    Ok((bounds.n_min..=bounds.n_max)
        .flat_map(move |n| Nondecreasing::new(n + 1, max))
        .map(WeightSequence::from_trusted))
}

/// Sequences of length `n + 1` that are nondecreasing on `0..=s` and on
/// `s+1..=n` separately. Profiles are invariant under permutations inside
/// each side, so these represent every `(a, s)` pair.
pub fn side_sorted_sequences(n: usize, s: isize, max_weight: Int) -> Vec<WeightSequence> {
    let left_len = (s + 1) as usize;
    let right: Vec<Vec<Int>> = Nondecreasing::new(n + 1 - left_len, max_weight).collect();
    Nondecreasing::new(left_len, max_weight)
        .flat_map(|left| {
            right.iter().map(move |r| {
                let mut v = left.clone();
                v.extend_from_slice(r);
                WeightSequence::from_trusted(v)
            })
        })
        .collect()
}

/// All `(a, s)` pairs with `a` side-sorted for `s`, for every `n` in range
/// and `s ∈ [−1, n]`.
pub fn enumerate_split_sequences(bounds: &SweepBounds) -> Result<Vec<(WeightSequence, isize)>> {
    bounds.validate()?;
    let mut out = Vec::new();
    for n in bounds.n_min..=bounds.n_max {
        for s in -1..=n as isize {
            out.extend(
                side_sorted_sequences(n, s, bounds.max_weight)
                    .into_iter()
                    .map(|a| (a, s)),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn nondecreasing_examples() {
        let b = SweepBounds::new(3, 3, 2);
        let got: Vec<Vec<Int>> = enumerate_sequences(&b).unwrap().map(Vec::from).collect();
        assert_eq!(
            got,
            vec![vec![1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 2, 2], vec![2, 2, 2, 2]]
        );
        let b = SweepBounds::new(3, 3, 1);
        let got: Vec<Vec<Int>> = enumerate_sequences(&b).unwrap().map(Vec::from).collect();
        assert_eq!(got, vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn empty_and_invalid_bounds() {
        assert!(matches!(enumerate_sequences(&SweepBounds::new(4, 3, 5)), Err(Error::InvalidBounds(_))));
        assert!(matches!(enumerate_sequences(&SweepBounds::new(3, 3, 0)), Err(Error::InvalidBounds(_))));
    }

    #[test]
    fn counts_match_multiset_formula() {
        for (n, w) in [(3usize, 8u64), (4, 10), (2, 20)] {
            let b = SweepBounds::new(n, n, w as Int);
            let count = enumerate_sequences(&b).unwrap().count() as u64;
            // multisets of size n+1 from w values
            assert_eq!(count, binom(w + n as u64, n as u64 + 1));
        }
    }

    #[test]
    fn side_sorted_covers_every_sequence_up_to_side_permutation() {
        let (n, w) = (3usize, 4 as Int);
        for s in -1..=n as isize {
            let listed = side_sorted_sequences(n, s, w);
            let cut = (s + 1) as usize;
            let mut all = std::collections::BTreeSet::new();
            for code in 0..(w as usize).pow(n as u32 + 1) {
                let mut v: Vec<Int> = (0..=n).map(|k| (code / (w as usize).pow(k as u32) % w as usize) as Int + 1).collect();
                v[..cut].sort();
                v[cut..].sort();
                all.insert(v);
            }
            let listed: std::collections::BTreeSet<Vec<Int>> = listed.into_iter().map(Vec::from).collect();
            assert_eq!(listed, all, "s = {s}");
        }
    }
}
