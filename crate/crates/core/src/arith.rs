//! Exact gcd/lcm arithmetic on weight sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Working integer type. Every operation is checked; nothing wraps.
pub type Int = i128;

/// The weights `a_0, …, a_n` of a weighted projective space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Int>", into = "Vec<Int>")]
pub struct WeightSequence(Vec<Int>);

impl WeightSequence {
    pub fn new(weights: Vec<Int>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyList);
        }
        if let Some(&bad) = weights.iter().find(|&&w| w < 1) {
            return Err(Error::NonPositive(bad));
        }
        Ok(Self(weights))
    }

    /// Build from values already known to be positive (sweep enumerators).
    pub(crate) fn from_trusted(weights: Vec<Int>) -> Self {
        debug_assert!(!weights.is_empty() && weights.iter().all(|&w| w >= 1));
        Self(weights)
    }

    /// Index of the last entry.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Int {
        self.0[i]
    }

    pub fn sum(&self) -> Result<Int> {
        self.0
            .iter()
            .try_fold(0 as Int, |acc, &w| acc.checked_add(w).ok_or(Error::Overflow))
    }

    /// lcm of all weights; the period of every divisibility pattern in `h`.
    pub fn lcm(&self) -> Result<Int> {
        lcm_list(&self.0)
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    /// Sequence whose `k`-th entry is `self[order[k]]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        debug_assert_eq!(order.len(), self.len());
        Self(order.iter().map(|&i| self.0[i]).collect())
    }
}

impl TryFrom<Vec<Int>> for WeightSequence {
    type Error = Error;

    fn try_from(v: Vec<Int>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<WeightSequence> for Vec<Int> {
    fn from(w: WeightSequence) -> Self {
        w.0
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, w) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// A set of distinct indices into a [`WeightSequence`], kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl<const N: usize> From<[usize; N]> for IndexSubset {
    fn from(v: [usize; N]) -> Self {
        Self::new(v.to_vec())
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
            return gcd_u64(a as u64, b as u64) as u128;
        }
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Nonnegative gcd; `gcd(0, x) = |x|`.
pub fn gcd(a: Int, b: Int) -> Int {
    // |i128::MIN| does not fit; the working range is symmetric.
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as Int
}

/// Checked lcm of two positive integers.
pub fn lcm(a: Int, b: Int) -> Result<Int> {
    if a < 1 {
        return Err(Error::NonPositive(a));
    }
    if b < 1 {
        return Err(Error::NonPositive(b));
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow)
}

/// `true` iff `d` divides `x` (`d ≥ 1`).
#[inline]
pub fn divides(d: Int, x: Int) -> bool {
    if d <= u64::MAX as Int && (0..=u64::MAX as Int).contains(&x) {
        (x as u64).is_multiple_of(d as u64)
    } else {
        x % d == 0
    }
}

/// lcm of a nonempty list of positive integers.
///
/// Empty folds use the identity 1 at the call site; this function rejects
/// them so the convention is applied in exactly one place.
pub fn lcm_list(xs: &[Int]) -> Result<Int> {
    let (&first, rest) = xs.split_first().ok_or(Error::EmptyList)?;
    if first < 1 {
        return Err(Error::NonPositive(first));
    }
    rest.iter().try_fold(first, |acc, &x| lcm(acc, x))
}

/// lcm over a possibly empty iterator, with `lcm{∅} = 1`.
pub fn lcm_fold<I: IntoIterator<Item = Int>>(xs: I) -> Result<Int> {
    xs.into_iter().try_fold(1, lcm)
}

/// `a_I`: gcd of the weights indexed by a nonempty subset.
pub fn gcd_subset(a: &WeightSequence, subset: &IndexSubset) -> Result<Int> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    subset.indices().iter().try_fold(0, |acc, &i| {
        if i >= a.len() {
            Err(Error::IndexOutOfRange { index: i, len: a.len() })
        } else {
            Ok(gcd(acc, a.get(i)))
        }
    })
}

/// `gcd(lcm(xs), lcm(ys))`.
pub fn gcd_of_lcms(xs: &[Int], ys: &[Int]) -> Result<Int> {
    Ok(gcd(lcm_list(xs)?, lcm_list(ys)?))
}

/// `lcm_{i,j} gcd(x_i, y_j)`: the second evaluation route for
/// [`gcd_of_lcms`], which never forms `lcm(xs)` or `lcm(ys)`.
pub fn lcm_of_pairwise_gcds(xs: &[Int], ys: &[Int]) -> Result<Int> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptyList);
    }
    if let Some(&bad) = xs.iter().chain(ys).find(|&&v| v < 1) {
        return Err(Error::NonPositive(bad));
    }
    xs.iter()
        .flat_map(|&x| ys.iter().map(move |&y| gcd(x, y)))
        .try_fold(1, lcm)
}
