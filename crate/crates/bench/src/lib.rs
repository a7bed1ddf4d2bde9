//! Fixed inputs shared by the criterion benchmarks.

use nonvanish_core::{Int, WciInstance, WeightSequence};

/// `(weights, s, h)` cells with the hypotheses satisfied.
pub fn profile_cells() -> Vec<(WeightSequence, isize, Int)> {
    [
        (vec![4, 6, 10, 15], 1, 2),
        (vec![2, 3, 4, 5], -1, 7),
        (vec![6, 10, 15, 7, 11], 2, 1),
        (vec![5, 7, 8, 9, 11], 3, 1),
    ]
    .into_iter()
    .map(|(w, s, h)| (WeightSequence::new(w).expect("positive weights"), s, h))
    .collect()
}

/// `(instance, h)` pairs passing every hypothesis of the witness pipeline.
pub fn witness_cases() -> Vec<(WciInstance, Int)> {
    let inst = |w: Vec<Int>, d1, d2| {
        WciInstance::new(WeightSequence::new(w).expect("positive weights"), d1, d2)
            .expect("valid instance")
    };
    vec![
        (inst(vec![4, 6, 10, 15], 60, 30), 58),
        (inst(vec![4, 6, 10, 15], 60, 30), 118),
        (inst(vec![1, 1, 1, 1, 1], 2, 3), 1),
    ]
}
