use proptest::prelude::*;

use nonvanish_core::arith::{divides, lcm_of_pairwise_gcds};
use nonvanish_core::{
    compute_profile, find_certificate, find_representation, find_section_witness, gcd,
    gcd_of_lcms, gcd_subset, is_representable, lcm, validate_instance, CoinSystem, Error,
    IndexSubset, Int, WciInstance, WeightSequence,
};

fn weights(len: std::ops::RangeInclusive<usize>, max: Int) -> impl Strategy<Value = Vec<Int>> {
    prop::collection::vec(1..=max, len)
}

/// Brute-force membership, independent of the table implementation.
fn brute_representable(gens: &[Int], h: Int) -> bool {
    match gens.split_first() {
        None => h == 0,
        Some((&g, rest)) => (0..=h / g).any(|k| brute_representable(rest, h - k * g)),
    }
}

proptest! {
    #[test]
    fn subset_gcd_of_union(a in weights(1..=6, 30), i in prop::collection::vec(0usize..6, 1..4), j in prop::collection::vec(0usize..6, 1..4)) {
        let seq = WeightSequence::new(a.clone()).unwrap();
        let clip = |v: Vec<usize>| IndexSubset::new(v.into_iter().map(|k| k % a.len()).collect());
        let (i, j) = (clip(i), clip(j));
        let lhs = gcd(gcd_subset(&seq, &i).unwrap(), gcd_subset(&seq, &j).unwrap());
        prop_assert_eq!(lhs, gcd_subset(&seq, &i.union(&j)).unwrap());
    }

    #[test]
    fn gcd_of_lcms_two_routes(xs in weights(1..=4, 5000), ys in weights(1..=4, 5000)) {
        prop_assert_eq!(gcd_of_lcms(&xs, &ys).unwrap(), lcm_of_pairwise_gcds(&xs, &ys).unwrap());
    }

    #[test]
    fn lcm_gcd_inequalities(a in 1i128..100_000, b in 1i128..100_000) {
        let l = lcm(a, b).unwrap();
        prop_assert!(l + gcd(a, b) >= a + b);
        if !divides(a, b) && !divides(b, a) {
            prop_assert!(l >= 2 * a.max(b));
        }
    }

    #[test]
    fn representation_matches_brute_force(gens in weights(1..=3, 15), h in 1i128..120) {
        let sys = CoinSystem::new(gens.clone()).unwrap();
        let rep = find_representation(&sys, h).unwrap();
        let expected = brute_representable(&gens, h);
        prop_assert_eq!(rep.is_some(), expected);
        prop_assert_eq!(is_representable(&sys, h).unwrap(), expected);
        if let Some(r) = rep {
            prop_assert_eq!(r.value(&gens).unwrap(), h);
            prop_assert!(r.exponents.iter().all(|&k| k >= 0));
        }
    }

    #[test]
    fn representability_scales(gens in weights(1..=3, 12), h in 1i128..100, c in 1i128..6) {
        let sys = CoinSystem::new(gens.clone()).unwrap();
        let scaled = CoinSystem::new(gens.iter().map(|g| g * c).collect()).unwrap();
        prop_assert_eq!(is_representable(&sys, h).unwrap(), is_representable(&scaled, c * h).unwrap());
        let r = find_representation(&sys, h).unwrap();
        let rs = find_representation(&scaled, c * h).unwrap();
        prop_assert_eq!(r.map(|r| r.exponents), rs.map(|r| r.exponents));
    }

    #[test]
    fn certificate_exists_when_hypotheses_hold(a in weights(4..=5, 12), s_raw in 0usize..6, h in 1i128..2000) {
        let seq = WeightSequence::new(a).unwrap();
        let s = (s_raw % (seq.len() + 1)) as isize - 1;
        match compute_profile(&seq, s, h) {
            Err(Error::HypothesesViolated(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(profile) => {
                let cert = find_certificate(&seq, s, h).unwrap();
                prop_assert_eq!(cert.lhs, profile.lhs);
                prop_assert!(cert.lhs >= cert.bound);
            }
        }
    }

    #[test]
    fn profile_reflects_under_reversal(a in weights(4..=5, 12), s_raw in 0usize..6, h in 1i128..2000) {
        let seq = WeightSequence::new(a).unwrap();
        let s = (s_raw % (seq.len() + 1)) as isize - 1;
        if let Ok(p) = compute_profile(&seq, s, h) {
            let q = compute_profile(&seq.reversed(), seq.n() as isize - 1 - s, h).unwrap();
            prop_assert_eq!((q.f1, q.f2, q.h1, q.h2, q.lhs), (p.f2, p.f1, p.h2, p.h1, p.lhs));
        }
    }

    #[test]
    fn profile_depends_on_divisibility_pattern_only(a in weights(4..=4, 12), s_raw in 0usize..5, h in 1i128..500, k in 1i128..6) {
        // h and h + k·lcm(a) satisfy the same divisibility relations
        let seq = WeightSequence::new(a).unwrap();
        let s = (s_raw % (seq.len() + 1)) as isize - 1;
        let shifted = h + k * seq.lcm().unwrap();
        match (compute_profile(&seq, s, h), compute_profile(&seq, s, shifted)) {
            (Ok(p), Ok(q)) => prop_assert_eq!(p, q),
            (Err(_), Err(_)) => {}
            (p, q) => prop_assert!(false, "{p:?} vs {q:?}"),
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn witness_is_permutation_invariant(a in weights(4..=5, 8), k1 in 1i128..3, k2 in 1i128..3, t in 1i128..300, seed in any::<u64>()) {
        // degrees divisible by every weight satisfy the split and pair conditions
        let seq = WeightSequence::new(a).unwrap();
        let l = seq.lcm().unwrap();
        let (d1, d2) = (k1 * l, k2 * l);
        let h = (d1 + d2 - seq.sum().unwrap()).max(0) + t;
        let inst = WciInstance::new(seq.clone(), d1, d2).unwrap();
        let mut order: Vec<usize> = (0..seq.len()).collect();
        let mut x = seed;
        for i in (1..order.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let permuted = WciInstance::new(seq.permuted(&order), d1, d2).unwrap();
        let valid = validate_instance(&inst, h).all_pass;
        prop_assert_eq!(valid, validate_instance(&permuted, h).all_pass);
        if valid {
            let w1 = find_section_witness(&inst, h).unwrap().witness;
            let w2 = find_section_witness(&permuted, h).unwrap().witness;
            prop_assert!(w1.is_valid_for(&inst.weights) && w2.is_valid_for(&permuted.weights));
            prop_assert_eq!(w1.terms.len() <= 3, w2.terms.len() <= 3);
        }
    }
}
