mod common;

use common::oracles::{all_subsets, lavrentiev_brute, random_step_fn};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schreier_core::indices::{
    build_l1_tree, index_consistency_report, lavrentiev_index, oscillation_index, oscillation_membership,
    validate_chain, IndicatorSeq, Interval, L1TreeOptions, OscillationMode, StepFn,
};
use schreier_core::norms::rat;
use schreier_core::ordinal::ord;
use schreier_core::trees::wf_order;
use schreier_core::{FamilySpec, FinSet, Ordinal};

fn seq(alpha: &str) -> IndicatorSeq {
    IndicatorSeq::new(FamilySpec::schreier(ord(alpha)))
}

#[test]
fn direct_and_symbolic_oscillation_agree() {
    let eps = rat(1, 2);
    for alpha in ["1", "2"] {
        let s = seq(alpha);
        for f in all_subsets(10) {
            let f = FinSet::from_sorted(f);
            if !s.family.member(&f) {
                continue;
            }
            for j in 0..=8u64 {
                let lam = Ordinal::from(j);
                let sym = oscillation_membership(&s, &f, &lam, &eps, OscillationMode::Symbolic).unwrap();
                let dir = oscillation_membership(&s, &f, &lam, &eps, OscillationMode::direct()).unwrap();
                assert_eq!(sym, dir, "alpha={alpha} F={f} j={j}");
            }
        }
    }
}

#[test]
fn oscillation_is_epsilon_independent() {
    let s = seq("2");
    let f = FinSet::new([4, 9]).unwrap();
    for lam in ["3", "w", "w*2+1"].map(ord) {
        let answers: Vec<bool> = [rat(1, 100), rat(1, 2), rat(99, 100)]
            .iter()
            .map(|e| oscillation_membership(&s, &f, &lam, e, OscillationMode::Symbolic).unwrap())
            .collect();
        assert!(answers.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn oscillation_indices_of_schreier_sequences() {
    for alpha in ["1", "2", "3", "w"] {
        assert_eq!(oscillation_index(&seq(alpha)).unwrap(), Ordinal::omega_pow(ord(alpha)));
    }
    assert_eq!(oscillation_index(&IndicatorSeq::new(FamilySpec::Singletons)).unwrap(), ord("1"));
    let explicit = FamilySpec::explicit([FinSet::empty(), FinSet::new([1]).unwrap()]);
    assert_eq!(oscillation_index(&IndicatorSeq::new(explicit)).unwrap(), Ordinal::zero());
}

#[test]
fn l1_trees_are_certified() {
    for (alpha, order) in [("1", 3u64), ("2", 3), ("1", 2)] {
        let eps = rat(1, 2);
        let t = build_l1_tree(&seq(alpha), order, &eps, &L1TreeOptions::default()).unwrap();
        assert_eq!(wf_order(&t.tree), Ordinal::from(order));
        assert_eq!(t.branches.len(), 2usize.pow(order as u32));
        for b in &t.branches {
            let tuple: Vec<usize> = (1..=b.labels.len()).collect();
            assert_eq!(b.pairs.dead_pattern(&tuple), None);
            assert_eq!(b.certificate.lower_constant, &t.delta / rat(2, 1));
            assert!(b.certificate.min_ratio >= b.certificate.lower_constant);
            assert_eq!(b.certificate.sign_vectors_checked, 1 << order);
            assert!(b.points.iter().all(|p| seq(alpha).family.member(p)));
        }
        assert_eq!(t.predicted_index, Ordinal::from(order).half());
    }
}

#[test]
fn l1_tree_needs_the_oscillation_level() {
    let singletons = IndicatorSeq::new(FamilySpec::Singletons);
    assert!(build_l1_tree(&singletons, 1, &rat(1, 2), &L1TreeOptions::default()).is_ok());
    assert!(build_l1_tree(&singletons, 2, &rat(1, 2), &L1TreeOptions::default()).is_err());
}

#[test]
fn lavrentiev_matches_brute_chain_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let thresholds = [(rat(1, 4), rat(3, 4)), (rat(0, 1), rat(1, 1)), (rat(1, 4), rat(1, 2))];
    for case in 0..100 {
        let f = random_step_fn(&mut rng, 6);
        let (c, d) = &thresholds[case % thresholds.len()];
        let r = lavrentiev_index(&f, c, d).unwrap();
        validate_chain(&f, c, d, &r.chain).unwrap();
        let brute = lavrentiev_brute(&f, c, d).unwrap();
        assert_eq!(r.index, Ordinal::from(brute), "case {case}: {:?}", f.pieces());
    }
}

#[test]
fn lavrentiev_on_limit_points() {
    // 1 at ω, ω·2, ω·3, ω·4 and 0 elsewhere on [0, ω·4].
    let top = ord("w*4");
    let mut pieces = Vec::new();
    for k in 0..4u64 {
        let lo = Ordinal::omega().nat_mul(k);
        let hi = Ordinal::omega().nat_mul(k + 1);
        pieces.push((Interval::open(lo.clone(), hi.clone()), rat(0, 1)));
        pieces.push((Interval::point(hi), rat(1, 1)));
        if k == 0 {
            pieces.push((Interval::point(lo), rat(0, 1)));
        }
    }
    let f = StepFn::new(top, pieces).unwrap();
    let (c, d) = (rat(1, 4), rat(3, 4));
    let r = lavrentiev_index(&f, &c, &d).unwrap();
    assert_eq!(r.index, ord("2"));
    assert_eq!(lavrentiev_brute(&f, &c, &d), Some(2));

    // Each level set accumulates at a point of the other, so either chain
    // needs three steps.
    let w = |k: u64| Ordinal::omega().nat_mul(k);
    let pieces = vec![
        (Interval::closed(ord("0"), w(1)), rat(1, 2)),
        (Interval::open(w(1), w(2)), rat(0, 1)),
        (Interval::point(w(2)), rat(1, 1)),
        (Interval::open_closed(w(2), w(3)), rat(1, 2)),
        (Interval::open(w(3), ord("w^2")), rat(1, 1)),
        (Interval::point(ord("w^2")), rat(0, 1)),
    ];
    let f = StepFn::new(ord("w^2"), pieces).unwrap();
    assert_eq!(lavrentiev_index(&f, &c, &d).unwrap().index, ord("3"));
    assert_eq!(lavrentiev_brute(&f, &c, &d), Some(3));
}

#[test]
fn consistency_reports_hold() {
    let cases = [
        (IndicatorSeq::new(FamilySpec::Singletons), 4, 8),
        (seq("1"), 5, 20),
        (seq("2"), 3, 12),
    ];
    for (s, level, window) in cases {
        let r = index_consistency_report(&s, level, window).unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert_eq!(r.predicted_l1_index, r.oscillation_index.half());
    }
    let r = index_consistency_report(&seq("1"), 5, 20).unwrap();
    assert_eq!(r.entries[0].instances, 5);
    assert!(r.entries[0].witness.contains("estimate 1 "));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lavrentiev_is_monotone_in_the_gap(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_step_fn(&mut rng, 6);
        let narrow = lavrentiev_index(&f, &rat(1, 4), &rat(3, 4)).unwrap().index;
        let wide = lavrentiev_index(&f, &rat(0, 1), &rat(1, 1)).unwrap().index;
        prop_assert!(wide <= narrow);
        let one = lavrentiev_index(&f, &rat(-1, 1), &rat(2, 1)).unwrap().index;
        prop_assert_eq!(one, Ordinal::one());
    }
}
