mod common;

use std::collections::BTreeSet;

use common::oracles::all_subsets;
use schreier_core::families::{members_up_to, restrict};
use schreier_core::ordinal::ord;
use schreier_core::trees::{
    boolean_tree, branch_case, delta_order, e, is_weakly_independent, nodes_to_depth, parse_node, plus_positions,
    BranchCase, ExplicitTree, SetPairs, Sign, TreeEvaluator, TreeSeq, TreeSpec,
};
use schreier_core::{FamilySpec, FinSet, Ordinal};

fn all_nodes(len: usize) -> Vec<Vec<Sign>> {
    (0u32..1 << len)
        .map(|mask| {
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { Sign::Plus } else { Sign::Minus })
                .collect()
        })
        .collect()
}

#[test]
fn schreier_trees_are_the_family_trees() {
    for alpha in ["0", "1", "2", "3", "w", "w+1"].map(ord) {
        let tree = TreeSpec::SchreierTree(alpha.clone());
        let fam = TreeSpec::FromFamily(FamilySpec::schreier(alpha.clone()));
        let mut ev = TreeEvaluator::default();
        for len in 0..=10 {
            for z in all_nodes(len) {
                assert_eq!(ev.member(&tree, &z), ev.member(&fam, &z), "alpha={alpha} z={z:?}");
            }
        }
    }
}

#[test]
fn box_power_of_s0_bounds_the_plus_count() {
    for n in 0..4usize {
        let t = TreeSpec::BoxPower(vec![TreeSpec::SchreierTree(Ordinal::zero()); n]);
        for z in all_nodes(8) {
            let pluses = z.iter().filter(|s| **s == Sign::Plus).count();
            assert_eq!(t.contains(&z), pluses <= n, "n={n} z={z:?}");
        }
    }
}

#[test]
fn box_plus_contains_both_parts() {
    let a = TreeSpec::SchreierTree(ord("1"));
    let b = TreeSpec::SchreierTree(Ordinal::zero());
    let ab = TreeSpec::box_plus(a.clone(), b.clone());
    for z in all_nodes(7) {
        if a.contains(&z) {
            assert!(ab.contains(&z));
        }
    }
    // x = "-++" ∈ S_1, then e_3 + "+" ∈ S_0.
    assert!(ab.contains(&parse_node("-+++").unwrap()));
    assert!(!a.contains(&parse_node("-+++").unwrap()));
}

#[test]
fn tree_sum_with_custom_generator() {
    let sum = TreeSpec::TreeSum(TreeSeq::Custom(std::sync::Arc::new(|i| {
        TreeSpec::BoxPower(vec![TreeSpec::SchreierTree(Ordinal::zero()); i])
    })));
    let s1 = TreeSpec::SchreierTree(ord("1"));
    for z in all_nodes(9) {
        assert_eq!(sum.contains(&z), s1.contains(&z), "{z:?}");
    }
}

#[test]
fn weak_independence_of_adequate_trees() {
    for alpha in ["1", "2", "w"].map(ord) {
        assert!(is_weakly_independent(&TreeSpec::SchreierTree(alpha.clone()), 9, 1 << 14).unwrap());
    }
    let planted = ExplicitTree::new(["+", "+-", "+-+"].iter().map(|s| parse_node(s).unwrap())).unwrap();
    assert!(!is_weakly_independent(&TreeSpec::Explicit(planted), 3, 100).unwrap());
}

#[test]
fn branching_dichotomy() {
    let s1 = TreeSpec::SchreierTree(ord("1"));
    assert_eq!(branch_case(&s1, &e(3), 10).unwrap(), BranchCase::Always);
    // After "+" no further "+" fits anywhere.
    let s0 = TreeSpec::SchreierTree(Ordinal::zero());
    assert_eq!(branch_case(&s0, &parse_node("+").unwrap(), 10).unwrap(), BranchCase::FinitelyOften);
    // After "++" at most finitely many single additions fit.
    assert_eq!(branch_case(&s1, &parse_node("-++").unwrap(), 10).unwrap(), BranchCase::FinitelyOften);
    let odd = ExplicitTree::new(["-", "--", "--+", "-+"].iter().map(|s| parse_node(s).unwrap())).unwrap();
    assert!(branch_case(&TreeSpec::Explicit(odd), &[], 1).is_err());
}

#[test]
fn derivation_orders_of_restricted_trees() {
    for (alpha, expected) in [("0", "2"), ("1", "w+1"), ("2", "w^(2)+1"), ("w", "w^(w)+1")] {
        let s = TreeSpec::SchreierTree(ord(alpha));
        assert_eq!(delta_order(&s).unwrap(), ord(expected));
        for j in 1..5 {
            assert_eq!(delta_order(&TreeSpec::l_sub(s.clone(), j)).unwrap(), ord(expected));
        }
        let fam = TreeSpec::FromFamily(FamilySpec::schreier(ord(alpha)));
        assert_eq!(delta_order(&fam).unwrap(), ord(expected));
    }
    let succ = TreeSpec::TreeSum(TreeSeq::Powers(Box::new(TreeSpec::SchreierTree(ord("1")))));
    assert_eq!(delta_order(&succ).unwrap(), delta_order(&TreeSpec::SchreierTree(ord("2"))).unwrap());
}

#[test]
fn boolean_tree_of_supports_matches_family_nodes() {
    for alpha in ["1", "2"].map(ord) {
        let spec = FamilySpec::schreier(alpha.clone());
        let n = 7u32;
        let points = members_up_to(&spec, n, 10_000).unwrap();
        let pairs = SetPairs {
            points: points.len(),
            pairs: (1..=n)
                .map(|k| {
                    let a: BTreeSet<usize> = (0..points.len()).filter(|&p| points[p].contains(k)).collect();
                    let b: BTreeSet<usize> = (0..points.len()).filter(|p| !a.contains(p)).collect();
                    (a, b)
                })
                .collect(),
        };
        let bt = boolean_tree(&pairs, n as usize, 1 << 20).unwrap();
        let from_tree: BTreeSet<FinSet> = bt
            .tree
            .nodes()
            .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
            .map(|t| FinSet::new(t.iter().map(|&i| i as u32)).unwrap())
            .collect();
        let family_tree = TreeSpec::FromFamily(spec.clone());
        let from_family: BTreeSet<FinSet> = nodes_to_depth(&family_tree, n as usize, 1 << 20)
            .unwrap()
            .iter()
            .map(|z| plus_positions(z))
            .filter(|f| !f.is_empty())
            .collect();
        assert_eq!(from_tree, from_family, "alpha={alpha}");
    }
}

#[test]
fn adequacy_independence_and_boolean_order_on_restrictions() {
    let spec = FamilySpec::schreier(ord("1"));
    let FamilySpec::Explicit(members) = restrict(&spec, 8, 10_000).unwrap() else {
        unreachable!()
    };
    let explicit = FamilySpec::Explicit(members.clone());
    let tree = TreeSpec::FromFamily(explicit.clone());
    assert!(is_weakly_independent(&tree, 8, 1 << 14).unwrap());
    // Every subset of {1..8} outside the family has no node.
    for f in all_subsets(8) {
        let f = FinSet::from_sorted(f);
        let mut z = vec![Sign::Minus; f.max_elem().unwrap_or(0) as usize];
        for x in f.iter() {
            z[x as usize - 1] = Sign::Plus;
        }
        assert_eq!(tree.contains(&z), members.contains(&f));
    }
}

#[test]
fn depth_equivalence() {
    use schreier_core::trees::equivalent_on_depth;
    let s1 = TreeSpec::SchreierTree(ord("1"));
    assert!(equivalent_on_depth(&s1, &TreeSpec::FromFamily(FamilySpec::schreier(ord("1"))), 8));
    assert!(!equivalent_on_depth(&s1, &TreeSpec::FromFamily(FamilySpec::schreier(ord("2"))), 4));
    assert!(equivalent_on_depth(&s1, &s1, 6));
}

#[test]
fn fully_branching_stems() {
    use schreier_core::trees::has_property_fb;
    let f1 = TreeSpec::FromFamily(FamilySpec::schreier(ord("1")));
    assert!(has_property_fb(&f1, &parse_node("--+").unwrap(), 20).unwrap());
    assert!(has_property_fb(&f1, &parse_node("+-").unwrap(), 20).unwrap());
    assert!(has_property_fb(&f1, &[], 20).unwrap());
}

#[test]
fn listed_family_tree_uses_realised_patterns() {
    let members = [&[][..], &[1], &[3], &[2, 3]].map(|m| FinSet::new(m.iter().copied()).unwrap());
    let t = TreeSpec::FromFamily(FamilySpec::explicit(members));
    assert!(t.contains(&[Sign::Minus, Sign::Plus]));
    assert!(t.contains(&[Sign::Minus, Sign::Plus, Sign::Plus]));
    assert!(!t.contains(&[Sign::Minus, Sign::Plus, Sign::Minus]));
    assert!(!is_weakly_independent(&t, 3, 100).unwrap());
}
