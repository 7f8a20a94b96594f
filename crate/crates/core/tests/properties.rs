use std::collections::BTreeSet;

use proptest::prelude::*;

use ppc_core::{
    apply_rule, build_forest, classify, enumerate_compositions, enumerate_ppcs, parent_of, produce,
    Composition, Parity, PpcType, ProductionRule,
};

/// Recursive generator, independent of the gap-mask enumerator.
fn compositions_recursive(n: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions_recursive(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn ppc_set(n: u64) -> BTreeSet<Composition> {
    enumerate_ppcs(n).unwrap().collect()
}

fn arb_composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u64..=12, 1..10).prop_map(|p| Composition::new(p).unwrap())
}

/// A ppc built from a random left half, optional middle, and a parity-matched right half.
fn arb_ppc() -> impl Strategy<Value = Composition> {
    (
        prop::collection::vec((1u64..=9, 0u64..=4), 0..6),
        prop::option::of(1u64..=9),
    )
        .prop_filter_map("needs a part", |(pairs, middle)| {
            let left: Vec<u64> = pairs.iter().map(|&(a, _)| a).collect();
            let right: Vec<u64> = pairs
                .iter()
                .rev()
                .map(|&(a, k)| a % 2 + 2 * k)
                .map(|r| if r == 0 { 2 } else { r })
                .collect();
            let mut parts = left;
            parts.extend(middle);
            parts.extend(right);
            Composition::new(parts).ok()
        })
}

#[test]
fn enumerator_matches_recursive_generator() {
    for n in 1..=12 {
        let mask: BTreeSet<Vec<u64>> = enumerate_compositions(n)
            .unwrap()
            .map(Composition::into_parts)
            .collect();
        let rec: BTreeSet<Vec<u64>> = compositions_recursive(n).into_iter().collect();
        assert_eq!(mask, rec, "n = {n}");
    }
}

#[test]
fn type_c_far_end_is_odd_and_at_least_three() {
    for n in 2..=20 {
        for c in enumerate_ppcs(n).unwrap() {
            if classify(&c).unwrap() != PpcType::C {
                continue;
            }
            let far = if c.first() == 1 { c.last() } else { c.first() };
            assert!(far % 2 == 1 && far >= 3, "{c}");
        }
    }
}

#[test]
fn ppc_sets_closed_under_reversal() {
    for n in 1..=20 {
        let ppcs = ppc_set(n);
        for c in &ppcs {
            assert!(ppcs.contains(&c.reversed()), "{c}");
            assert_eq!(c.reversed().parity_word(), c.parity_word().reversed());
        }
    }
}

#[test]
fn forest_levels_equal_brute_force_sets() {
    for parity in [Parity::Even, Parity::Odd] {
        let max = if parity == Parity::Even { 20 } else { 19 };
        let levels = build_forest(parity, max).unwrap();
        for pair in levels.windows(2) {
            assert_eq!(pair[1].len(), 3 * pair[0].len());
        }
        for level in &levels {
            let members: BTreeSet<Composition> = level.members.iter().cloned().collect();
            assert_eq!(members.len(), level.len());
            assert_eq!(members, ppc_set(level.total), "total {}", level.total);
            if !level.is_seed() {
                assert_eq!(level.provenance.len(), level.len());
            }
        }
    }
}

#[test]
fn every_production_round_trips() {
    for n in 2..=14 {
        for p in enumerate_ppcs(n).unwrap() {
            for prod in produce(&p).unwrap() {
                let back = parent_of(&prod.child).unwrap();
                assert_eq!((back.parent, back.rule), (p.clone(), prod.rule));
            }
        }
    }
}

proptest! {
    #[test]
    fn ppc_iff_mirrored_sums_even(c in arb_composition()) {
        let parts = c.parts();
        let n = parts.len();
        let mirrored = (0..n).all(|i| (parts[i] + parts[n - 1 - i]) % 2 == 0);
        prop_assert_eq!(c.is_ppc(), mirrored);
    }

    #[test]
    fn parity_word_shape(c in arb_composition()) {
        let w = c.parity_word();
        prop_assert_eq!(w.len(), c.len());
        prop_assert_eq!(w.reduce(), w.clone());
        for (bit, part) in w.bits().iter().zip(c.parts()) {
            prop_assert_eq!(u64::from(*bit), part % 2);
        }
    }

    #[test]
    fn exactly_one_end_predicate_holds(c in arb_composition()) {
        let both_one = c.first() == 1 && c.last() == 1;
        let both_big = c.first() >= 2 && c.last() >= 2;
        let one_one = (c.first() == 1) != (c.last() == 1);
        prop_assert_eq!(both_one as u8 + both_big as u8 + one_one as u8, 1);
        if let Ok(ty) = classify(&c) {
            let want = if both_one { PpcType::A } else if both_big { PpcType::B } else { PpcType::C };
            prop_assert_eq!(ty, want);
        } else {
            prop_assert!(!c.is_ppc());
        }
    }

    #[test]
    fn rules_keep_ppc_and_add_two(p in arb_ppc()) {
        prop_assume!(p.total() >= 2);
        prop_assert!(p.is_ppc());
        for rule in ProductionRule::ALL {
            match apply_rule(&p, rule) {
                Ok(child) => {
                    prop_assert!(child.is_ppc());
                    prop_assert_eq!(child.total(), p.total() + 2);
                    let back = parent_of(&child).unwrap();
                    prop_assert_eq!(back.parent, p.clone());
                    prop_assert_eq!(back.rule, rule);
                }
                Err(_) => prop_assert!(!rule.applies_to(&p)),
            }
        }
    }

    #[test]
    fn compact_and_canonical_parse_alike(parts in prop::collection::vec(1u64..=9, 1..12)) {
        let c = Composition::new(parts).unwrap();
        let compact: Composition = c.compact().unwrap().parse().unwrap();
        prop_assert_eq!(&compact, &c);
        if c.len() > 1 {
            let canonical: Composition = c.canonical().parse().unwrap();
            prop_assert_eq!(canonical, c);
        }
    }

    #[test]
    fn canonical_with_trailing_comma_round_trips(c in arb_composition()) {
        let text = format!("{},", c.canonical());
        prop_assert_eq!(text.parse::<Composition>().unwrap(), c);
    }
}
