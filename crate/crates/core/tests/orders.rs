use std::cmp::Ordering;

use proptest::prelude::*;
use unionclosed::math::binom;
use unionclosed::orders::{compare, initial_segment, rank, segment_iter, successor, OrderKind};
use unionclosed::ElementSet;

const KINDS: [OrderKind; 3] = [OrderKind::Colex, OrderKind::Lex, OrderKind::MaxLex];

/// Orders straight from their definitions on the symmetric difference.
fn oracle(order: OrderKind, a: ElementSet, b: ElementSet) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    let d = a.symmetric_difference(b);
    let lex = if a.contains(d.smallest().unwrap()) { Ordering::Less } else { Ordering::Greater };
    match order {
        OrderKind::Colex => {
            if b.contains(d.largest().unwrap()) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        OrderKind::Lex => lex,
        OrderKind::MaxLex => a.largest().cmp(&b.largest()).then(lex),
    }
}

/// Every `k`-subset of `[p]`, from bitmasks.
fn all_ksets(k: u32, p: u32) -> Vec<ElementSet> {
    (0u64..1 << p)
        .filter(|b| b.count_ones() == k)
        .map(ElementSet::from_bits)
        .collect()
}

#[test]
fn segments_agree_with_sorting_by_definition() {
    for k in 1..=5 {
        for p in k..=10 {
            let mut all = all_ksets(k, p);
            for order in KINDS {
                all.sort_by(|a, b| oracle(order, *a, *b));
                let walked: Vec<ElementSet> = segment_iter(order, k, p).collect();
                assert_eq!(walked, all, "{order} k={k} p={p}");
            }
        }
    }
}

#[test]
fn unbounded_segments_up_to_two_hundred() {
    // within [p] large enough, colex and max-lex segments of N^(k) are prefixes
    for k in 2..=5u32 {
        let p = (k..).find(|&p| binom(p as u64, k as u64) >= 200).unwrap();
        let mut all = all_ksets(k, p);
        for order in [OrderKind::Colex, OrderKind::MaxLex] {
            all.sort_by(|a, b| oracle(order, *a, *b));
            for n in [1usize, 2, 7, 50, 200] {
                let seg = initial_segment(order, k, n, None).unwrap();
                assert_eq!(seg.sets(), &all[..n], "{order} k={k} n={n}");
            }
        }
    }
}

#[test]
fn singletons_in_order() {
    for order in [OrderKind::Colex, OrderKind::MaxLex] {
        let seg = initial_segment(order, 1, 64, None).unwrap();
        let labels: Vec<u32> = seg.iter().map(|s| s.smallest().unwrap()).collect();
        assert_eq!(labels, (1..=64).collect::<Vec<_>>());
    }
}

#[test]
fn maxlex_prefix_law() {
    // the first C(t,k) sets of max-lex are exactly [t]^(k)
    for k in 1..=4u32 {
        for t in k..=9 {
            let n = binom(t as u64, k as u64) as usize;
            let seg = initial_segment(OrderKind::MaxLex, k, n, None).unwrap();
            let mut got = seg.sets().to_vec();
            got.sort();
            assert_eq!(got, all_ksets(k, t));
        }
    }
}

#[test]
fn maxlex_equals_colex_for_pairs() {
    for n in 1..=150 {
        assert_eq!(
            initial_segment(OrderKind::MaxLex, 2, n, None).unwrap(),
            initial_segment(OrderKind::Colex, 2, n, None).unwrap()
        );
    }
}

#[test]
fn lex_needs_a_universe() {
    assert!(initial_segment(OrderKind::Lex, 2, 3, None).is_err());
    assert!(rank(OrderKind::Lex, ElementSet::of(&[1, 2]), None).is_err());
    assert!(initial_segment(OrderKind::Colex, 2, 11, Some(5)).is_err());
}

#[test]
fn ranks_are_positions() {
    for k in 1..=4 {
        for order in KINDS {
            for (i, s) in segment_iter(order, k, 9).enumerate() {
                assert_eq!(rank(order, s, Some(9)).unwrap(), i as u128, "{order} {s}");
            }
        }
    }
}

#[test]
fn successor_stops_at_the_end() {
    assert_eq!(successor(OrderKind::Colex, ElementSet::of(&[3, 4]), 4), None);
    assert_eq!(successor(OrderKind::Lex, ElementSet::of(&[3, 4]), 4), None);
    assert_eq!(successor(OrderKind::MaxLex, ElementSet::of(&[3, 4]), 4), None);
    assert_eq!(
        successor(OrderKind::MaxLex, ElementSet::of(&[1, 2, 4]), 9),
        Some(ElementSet::of(&[1, 3, 4]))
    );
}

fn kset(k: u32, p: u32) -> impl Strategy<Value = ElementSet> {
    proptest::sample::subsequence((1..=p).collect::<Vec<_>>(), k as usize)
        .prop_map(|v| ElementSet::of(&v))
}

proptest! {
    #[test]
    fn compare_agrees_with_oracle(pair in (1u32..=6).prop_flat_map(|k| (kset(k, 20), kset(k, 20)))) {
        let (a, b) = pair;
        for order in KINDS {
            prop_assert_eq!(compare(order, a, b).unwrap(), oracle(order, a, b));
        }
    }

    #[test]
    fn colex_is_the_integer_order(pair in (1u32..=6).prop_flat_map(|k| (kset(k, 64), kset(k, 64)))) {
        let (a, b) = pair;
        prop_assert_eq!(compare(OrderKind::Colex, a, b).unwrap(), a.bits().cmp(&b.bits()));
    }

    #[test]
    fn rank_then_walk(s in (1u32..=5).prop_flat_map(|k| kset(k, 12))) {
        for order in KINDS {
            let r = rank(order, s, Some(12)).unwrap() as usize;
            prop_assert_eq!(segment_iter(order, s.len(), 12).nth(r), Some(s));
        }
    }
}

#[test]
fn different_sizes_do_not_compare() {
    assert!(compare(OrderKind::Lex, ElementSet::of(&[1]), ElementSet::of(&[1, 2])).is_err());
}
