use std::collections::BTreeSet;

use proptest::prelude::*;
use unionclosed::closure::{
    blockers, close, close_count, closure_contains, distinguishing_set, extend_count,
    projects_onto_all,
};
use unionclosed::{ElementSet, Family};

/// Unions of every nonempty subfamily.
fn all_unions(family: &Family) -> BTreeSet<ElementSet> {
    let sets = family.sets();
    (1u64..1 << sets.len())
        .map(|mask| {
            (0..sets.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(ElementSet::EMPTY, |acc, i| acc | sets[i])
        })
        .collect()
}

/// Families of distinct k-sets on `[g]`, `g <= 12`, at most 12 sets.
fn family(max_sets: usize) -> impl Strategy<Value = Family> {
    (1u32..=4, 4u32..=12).prop_flat_map(move |(k, g)| {
        let sets = proptest::collection::btree_set(
            proptest::sample::subsequence((1..=g).collect::<Vec<_>>(), k as usize),
            1..=max_sets,
        );
        sets.prop_map(move |v| {
            Family::new(k, v.into_iter().map(|l| ElementSet::of(&l)).collect()).unwrap()
        })
    })
}

#[test]
fn examples() {
    let path = Family::of(&[&[1, 2], &[2, 3], &[3, 4]]);
    let c = close(&path).unwrap();
    assert_eq!(c.len(), 6);
    assert!(c.contains(ElementSet::of(&[1, 2, 3, 4])));
    assert!(!c.contains(ElementSet::of(&[1, 2, 4])));
    assert_eq!(close_count(&Family::of(&[&[1, 2]])).unwrap(), 1);
    assert!(close(&Family::new(2, vec![]).unwrap()).is_err());
}

#[test]
fn blocker_examples() {
    let f = Family::of(&[&[1, 2]]);
    assert_eq!(blockers(&f, 1, None).unwrap().len(), 0);
    let f = Family::of(&[&[1, 2], &[3, 4]]);
    let b = blockers(&f, 1, None).unwrap();
    let got: BTreeSet<ElementSet> = b.members.iter().copied().collect();
    let want: BTreeSet<ElementSet> = [&[1, 3][..], &[1, 4], &[1, 3, 4]].iter().map(|s| ElementSet::of(s)).collect();
    assert_eq!(got, want);
    assert!(blockers(&f, 9, None).is_err());
}

#[test]
fn extension_examples() {
    let one = [ElementSet::of(&[1])];
    assert_eq!(extend_count(&one, ElementSet::of(&[2])).unwrap(), 2);
    let h = [ElementSet::of(&[1]), ElementSet::of(&[2]), ElementSet::of(&[1, 2])];
    assert_eq!(extend_count(&h, ElementSet::of(&[3])).unwrap(), 6);
    assert!(extend_count(&h, ElementSet::of(&[1])).is_err());
    // |A| = 1 doubles any family
    for m in 1..=16u64 {
        let h: Vec<ElementSet> = (1..=m).map(ElementSet::from_bits).collect();
        assert_eq!(extend_count(&h, ElementSet::of(&[20])).unwrap(), 2 * m as usize);
    }
}

#[test]
fn distinguishing_examples() {
    let f = Family::of(&[&[1, 2], &[3, 4]]);
    let s = distinguishing_set(&f, 2).unwrap();
    assert_eq!(s.len(), 2);
    assert!(projects_onto_all(&f, s));
    assert!(distinguishing_set(&f, 3).is_err());
}

proptest! {
    #[test]
    fn closure_is_all_subfamily_unions(f in family(10)) {
        let got: BTreeSet<ElementSet> = close(&f).unwrap().members().iter().copied().collect();
        prop_assert_eq!(got, all_unions(&f));
    }

    #[test]
    fn membership_oracle_agrees(f in family(12)) {
        let c = close(&f).unwrap();
        for s in f.ground().subsets() {
            prop_assert_eq!(closure_contains(&f, s), c.contains(s), "{}", s);
        }
    }

    #[test]
    fn idempotent_and_contains_generators(f in family(12)) {
        let c = close(&f).unwrap();
        for g in f.iter() {
            prop_assert!(c.contains(*g));
        }
        let again = unionclosed::closure::closure_sets(c.members());
        prop_assert_eq!(again.len(), c.len());
        for (i, a) in c.members().iter().enumerate() {
            for b in &c.members()[i..] {
                prop_assert!(c.contains(*a | *b));
            }
        }
    }

    #[test]
    fn monotone(f in family(12), keep in any::<u16>()) {
        let sub: Vec<ElementSet> = f.iter().enumerate().filter(|(i, _)| keep >> i & 1 == 1).map(|(_, s)| *s).collect();
        prop_assume!(!sub.is_empty());
        let small = close(&Family::new(f.k(), sub).unwrap()).unwrap();
        let big = close(&f).unwrap();
        prop_assert!(small.members().iter().all(|s| big.contains(*s)));
    }

    #[test]
    fn relabeling_keeps_the_size(f in family(12), perm in Just((1..=12u32).collect::<Vec<_>>()).prop_shuffle()) {
        let mut map = vec![0u32];
        map.extend(perm);
        let g = f.relabel(&map).unwrap();
        prop_assert_eq!(close_count(&g).unwrap(), close_count(&f).unwrap());
    }

    #[test]
    fn ground_size_forces_many_unions(f in family(12)) {
        let s = f.ground().len() / f.k();
        prop_assert!(close_count(&f).unwrap() as u64 + 1 >= 1 << s);
        let d = distinguishing_set(&f, s).unwrap();
        prop_assert_eq!(d.len(), s);
        prop_assert!(projects_onto_all(&f, d));
        // checked against the closure itself
        let traces: BTreeSet<ElementSet> = close(&f).unwrap().members().iter().map(|b| *b & d).collect();
        prop_assert!(d.subsets().skip(1).all(|x| traces.contains(&x)));
    }

    #[test]
    fn blockers_match_definition(f in family(12)) {
        let x = f.ground().smallest().unwrap();
        let through: Vec<ElementSet> = f.iter().copied().filter(|a| a.contains(x)).collect();
        let want = f.ground().subsets()
            .filter(|a| a.contains(x) && a.len() >= f.k())
            .filter(|a| !through.iter().any(|g| g.is_subset(*a)))
            .count();
        prop_assert_eq!(blockers(&f, x, None).unwrap().len(), want);
        // no blocker lies in the closure
        let c = close(&f).unwrap();
        prop_assert!(blockers(&f, x, None).unwrap().members.iter().all(|b| !c.contains(*b)));
    }
}
