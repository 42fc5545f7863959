use std::collections::{BTreeSet, HashSet};

use unionclosed::closure::close_count;
use unionclosed::constructions::{colex_segment, theorem2_values};
use unionclosed::math::binom;
use unionclosed::orders::{segment_iter, OrderKind};
use unionclosed::search::{f_min, Pruning, SearchConfig, UpperBoundSeed};
use unionclosed::setcore::{canonical_code, ElementSet};

/// Minimum closure size and optimal classes over every family of `n`
/// distinct `k`-subsets of `[g]`, by plain enumeration.
fn naive(n: usize, k: u32, g: u32) -> (usize, BTreeSet<Vec<ElementSet>>) {
    let all: Vec<ElementSet> = segment_iter(OrderKind::Colex, k, g).collect();
    let mut best = usize::MAX;
    let mut classes = BTreeSet::new();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let sets: Vec<ElementSet> = pick.iter().map(|&i| all[i]).collect();
        let unions: HashSet<u64> = (1u64..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).fold(0, |a, i| a | sets[i].bits()))
            .collect();
        let size = unions.len();
        if size < best {
            best = size;
            classes.clear();
        }
        if size == best {
            classes.insert(canonical_code(&sets));
        }
        // next n-combination of indices
        let Some(i) = (0..n).rev().find(|&i| pick[i] < all.len() - n + i) else { break };
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
    (best, classes)
}

fn codes(out: &unionclosed::search::SearchOutcome) -> BTreeSet<Vec<ElementSet>> {
    out.witnesses.iter().map(|w| w.code().to_vec()).collect()
}

#[test]
fn agrees_with_naive_enumeration_on_five_points() {
    for k in 1..=3u32 {
        for n in 1..=6usize {
            if binom(5, k as u64) < n as u128 {
                continue;
            }
            let (best, classes) = naive(n, k, 5);
            let capped = f_min(&SearchConfig::new(n, k).with_ground_cap(5)).unwrap();
            assert!(capped.complete);
            assert_eq!(capped.minimum, Some(best as u64), "k={k} n={n}");
            assert_eq!(codes(&capped), classes, "k={k} n={n}");
            let free = f_min(&SearchConfig::new(n, k)).unwrap();
            assert_eq!(free.minimum, Some(best as u64), "uncapped k={k} n={n}");
        }
    }
}

#[test]
fn witnesses_reproduce_the_minimum() {
    for (n, k) in [(3, 2), (5, 2), (8, 2), (4, 3), (6, 3), (3, 4)] {
        let out = f_min(&SearchConfig::new(n, k)).unwrap();
        assert!(!out.witnesses.is_empty());
        for w in &out.witnesses {
            let f = w.family();
            assert_eq!(f.len(), n);
            assert_eq!(f.k(), k);
            assert_eq!(close_count(f).unwrap() as u64, out.minimum.unwrap());
        }
    }
}

#[test]
fn each_pruning_rule_is_sound() {
    let rules: [fn(&mut Pruning); 5] = [
        |p| p.bound = false,
        |p| p.lemma3 = false,
        |p| p.pair_ground_cap = false,
        |p| p.canonicity = false,
        |p| p.canonicity_interval = 3,
    ];
    for (n, k) in [(4, 2), (6, 2), (7, 2), (4, 3), (5, 3)] {
        let full = f_min(&SearchConfig::new(n, k)).unwrap();
        for rule in rules {
            let mut pruning = Pruning::ALL;
            rule(&mut pruning);
            let out = f_min(&SearchConfig::new(n, k).with_pruning(pruning)).unwrap();
            assert_eq!(out.minimum, full.minimum, "n={n} k={k} {pruning:?}");
            assert_eq!(out.witnesses, full.witnesses, "n={n} k={k} {pruning:?}");
        }
    }
}

#[test]
fn pair_minimum_follows_the_formula() {
    for n in 1..=10usize {
        let out = f_min(&SearchConfig::new(n, 2)).unwrap();
        assert!(out.complete);
        let v = theorem2_values(n as u64).unwrap();
        assert_eq!(out.minimum.map(u128::from), v.f, "n={n}");
        let colex = canonical_code(colex_segment(2, n).unwrap().family.sets());
        assert!(codes(&out).contains(&colex), "n={n}");
    }
}

#[test]
fn two_edges_have_two_optimal_shapes() {
    let out = f_min(&SearchConfig::new(2, 2)).unwrap();
    let want: BTreeSet<Vec<ElementSet>> = [
        vec![ElementSet::of(&[1, 2]), ElementSet::of(&[1, 3])],
        vec![ElementSet::of(&[1, 2]), ElementSet::of(&[3, 4])],
    ]
    .into_iter()
    .collect();
    assert_eq!(codes(&out), want);
}

#[test]
fn parallel_matches_serial() {
    for (n, k) in [(8, 2), (6, 3)] {
        let serial = f_min(&SearchConfig::new(n, k)).unwrap();
        let parallel = f_min(&SearchConfig::new(n, k).with_workers(4)).unwrap();
        assert_eq!(serial.minimum, parallel.minimum);
        assert_eq!(serial.witnesses, parallel.witnesses);
    }
}

#[test]
fn seeds() {
    let none = f_min(&SearchConfig::new(6, 3).with_seed(UpperBoundSeed::None)).unwrap();
    let colex = f_min(&SearchConfig::new(6, 3).with_seed(UpperBoundSeed::ColexSegment)).unwrap();
    let exact = f_min(&SearchConfig::new(6, 3).with_seed(UpperBoundSeed::Explicit(11))).unwrap();
    assert_eq!(none.minimum, Some(11));
    assert_eq!(colex.minimum, Some(11));
    assert_eq!(exact.witnesses, none.witnesses);
    // a seed below the optimum leaves nothing to report
    let low = f_min(&SearchConfig::new(6, 3).with_seed(UpperBoundSeed::Explicit(10))).unwrap();
    assert!(low.complete);
    assert_eq!(low.minimum, None);
}

#[test]
fn budget_marks_the_outcome_incomplete() {
    let out = f_min(&SearchConfig::new(7, 3).with_pruning(Pruning::NONE).with_budget(500)).unwrap();
    assert!(!out.complete);
}

#[test]
fn checkpoint_resume_matches_an_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.ckpt");
    let base = SearchConfig::new(5, 3).with_pruning(Pruning::NONE).with_checkpoint(&path);
    let straight = f_min(&SearchConfig::new(5, 3).with_pruning(Pruning::NONE)).unwrap();
    assert!(straight.complete);

    let first = f_min(&base.clone().with_budget(1000)).unwrap();
    assert!(!first.complete);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("config n=5 k=3")));

    let resumed = f_min(&base).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.minimum, straight.minimum);
    assert_eq!(resumed.witnesses, straight.witnesses);
    assert_eq!(resumed.witness_count, straight.witness_count);
}

#[test]
fn repeated_budgeted_runs_finish() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.ckpt");
    let config = SearchConfig::new(5, 3)
        .with_pruning(Pruning::NONE)
        .with_checkpoint(&path)
        .with_budget(5_000);
    let straight = f_min(&SearchConfig::new(5, 3).with_pruning(Pruning::NONE)).unwrap();
    let mut rounds = 0;
    let out = loop {
        let out = f_min(&config).unwrap();
        rounds += 1;
        if out.complete {
            break out;
        }
        assert!(rounds < 1000, "no progress");
    };
    assert!(rounds > 1);
    assert_eq!(out.minimum, straight.minimum);
    assert_eq!(out.witnesses, straight.witnesses);
}

#[test]
fn resume_refuses_a_different_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.ckpt");
    f_min(&SearchConfig::new(5, 3).with_checkpoint(&path).with_budget(100)).unwrap();
    let err = f_min(&SearchConfig::new(6, 3).with_checkpoint(&path)).unwrap_err();
    assert!(err.to_string().contains("n: checkpoint 5, requested 6"), "{err}");
}

#[test]
fn empty_checkpoint_starts_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.ckpt");
    std::fs::write(&path, "").unwrap();
    let out = f_min(&SearchConfig::new(4, 3).with_checkpoint(&path)).unwrap();
    assert_eq!(out.minimum, Some(5));
    // a finished checkpoint replays without new work
    let again = f_min(&SearchConfig::new(4, 3).with_checkpoint(&path)).unwrap();
    assert_eq!(again.minimum, Some(5));
    assert_eq!(again.witnesses, out.witnesses);
}

#[test]
fn configuration_errors() {
    assert!(f_min(&SearchConfig::new(0, 3)).is_err());
    assert!(f_min(&SearchConfig::new(3, 0)).is_err());
    assert!(f_min(&SearchConfig::new(11, 3).with_ground_cap(5)).is_err());
    assert!(f_min(&SearchConfig::new(3, 2).with_ground_cap(65)).is_err());
}
