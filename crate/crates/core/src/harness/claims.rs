use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::{timed, Report, Status};
use crate::closure::{close_count, closure_contains};
use crate::constructions::{
    all_ksets, colex_segment, counterexample_pair, maxlex_segment, minus_construction,
    plus_construction, theorem2_values, up_set_size,
};
use crate::math::binom;
use crate::search::{f_min, for_each_class, Pruning, SearchConfig, SearchOutcome};
use crate::setcore::{canonical_code, ElementSet, Family};

fn family_json(family: &Family) -> Value {
    json!(family.to_text())
}

fn witnesses_json(outcome: &SearchOutcome) -> Value {
    outcome
        .witnesses
        .iter()
        .map(|w| family_json(w.family()))
        .collect()
}

fn same_class(a: &Family, b: &Family) -> bool {
    a.len() == b.len() && canonical_code(a.sets()) == canonical_code(b.sets())
}

fn search(n: usize, k: u32, workers: usize) -> Result<SearchOutcome, String> {
    f_min(&SearchConfig::new(n, k).with_workers(workers)).map_err(|e| e.to_string())
}

/// Fills in the fields common to every search-backed report; false if the
/// search failed or did not finish.
fn record_search(report: &mut Report, result: &Result<SearchOutcome, String>) -> bool {
    match result {
        Err(e) => {
            report.note(format!("search failed: {e}"));
            report.set_status(Status::Fail);
            false
        }
        Ok(out) if !out.complete => {
            report.note("search incomplete");
            report.set_status(Status::Incomplete);
            false
        }
        Ok(_) => true,
    }
}

/// `<[4]^(3) ∪ {125, 135, 145}>` has 12 members, the colex segment of the
/// same length 13.
pub fn check_counterexample() -> Report {
    timed("counterexample", json!({}), |r| {
        let (a, b) = counterexample_pair();
        let size_a = close_count(&a).expect("nonempty");
        let size_b = close_count(&b).expect("nonempty");
        let perturbed = Family::of(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 3, 4],
            &[2, 3, 4],
            &[1, 2, 5],
            &[1, 3, 5],
            &[2, 3, 5],
        ]);
        let size_perturbed = close_count(&perturbed).expect("nonempty");
        let five_in_b = closure_contains(&b, ElementSet::of(&[5]));
        r.expected = json!({ "pair": [12, 13], "perturbed_is_not": 12, "singleton_5_in_colex": false });
        r.computed = json!({
            "pair": [size_a, size_b],
            "perturbed": size_perturbed,
            "singleton_5_in_colex": five_in_b,
        });
        r.note("negative control: [4]^(3) ∪ {125,135,235}");
        r.verdict(size_a == 12 && size_b == 13 && size_perturbed != 12 && !five_in_b);
    })
}

/// `f(n, 2)` by search against `2^t - 2^{C(t,2)-n} - t`, with the shape of
/// the optimal families.
pub fn check_theorem2(n_max: usize, workers: usize) -> Vec<Report> {
    (1..=n_max)
        .map(|n| {
            timed("theorem2", json!({ "n": n, "k": 2 }), |r| {
                let values = theorem2_values(n as u64).expect("n >= 1");
                r.expected = json!({ "f": values.f.map(|f| f as u64), "t": values.t, "r": values.r });
                let result = search(n, 2, workers);
                if !record_search(r, &result) {
                    return;
                }
                let out = result.expect("checked");
                let colex = colex_segment(2, n).expect("n >= 1").family;
                let colex_class = out.witnesses.iter().any(|w| same_class(w.family(), &colex));
                let unique = out.witness_count == 1;
                // on ground [t] the missing edges must form a star
                let stars = out
                    .witnesses
                    .iter()
                    .filter(|w| w.family().ground().len() == values.t)
                    .all(|w| complement_is_star(w.family(), values.t));
                r.computed = json!({
                    "f": out.minimum,
                    "witness_classes": out.witness_count,
                    "colex_class_optimal": colex_class,
                    "complements_are_stars": stars,
                    "witnesses": witnesses_json(&out),
                    "nodes": out.nodes_explored,
                });
                if !unique {
                    r.note(format!("{} optimal classes: uniqueness does not hold here", out.witness_count));
                }
                let ok = out.minimum.map(u128::from) == values.f && colex_class && stars;
                r.verdict(ok);
            })
        })
        .collect()
}

fn complement_is_star(family: &Family, t: u32) -> bool {
    let missing: Vec<ElementSet> = crate::orders::segment_iter(crate::orders::OrderKind::Colex, 2, t)
        .filter(|e| !family.contains(*e))
        .collect();
    match missing.split_first() {
        None => true,
        Some((first, rest)) => {
            let common = rest.iter().fold(*first, |acc, e| acc & *e);
            !common.is_empty()
        }
    }
}

/// `f(C(t,k), k)` against `|[t]^(>=k)|`.
pub fn check_conjecture7(k: u32, t: u32, workers: usize) -> Report {
    timed("conj7", json!({ "k": k, "t": t }), |r| {
        let (expected, target) = match (up_set_size(t, k), all_ksets(t, k)) {
            (Ok(e), Ok(f)) => (e, f),
            (Err(e), _) | (_, Err(e)) => {
                r.note(e.to_string());
                return;
            }
        };
        r.expected = json!(expected as u64);
        let result = search(target.len(), k, workers);
        if !record_search(r, &result) {
            return;
        }
        let out = result.expect("checked");
        let full_class = out.witnesses.iter().any(|w| same_class(w.family(), &target));
        r.computed = json!({
            "f": out.minimum,
            "all_ksets_optimal": full_class,
            "witness_classes": out.witness_count,
            "witnesses": witnesses_json(&out),
        });
        match out.minimum {
            Some(m) if (m as u128) < expected => {
                r.reproducer = Some(witnesses_json(&out));
                r.set_status(Status::RefutedWithWitness);
            }
            Some(m) => r.verdict(m as u128 == expected && full_class),
            None => r.verdict(false),
        }
    })
}

/// `|<max-lex segment>|` against `f(n, k)` for every `n <= n_max`.
pub fn check_conjecture8(k: u32, n_max: usize, workers: usize) -> Vec<Report> {
    (1..=n_max)
        .map(|n| {
            timed("conj8", json!({ "k": k, "n": n }), |r| {
                let seg = match maxlex_segment(k, n) {
                    Ok(c) => c.family,
                    Err(e) => {
                        r.note(e.to_string());
                        return;
                    }
                };
                let expected = close_count(&seg).expect("n >= 1") as u64;
                r.expected = json!(expected);
                if k <= 2 {
                    let colex = colex_segment(k, n).expect("valid").family;
                    r.note(format!("max-lex segment equals colex segment: {}", colex == seg));
                }
                let result = search(n, k, workers);
                if !record_search(r, &result) {
                    return;
                }
                let out = result.expect("checked");
                r.computed = json!({
                    "f": out.minimum,
                    "maxlex_segment": family_json(&seg),
                    "witness_classes": out.witness_count,
                    "witnesses": witnesses_json(&out),
                });
                match out.minimum {
                    Some(m) if m < expected => {
                        r.reproducer = Some(witnesses_json(&out));
                        r.set_status(Status::RefutedWithWitness);
                    }
                    Some(m) => r.verdict(m == expected),
                    None => r.verdict(false),
                }
            })
        })
        .collect()
}

/// Number of `(k+1)`-sets with at least `k` of their `k`-subsets in `sets`.
///
/// Such a set is the union of two members (`k >= 2`), so only pairwise
/// unions of size `k+1` are examined.
pub fn b_x(sets: &[ElementSet], k: u32) -> usize {
    assert!(k >= 2, "b_X is defined here for k >= 2");
    let members: BTreeSet<ElementSet> = sets.iter().copied().collect();
    let mut tops = BTreeSet::new();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            let u = *a | *b;
            if u.len() == k + 1 {
                tops.insert(u);
            }
        }
    }
    tops.into_iter()
        .filter(|y| members.iter().filter(|m| m.is_subset(*y)).count() >= k as usize)
        .count()
}

/// `l >= b_X·k - C(b_X, 2)` over every class of `l < C(k+1, 2)` sets.
pub fn check_prop9(k: u32) -> Report {
    check_prop9_with_cap(k, 2 * k + 3, k <= 3)
}

/// As [`check_prop9`] with an explicit ground cap; `confirm` re-runs at
/// `cap + 1` and compares verdicts.
pub fn check_prop9_with_cap(k: u32, cap: u32, confirm: bool) -> Report {
    timed("prop9", json!({ "k": k, "ground_cap": cap }), |r| {
        r.expected = json!({ "violations": 0 });
        if !(2..=4).contains(&k) {
            r.note("k must lie in 2..=4");
            return;
        }
        let first = prop9_scan(k, cap);
        r.computed = first.to_json();
        if let Some(bad) = &first.example {
            r.reproducer = Some(json!(bad));
        }
        let mut ok = first.violations == 0;
        if confirm {
            let second = prop9_scan(k, cap + 1);
            r.note(format!(
                "re-run at ground cap {}: {} violations over {} classes",
                cap + 1,
                second.violations,
                second.classes.values().sum::<usize>()
            ));
            ok &= second.violations == first.violations;
        }
        r.verdict(ok);
    })
}

struct Prop9Scan {
    classes: BTreeMap<usize, usize>,
    tight: usize,
    violations: usize,
    example: Option<String>,
}

impl Prop9Scan {
    fn to_json(&self) -> Value {
        json!({
            "classes_per_l": self.classes,
            "tight_classes": self.tight,
            "violations": self.violations,
        })
    }
}

fn prop9_scan(k: u32, cap: u32) -> Prop9Scan {
    let mut scan = Prop9Scan {
        classes: BTreeMap::new(),
        tight: 0,
        violations: 0,
        example: None,
    };
    let limit = binom(k as u64 + 1, 2) as usize;
    for l in 0..limit {
        let mut count = 0;
        for_each_class(l, k, cap, |sets| {
            count += 1;
            let b = b_x(sets, k) as i64;
            let need = b * k as i64 - b * (b - 1) / 2;
            if (l as i64) < need {
                scan.violations += 1;
                if scan.example.is_none() {
                    scan.example = Some(sets.iter().map(|s| s.to_line()).collect::<Vec<_>>().join("\n"));
                }
            } else if l as i64 == need {
                scan.tight += 1;
            }
        });
        scan.classes.insert(l, count);
    }
    scan
}

/// Predicted against actual closure sizes for both constructions over
/// `t <= t_max`, `2 <= k <= k_max` and every admissible `l`.
pub fn check_constructions(t_max: u32, k_max: u32) -> Report {
    timed("constructions", json!({ "t_max": t_max, "k_max": k_max }), |r| {
        r.expected = json!({ "mismatches": 0 });
        let mut cases = Vec::new();
        let mut mismatches = Vec::new();
        let mut checked = 0usize;
        for k in 2..=k_max {
            let l_limit = binom(k as u64 + 1, 2) as usize;
            for l in 0..l_limit {
                let rows: Vec<(u32, bool)> = (k..=t_max)
                    .filter_map(|t| minus_construction(t, k, l).ok())
                    .map(|c| (c.t.expect("has t"), compare(&c, &mut mismatches)))
                    .collect();
                checked += rows.len();
                cases.push(case_json("minus", k, l, &rows));
            }
            for l in 1..=(t_max + 2).saturating_sub(k) as usize {
                let rows: Vec<(u32, bool)> = (k..=t_max)
                    .filter_map(|t| plus_construction(t, k, l).ok())
                    .map(|c| (c.t.expect("has t"), compare(&c, &mut mismatches)))
                    .collect();
                if !rows.is_empty() {
                    checked += rows.len();
                    cases.push(case_json("plus", k, l, &rows));
                }
            }
        }
        r.computed = json!({ "checked": checked, "mismatches": mismatches.len(), "cases": cases });
        if !mismatches.is_empty() {
            r.reproducer = Some(json!(mismatches));
        }
        r.verdict(mismatches.is_empty());
    })
}

fn compare(c: &crate::constructions::Construction, mismatches: &mut Vec<Value>) -> bool {
    let actual = close_count(&c.family).expect("nonempty") as u128;
    let ok = c.predicted_size == Some(actual);
    if !ok {
        mismatches.push(json!({
            "kind": c.kind,
            "t": c.t,
            "k": c.k,
            "l": c.l,
            "predicted": c.predicted_size.map(|p| p as u64),
            "actual": actual as u64,
            "family": family_json(&c.family),
        }));
    }
    ok
}

/// Least `t` from which every checked `t` agrees.
fn case_json(kind: &str, k: u32, l: usize, rows: &[(u32, bool)]) -> Value {
    let safe_t = rows
        .iter()
        .rev()
        .take_while(|(_, ok)| *ok)
        .last()
        .map(|(t, _)| *t);
    json!({
        "kind": kind,
        "k": k,
        "l": l,
        "t_checked": rows.iter().map(|(t, _)| t).collect::<Vec<_>>(),
        "safe_t": safe_t,
    })
}

/// Search with every pruning rule off against search with all of them on.
pub fn check_search_oracle(k_max: u32, n_max: usize) -> Report {
    timed("oracle", json!({ "k_max": k_max, "n_max": n_max }), |r| {
        let mut rows = Vec::new();
        let mut ok = true;
        for k in 1..=k_max {
            for n in 1..=n_max {
                let plain = f_min(&SearchConfig::new(n, k).with_pruning(Pruning::NONE));
                let pruned = f_min(&SearchConfig::new(n, k));
                let row = match (plain, pruned) {
                    (Ok(a), Ok(b)) => {
                        let same = a.complete
                            && b.complete
                            && a.minimum == b.minimum
                            && a.witnesses == b.witnesses
                            && a.witness_count == b.witness_count;
                        ok &= same;
                        json!({
                            "k": k, "n": n,
                            "unpruned": a.minimum, "pruned": b.minimum,
                            "unpruned_nodes": a.nodes_explored, "pruned_nodes": b.nodes_explored,
                            "witnesses_agree": a.witnesses == b.witnesses,
                        })
                    }
                    (a, b) => {
                        ok = false;
                        json!({ "k": k, "n": n, "error": format!("{:?} / {:?}", a.err(), b.err()) })
                    }
                };
                rows.push(row);
            }
        }
        r.expected = json!("unpruned minimum and witnesses equal pruned ones");
        r.computed = json!(rows);
        r.verdict(ok);
    })
}
