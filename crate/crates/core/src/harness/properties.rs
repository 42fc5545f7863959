use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{timed, Report};
use crate::closure::{blockers, close_count, distinguishing_set, meets_extension_bound, projects_onto_all};
use crate::math::binom;
use crate::orders::{segment_iter, OrderKind};
use crate::setcore::{union_all, ElementSet, Family};
use crate::shadows::{kk_min_upper_shadow, upper_shadow, UniformFamily};

/// Largest ground set the randomized trials draw from.
const GROUND_LIMIT: u32 = 12;

/// `count` distinct random `r`-subsets of `universe`.
fn random_sets(rng: &mut ChaCha8Rng, universe: &[u32], r: u32, count: usize) -> Vec<ElementSet> {
    let all: Vec<ElementSet> = segment_iter(OrderKind::Colex, r, universe.len() as u32)
        .map(|s| s.iter().map(|i| universe[i as usize - 1]).fold(ElementSet::EMPTY, |a, x| a.with(x).expect("label")))
        .collect();
    let count = count.min(all.len());
    sample(rng, all.len(), count).into_iter().map(|i| all[i]).collect()
}

fn random_family(rng: &mut ChaCha8Rng, k: u32, g: u32) -> Family {
    let cap = binom(g as u64, k as u64).min(40) as usize;
    let n = rng.random_range(1..=cap);
    let universe: Vec<u32> = (1..=g).collect();
    Family::new(k, random_sets(rng, &universe, k, n)).expect("distinct k-sets")
}

fn text(family: &Family) -> Value {
    json!(family.to_text())
}

/// Closure-size, blocker and extension properties over seeded random families.
pub fn check_lemma_properties(trials: usize, seed: u64) -> Vec<Report> {
    vec![lemma3(trials, seed), lemma4(trials, seed), lemma5(trials, seed)]
}

/// `|G| >= s·k` forces `|<A>| >= 2^s - 1`, and the distinguishing set found
/// has size `s` with every nonempty subset realized as a trace.
fn lemma3(trials: usize, seed: u64) -> Report {
    timed("lemma3", json!({ "trials": trials, "seed": seed }), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut violations = Vec::new();
        for trial in 0..trials {
            let k = rng.random_range(1..=4);
            let g = rng.random_range(k..=GROUND_LIMIT);
            let family = random_family(&mut rng, k, g);
            let s = family.ground().len() / k;
            let size = close_count(&family).expect("nonempty");
            let bound_ok = size as u64 + 1 >= 1u64 << s;
            let witness_ok = distinguishing_set(&family, s)
                .is_ok_and(|set| set.len() == s && projects_onto_all(&family, set));
            if !(bound_ok && witness_ok) {
                violations.push(json!({ "trial": trial, "s": s, "closure": size, "family": text(&family) }));
            }
        }
        r.expected = json!({ "violations": 0 });
        r.computed = json!({ "violations": violations.len() });
        if let Some(first) = violations.first() {
            r.reproducer = Some(first.clone());
        }
        r.verdict(violations.is_empty());
    })
}

/// `d_x >= s·C(|G|, k-2)` forces `|A_x| <= 2^{|G|-s}`.
fn lemma4(trials: usize, seed: u64) -> Report {
    timed("lemma4", json!({ "trials": trials, "seed": seed }), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4444);
        let mut violations = Vec::new();
        let mut done = 0;
        let mut tight = 0;
        while done < trials {
            let k = rng.random_range(2..=4);
            let g = rng.random_range(k + 1..=GROUND_LIMIT);
            let unit = binom(g as u64, k as u64 - 2) as usize;
            let through = binom(g as u64 - 1, k as u64 - 1) as usize;
            if unit > through {
                continue;
            }
            // sets through x = 1 first, enough of them for some s >= 1
            let s_target = rng.random_range(1..=through / unit);
            let d = rng.random_range(s_target * unit..=through.min((s_target + 1) * unit));
            let others: Vec<u32> = (2..=g).collect();
            let mut sets: Vec<ElementSet> = random_sets(&mut rng, &others, k - 1, d)
                .into_iter()
                .map(|b| b.with(1).expect("label"))
                .collect();
            let extra = rng.random_range(0..=8);
            sets.extend(random_sets(&mut rng, &others, k, extra));
            let family = Family::new(k, sets).expect("distinct k-sets");
            let ground = family.ground().len();
            let dx = family.degree(1).expect("1 in ground");
            let s = (dx / binom(ground as u64, k as u64 - 2) as usize) as u32;
            let count = blockers(&family, 1, None).expect("1 in ground").len();
            let bound = 1usize << (ground - s.min(ground));
            if count > bound {
                violations.push(json!({ "s": s, "d_x": dx, "blockers": count, "family": text(&family) }));
            } else if count == bound {
                tight += 1;
            }
            done += 1;
        }
        r.expected = json!({ "violations": 0 });
        r.computed = json!({ "violations": violations.len(), "tight": tight });
        if let Some(first) = violations.first() {
            r.reproducer = Some(first.clone());
        }
        r.note("k = 1 is skipped: C(|G|, -1) = 0 makes the hypothesis hold for every s");
        r.verdict(violations.is_empty());
    })
}

/// Adding a set `A` that leaves the union of `H` multiplies `|H|` by at
/// least `1 + 2^{1-|A|}`.
fn lemma5(trials: usize, seed: u64) -> Report {
    timed("lemma5", json!({ "trials": trials, "seed": seed }), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5555);
        let mut violations = Vec::new();
        let mut tight = 0;
        for _ in 0..trials {
            let inner = rng.random_range(1..GROUND_LIMIT);
            let h_len = rng.random_range(1..=48);
            let h: HashSet<ElementSet> = (0..h_len)
                .map(|_| ElementSet::from_bits(rng.random_range(1..1u64 << inner)))
                .collect();
            let cover = union_all(h.iter());
            let mut a = ElementSet::from_bits(rng.random_range(0..1u64 << GROUND_LIMIT));
            let outside = rng.random_range(inner + 1..=GROUND_LIMIT);
            a = a.with(outside).expect("label");
            debug_assert!(!a.is_subset(cover));
            let mut all = h.clone();
            all.extend(h.iter().map(|&s| s | a));
            if !meets_extension_bound(all.len(), h.len(), a.len()) {
                violations.push(json!({
                    "h": h.iter().map(|s| s.to_line()).collect::<Vec<_>>(),
                    "a": a.to_line(),
                    "count": all.len(),
                }));
            } else if !meets_extension_bound(all.len() - 1, h.len(), a.len()) {
                tight += 1;
            }
        }
        r.expected = json!({ "violations": 0 });
        r.computed = json!({ "violations": violations.len(), "tight": tight });
        if let Some(first) = violations.first() {
            r.reproducer = Some(first.clone());
        }
        r.verdict(violations.is_empty());
    })
}

/// Random families in `[p]^(r)` never have a smaller upper shadow than the
/// lex segment of the same size, which meets the minimum and whose shadow
/// is again a lex segment.
pub fn check_kruskal_katona(trials: usize, seed: u64) -> Report {
    timed("kk", json!({ "trials": trials, "seed": seed }), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6b);
        let mut violations = Vec::new();
        let mut tight = 0;
        for _ in 0..trials {
            let p = rng.random_range(2..=10u32);
            let rr = rng.random_range(1..=(p - 1).min(4));
            let total = binom(p as u64, rr as u64) as usize;
            // small families are where the minimum is interesting
            let m = if rng.random_bool(0.5) {
                rng.random_range(1..=total.min(12))
            } else {
                rng.random_range(1..=total)
            };
            let universe: Vec<u32> = (1..=p).collect();
            let f = UniformFamily::new(rr, p, random_sets(&mut rng, &universe, rr, m)).expect("valid");
            let shadow = upper_shadow(&f).expect("r < p").len() as u128;
            let min = kk_min_upper_shadow(m, rr, p).expect("m fits");
            let lex = UniformFamily::lex_segment(m, rr, p).expect("m fits");
            let lex_shadow = upper_shadow(&lex).expect("r < p");
            let lex_closed = lex_shadow
                == UniformFamily::lex_segment(lex_shadow.len(), rr + 1, p).expect("fits");
            if shadow < min || lex_shadow.len() as u128 != min || !lex_closed {
                violations.push(json!({
                    "p": p, "r": rr, "m": m, "shadow": shadow as u64, "min": min as u64,
                    "family": f.members().map(|s| s.to_line()).collect::<Vec<_>>(),
                }));
            } else if shadow == min {
                tight += 1;
            }
        }
        r.expected = json!({ "violations": 0 });
        r.computed = json!({ "violations": violations.len(), "families_at_minimum": tight });
        if let Some(first) = violations.first() {
            r.reproducer = Some(first.clone());
        }
        r.verdict(violations.is_empty());
    })
}
