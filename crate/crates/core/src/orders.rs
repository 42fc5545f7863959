//! Colex, lex and max-lex orders on `k`-sets.
//!
//! * colex: `A < B` when `max(A \ B) < max(B \ A)`;
//! * lex: `A < B` when `min(A \ B) < min(B \ A)`, only meaningful inside a
//!   finite universe `[p]`;
//! * max-lex: `A < B` when `max A < max B`, or the maxima agree and
//!   `min(A Δ B)` lies in `A`.
//!
//! Segments are produced by successor iteration, never by sorting a
//! materialized universe.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::math::binom;
use crate::setcore::{ElementSet, Family, MAX_LABEL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Colex,
    Lex,
    MaxLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Colex => "colex",
            OrderKind::Lex => "lex",
            OrderKind::MaxLex => "max-lex",
        })
    }
}

impl FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "colex" => Ok(OrderKind::Colex),
            "lex" => Ok(OrderKind::Lex),
            "max-lex" | "maxlex" => Ok(OrderKind::MaxLex),
            other => domain(format!("unknown order `{other}` (colex, lex, max-lex)")),
        }
    }
}

/// Compares two sets of equal size.
pub fn compare(order: OrderKind, a: ElementSet, b: ElementSet) -> Result<Ordering> {
    if a.len() != b.len() {
        return domain(format!(
            "cannot compare {a} and {b}: sizes {} and {} differ",
            a.len(),
            b.len()
        ));
    }
    Ok(compare_unchecked(order, a, b))
}

pub(crate) fn compare_unchecked(order: OrderKind, a: ElementSet, b: ElementSet) -> Ordering {
    match order {
        OrderKind::Colex => a.cmp(&b),
        OrderKind::Lex => lex_cmp(a, b),
        OrderKind::MaxLex => a.largest().cmp(&b.largest()).then_with(|| lex_cmp(a, b)),
    }
}

fn lex_cmp(a: ElementSet, b: ElementSet) -> Ordering {
    match a.symmetric_difference(b).smallest() {
        None => Ordering::Equal,
        Some(x) if a.contains(x) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}

/// Next `k`-set in `order`, or `None` at the end of the universe.
///
/// `universe` bounds lex iteration and is otherwise the 64-label limit.
pub fn successor(order: OrderKind, set: ElementSet, universe: u32) -> Option<ElementSet> {
    match order {
        OrderKind::Colex => colex_next(set).filter(|s| s.largest().unwrap_or(0) <= universe),
        OrderKind::Lex => lex_next(set, universe),
        OrderKind::MaxLex => {
            let top = set.largest()?;
            let rest = set.without(top);
            match lex_next(rest, top - 1) {
                Some(r) => Some(r.union(ElementSet::singleton(top).ok()?)),
                None if top < universe => {
                    let k = set.len();
                    Some(ElementSet::initial(k - 1).union(ElementSet::singleton(top + 1).ok()?))
                }
                None => None,
            }
        }
    }
}

/// Gosper's next-integer-with-equal-popcount.
fn colex_next(set: ElementSet) -> Option<ElementSet> {
    let x = set.bits();
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some(ElementSet::from_bits((((r ^ x) >> 2) / c) | r))
}

/// Lex successor among `|set|`-subsets of `[p]`.
fn lex_next(set: ElementSet, p: u32) -> Option<ElementSet> {
    let mut elems = set.to_vec();
    let k = elems.len();
    if k == 0 {
        return None;
    }
    let pos = (0..k).rev().find(|&i| elems[i] < p - (k - 1 - i) as u32)?;
    elems[pos] += 1;
    for i in pos + 1..k {
        elems[i] = elems[i - 1] + 1;
    }
    Some(ElementSet::of(&elems))
}

fn check_size(k: u32) -> Result<()> {
    if k == 0 || k > MAX_LABEL {
        return domain(format!("set size k = {k} outside 1..={MAX_LABEL}"));
    }
    Ok(())
}

fn effective_universe(order: OrderKind, k: u32, universe: Option<u32>) -> Result<u32> {
    match (order, universe) {
        (OrderKind::Lex, None) => domain("lex order needs an explicit finite universe [p]"),
        (_, Some(p)) if p > MAX_LABEL => domain(format!("universe {p} exceeds {MAX_LABEL}")),
        (_, Some(p)) if p < k => domain(format!("universe [{p}] has no {k}-subsets")),
        (_, Some(p)) => Ok(p),
        (_, None) => Ok(MAX_LABEL),
    }
}

/// The first `n` sets of size `k` in `order`, ascending.
pub fn initial_segment(order: OrderKind, k: u32, n: usize, universe: Option<u32>) -> Result<Family> {
    check_size(k)?;
    let p = effective_universe(order, k, universe)?;
    let capacity = binom(p as u64, k as u64);
    if n as u128 > capacity {
        return domain(format!(
            "{n} sets requested but [{p}] has only {capacity} subsets of size {k}"
        ));
    }
    let sets: Vec<ElementSet> = segment_iter(order, k, p).take(n).collect();
    Family::new(k, sets)
}

/// Lazily walks all `k`-subsets of `[p]` in `order`.
pub fn segment_iter(order: OrderKind, k: u32, p: u32) -> impl Iterator<Item = ElementSet> {
    // [k] opens all three orders
    let start = (k >= 1 && k <= p).then(|| ElementSet::initial(k));
    std::iter::successors(start, move |&s| successor(order, s, p))
}

/// 0-based position of `set` among all sets of its size.
///
/// Lex positions are relative to `[p]` and need `universe`.
pub fn rank(order: OrderKind, set: ElementSet, universe: Option<u32>) -> Result<u128> {
    let k = set.len();
    check_size(k)?;
    let p = effective_universe(order, k, universe)?;
    if universe.is_some() && set.largest().unwrap_or(0) > p {
        return domain(format!("{set} is not inside [{p}]"));
    }
    Ok(match order {
        OrderKind::Colex => colex_rank(set),
        OrderKind::Lex => lex_rank(set, p),
        OrderKind::MaxLex => {
            let top = set.largest().expect("nonempty");
            binom(top as u64 - 1, k as u64) + lex_rank(set.without(top), top - 1)
        }
    })
}

/// `sum_i C(a_i - 1, i)` for `a_1 < ... < a_k`.
pub fn colex_rank(set: ElementSet) -> u128 {
    set.iter()
        .enumerate()
        .map(|(i, a)| binom(a as u64 - 1, i as u64 + 1))
        .sum()
}

fn lex_rank(set: ElementSet, p: u32) -> u128 {
    let k = set.len() as u64;
    let mut prev = 0u32;
    let mut r = 0u128;
    for (i, a) in set.iter().enumerate() {
        let i = i as u64 + 1;
        for j in prev + 1..a {
            r += binom((p - j) as u64, k - i);
        }
        prev = a;
    }
    r
}
