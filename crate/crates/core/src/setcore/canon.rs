//! Canonical forms of families under relabeling of the ground set.
//!
//! The canonical code of a family is the smallest colex-sorted list of sets
//! (lists compared lexicographically, sets compared in colex) over all
//! bijections from the ground set onto `[m]`. Rather than trying all `m!`
//! bijections, labels are handed out in increasing order. Once labels
//! `1..=L` are placed, the sets whose elements all carry labels are exactly
//! the sets of the final code with maximum at most `L`, so every partial
//! labeling already fixes a prefix of its final code and can be compared
//! with its siblings. Only the partial labelings whose prefix is optimal are
//! extended, and partial labelings that leave every set in the same state
//! are merged.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::element::{union_all, ElementSet};
use super::family::Family;
use crate::error::{Error, Result};

/// Default ground-set limit for [`canonicalize`].
pub const DEFAULT_PERMUTATION_CAP: usize = 12;

/// The canonical representative of a family's isomorphism class.
///
/// Its ground set is `{1, ..., m}` and its members are listed in colex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm {
    relabeled: Family,
}

impl CanonicalForm {
    /// Wraps a code produced by [`canonical_code`].
    pub(crate) fn from_code(k: u32, code: Vec<ElementSet>) -> Self {
        CanonicalForm {
            relabeled: Family::new(k, code).expect("canonical code of a valid family"),
        }
    }

    pub fn family(&self) -> &Family {
        &self.relabeled
    }

    pub fn code(&self) -> &[ElementSet] {
        self.relabeled.sets()
    }

    pub fn into_family(self) -> Family {
        self.relabeled
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.relabeled.k(), self.code()).cmp(&(other.relabeled.k(), other.code()))
    }
}

/// Canonical form of a family whose ground set has at most
/// [`DEFAULT_PERMUTATION_CAP`] elements.
pub fn canonicalize(family: &Family) -> Result<CanonicalForm> {
    canonicalize_with_cap(family, DEFAULT_PERMUTATION_CAP)
}

pub fn canonicalize_with_cap(family: &Family, cap: usize) -> Result<CanonicalForm> {
    let m = family.ground().len() as usize;
    if m > cap {
        return Err(Error::Capacity {
            what: "ground set size",
            actual: m,
            limit: cap,
            hint: "; use setcore::canonical_code, the incremental path used by the search",
        });
    }
    Ok(CanonicalForm::from_code(family.k(), canonical_code(family.sets())))
}

/// Isomorphism test through canonical forms, with degree-sequence prefiltering.
pub fn is_isomorphic(a: &Family, b: &Family) -> Result<bool> {
    for f in [a, b] {
        let m = f.ground().len() as usize;
        if m > DEFAULT_PERMUTATION_CAP {
            return Err(Error::Capacity {
                what: "ground set size",
                actual: m,
                limit: DEFAULT_PERMUTATION_CAP,
                hint: "; use setcore::canonical_code, the incremental path used by the search",
            });
        }
    }
    if a.k() != b.k() || a.len() != b.len() || a.ground().len() != b.ground().len() {
        return Ok(false);
    }
    let degree_seq = |f: &Family| {
        let mut d: Vec<usize> = f.degrees().into_iter().map(|(_, d)| d).collect();
        d.sort_unstable();
        d
    };
    if degree_seq(a) != degree_seq(b) {
        return Ok(false);
    }
    Ok(canonical_code(a.sets()) == canonical_code(b.sets()))
}

/// Canonical code of an arbitrary list of distinct sets, any ground size.
pub fn canonical_code(sets: &[ElementSet]) -> Vec<ElementSet> {
    leader_search(sets, None).expect("no target, never rejected")
}

/// Whether a colex-sorted list equals its own canonical code.
///
/// Stops at the first label where some relabeling beats the input, which is
/// what makes it cheap enough to call at every node of the search.
pub fn is_canonical(sorted: &[ElementSet]) -> bool {
    debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    let ground = union_all(sorted);
    // Canonical codes always use an initial segment of labels.
    if ground.bits() & ground.bits().wrapping_add(1) != 0 {
        return false;
    }
    leader_search(sorted, Some(sorted)).is_some()
}

#[derive(Clone)]
struct Partial {
    label: [u8; 65],
    assigned: u64,
}

impl Partial {
    fn project(&self, s: ElementSet) -> u64 {
        let mut out = 0u64;
        let mut bits = s.bits() & self.assigned;
        while bits != 0 {
            let x = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            out |= 1u64 << (self.label[x as usize] - 1);
        }
        out
    }
}

/// `Less` when `a` is the better (smaller) code extension.
///
/// A group that extends the other is better, because whatever the shorter
/// one appends later has a larger maximum.
fn cmp_groups(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

fn leader_search(sets: &[ElementSet], target: Option<&[ElementSet]>) -> Option<Vec<ElementSet>> {
    let ground = union_all(sets);
    let m = ground.len();
    let mut code: Vec<ElementSet> = Vec::with_capacity(sets.len());
    let mut survivors = vec![Partial {
        label: [0; 65],
        assigned: 0,
    }];

    for level in 1..=m {
        let mut best: Option<Vec<u64>> = None;
        let mut winners: Vec<(usize, u32)> = Vec::new();
        for (pi, p) in survivors.iter().enumerate() {
            let free = ground.bits() & !p.assigned;
            for e in ElementSet::from_bits(free).iter() {
                let e_bit = 1u64 << (e - 1);
                let now = p.assigned | e_bit;
                let mut group: Vec<u64> = sets
                    .iter()
                    .filter(|s| s.bits() & e_bit != 0 && s.bits() & !now == 0)
                    .map(|&s| p.project(s) | 1u64 << (level - 1))
                    .collect();
                group.sort_unstable();
                let ord = match &best {
                    None => Ordering::Less,
                    Some(b) => cmp_groups(&group, b),
                };
                match ord {
                    Ordering::Less => {
                        best = Some(group);
                        winners.clear();
                        winners.push((pi, e));
                    }
                    Ordering::Equal => winners.push((pi, e)),
                    Ordering::Greater => {}
                }
            }
        }
        let best = best.expect("ground element available at every level");

        if let Some(target) = target {
            let want: Vec<u64> = target
                .iter()
                .map(|s| s.bits())
                .filter(|&b| b != 0 && 64 - b.leading_zeros() == level)
                .collect();
            if cmp_groups(&best, &want) == Ordering::Less {
                return None;
            }
        }
        code.extend(best.iter().map(|&b| ElementSet::from_bits(b)));

        if level == m {
            break;
        }
        let mut seen: HashSet<(u64, Vec<(u64, u64)>)> = HashSet::new();
        let mut next = Vec::with_capacity(winners.len());
        for (pi, e) in winners {
            let mut p = survivors[pi].clone();
            p.label[e as usize] = level as u8;
            p.assigned |= 1u64 << (e - 1);
            let mut sig: Vec<(u64, u64)> = sets
                .iter()
                .map(|&s| (p.project(s), s.bits() & !p.assigned))
                .collect();
            sig.sort_unstable();
            if seen.insert((p.assigned, sig)) {
                next.push(p);
            }
        }
        survivors = next;
    }
    Some(code)
}
