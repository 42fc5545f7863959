//! Orderly generation of families of `k`-sets up to isomorphism.
//!
//! Families are grown as colex-ascending lists. A new set may only use the
//! labels already present plus the next few unused ones, so the ground set
//! is always an initial segment `[m]`. A list is kept only if it is its own
//! canonical code; since deleting the colex-largest set of a canonical list
//! leaves a canonical list, every isomorphism class is produced exactly once.

use crate::setcore::{is_canonical, ElementSet};

/// Mask of labels `1..=m`.
#[inline]
pub(crate) fn low_mask(m: u32) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Every admissible next set after `last` for a list on ground `[m]`.
///
/// Yields `(set, new_ground)` in increasing colex order; `max_ground` bounds
/// the ground after the addition.
pub(crate) fn candidates(last: u64, m: u32, k: u32, max_ground: u32) -> impl Iterator<Item = (u64, u32)> {
    (0..=k)
        .take_while(move |&r| m + r <= max_ground)
        .flat_map(move |r| {
            let fresh = low_mask(m + r) & !low_mask(m);
            subsets_of_size(m, k - r)
                .map(move |old| (old | fresh, m + r))
                .filter(move |&(b, _)| b > last)
        })
}

/// All `size`-subsets of `[m]` as masks, ascending (Gosper's hack).
pub(crate) fn subsets_of_size(m: u32, size: u32) -> impl Iterator<Item = u64> {
    let start = if size > m {
        None
    } else if size == 0 {
        Some(0u64)
    } else {
        Some(low_mask(size))
    };
    let limit = low_mask(m);
    std::iter::successors(start, move |&x| {
        if x == 0 {
            return None;
        }
        let c = x & x.wrapping_neg();
        let r = x.checked_add(c)?;
        let next = (((r ^ x) >> 2) / c) | r;
        (next & !limit == 0).then_some(next)
    })
}

/// Calls `visit` once per isomorphism class of families of `n` distinct
/// `k`-sets with at most `max_ground` elements, passing the canonical list.
pub fn for_each_class(n: usize, k: u32, max_ground: u32, mut visit: impl FnMut(&[ElementSet])) {
    assert!(k >= 1 && max_ground <= 64, "k >= 1 and ground <= 64");
    let mut sets: Vec<ElementSet> = Vec::with_capacity(n);
    if n == 0 {
        visit(&sets);
        return;
    }
    grow(&mut sets, 0, n, k, max_ground, &mut visit);
}

fn grow(
    sets: &mut Vec<ElementSet>,
    m: u32,
    n: usize,
    k: u32,
    max_ground: u32,
    visit: &mut impl FnMut(&[ElementSet]),
) {
    let last = sets.last().map_or(0, |s| s.bits());
    for (b, m2) in candidates(last, m, k, max_ground) {
        sets.push(ElementSet::from_bits(b));
        if is_canonical(sets) {
            if sets.len() == n {
                visit(sets);
            } else {
                grow(sets, m2, n, k, max_ground, visit);
            }
        }
        sets.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, k: u32, g: u32) -> usize {
        let mut c = 0;
        for_each_class(n, k, g, |_| c += 1);
        c
    }

    #[test]
    fn subset_iteration() {
        assert_eq!(subsets_of_size(4, 2).count(), 6);
        assert_eq!(subsets_of_size(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(2, 3).count(), 0);
        assert_eq!(subsets_of_size(64, 63).count(), 64);
    }

    #[test]
    fn graph_counts_without_isolated_vertices() {
        // graphs with e edges and no isolated vertices, up to isomorphism
        assert_eq!(count(1, 2, 64), 1);
        assert_eq!(count(2, 2, 64), 2);
        assert_eq!(count(3, 2, 64), 5);
        assert_eq!(count(4, 2, 64), 11);
        assert_eq!(count(5, 2, 64), 26);
    }

    #[test]
    fn ground_cap_restricts() {
        // 3 edges on at most 4 vertices: triangle, path, star
        assert_eq!(count(3, 2, 4), 3);
        // k = 1: one class per n
        assert_eq!(count(4, 1, 64), 1);
    }
}
