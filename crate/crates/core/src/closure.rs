//! The union-closed family `<A>` and the counting facts built around it.

use std::collections::HashSet;

use crate::error::{domain, Error, Result};
use crate::setcore::{union_all, ElementSet, Family};

/// All unions of nonempty subfamilies of `source`, sorted in colex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureFamily {
    members: Vec<ElementSet>,
    source: Family,
}

impl ClosureFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn source(&self) -> &Family {
        &self.source
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Rewraps the members as a family; `None` when they are not uniform.
    pub fn as_family(&self) -> Option<Family> {
        Family::from_sets(self.members.clone()).ok()
    }
}

/// Generates `<family>`.
///
/// Worklist seeded with the generators; every popped set is joined with each
/// generator only. That reaches every subfamily union, since such a union
/// is built by adding generators one at a time.
pub fn close(family: &Family) -> Result<ClosureFamily> {
    if family.is_empty() {
        return domain("closure of an empty family");
    }
    let mut members = closure_sets(family.sets());
    members.sort_unstable();
    Ok(ClosureFamily {
        members,
        source: family.clone(),
    })
}

/// `|<family>|` without keeping the source.
pub fn close_count(family: &Family) -> Result<usize> {
    if family.is_empty() {
        return domain("closure of an empty family");
    }
    Ok(closure_sets(family.sets()).len())
}

/// Union closure of an arbitrary list of sets, unordered.
pub fn closure_sets(generators: &[ElementSet]) -> Vec<ElementSet> {
    let mut seen: HashSet<u64> = HashSet::with_capacity(generators.len() * 4);
    let mut work: Vec<u64> = Vec::with_capacity(generators.len());
    for g in generators {
        if seen.insert(g.bits()) {
            work.push(g.bits());
        }
    }
    let mut out = work.clone();
    while let Some(s) = work.pop() {
        for g in generators {
            let u = s | g.bits();
            if seen.insert(u) {
                work.push(u);
                out.push(u);
            }
        }
    }
    out.into_iter().map(ElementSet::from_bits).collect()
}

/// Decides `S in <family>` in `O(n)`.
///
/// `S` is a union of generators exactly when the generators it contains
/// cover it.
pub fn closure_contains(family: &Family, s: ElementSet) -> bool {
    let inside = union_all(family.iter().filter(|g| g.is_subset(s)));
    !s.is_empty() && inside == s
}

/// Sets that `x` keeps out of `<A>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockerFamily {
    pub x: u32,
    pub members: Vec<ElementSet>,
}

impl BlockerFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Largest ground set [`blockers`] enumerates.
pub const BLOCKER_LIMIT: u32 = 30;

/// `{A ⊆ D : x ∈ A, |A| >= k, no generator containing x lies inside A}`,
/// with `D` the ground set, or its intersection with `restrict_to`.
pub fn blockers(family: &Family, x: u32, restrict_to: Option<ElementSet>) -> Result<BlockerFamily> {
    let ground = family.ground();
    if !ground.contains(x) {
        return domain(format!("element {x} is not in the ground set {ground}"));
    }
    let domain_set = match restrict_to {
        Some(r) if !r.contains(x) => {
            return domain(format!("restriction {r} does not contain {x}"));
        }
        Some(r) => ground & r,
        None => ground,
    };
    if domain_set.len() > BLOCKER_LIMIT {
        return Err(Error::Capacity {
            what: "blocker domain size",
            actual: domain_set.len() as usize,
            limit: BLOCKER_LIMIT as usize,
            hint: "",
        });
    }
    let through_x: Vec<ElementSet> = family.iter().copied().filter(|g| g.contains(x)).collect();
    let xs = ElementSet::singleton(x)?;
    let k = family.k();
    let members = domain_set
        .without(x)
        .subsets()
        .map(|rest| rest | xs)
        .filter(|a| a.len() >= k && !through_x.iter().any(|g| g.is_subset(*a)))
        .collect();
    Ok(BlockerFamily { x, members })
}

/// A set `S` of size `s` on which `<family>` projects onto every nonempty
/// subset of `S`.
///
/// Requires `|G| >= s·k`. Built inductively: take an element `x` of least
/// degree and a generator `B` through it, discard `B`'s elements and the
/// generators through `x`, solve for `s - 1` on what is left, then add `x`.
pub fn distinguishing_set(family: &Family, s: u32) -> Result<ElementSet> {
    let need = s as u64 * family.k() as u64;
    if (family.ground().len() as u64) < need {
        return Err(Error::Precondition(format!(
            "ground set has {} elements, fewer than s·k = {need}",
            family.ground().len()
        )));
    }
    Ok(distinguishing_rec(family.sets(), s))
}

fn distinguishing_rec(sets: &[ElementSet], s: u32) -> ElementSet {
    if s == 0 {
        return ElementSet::EMPTY;
    }
    let ground = union_all(sets);
    let degree = |x: u32| sets.iter().filter(|b| b.contains(x)).count();
    let x = ground
        .iter()
        .min_by_key(|&x| (degree(x), x))
        .expect("nonempty ground when s >= 1");
    let xs = ElementSet::singleton(x).expect("valid label");
    if s == 1 {
        return xs;
    }
    let b1 = *sets.iter().find(|b| b.contains(x)).expect("x has a set");
    let rest = ground - b1;
    let mut reduced: Vec<ElementSet> = sets
        .iter()
        .filter(|b| !b.contains(x))
        .map(|&b| b & rest)
        .filter(|b| !b.is_empty())
        .collect();
    reduced.sort_unstable();
    reduced.dedup();
    distinguishing_rec(&reduced, s - 1) | xs
}

/// Whether every nonempty `X ⊆ S` equals `B ∩ S` for some `B` in `<family>`.
///
/// The largest union projecting into `X` is the union of all generators
/// whose trace on `S` lies in `X`; `X` is realized iff that trace is `X`.
pub fn projects_onto_all(family: &Family, s: ElementSet) -> bool {
    s.subsets().skip(1).all(|x| {
        let u = union_all(family.iter().filter(|g| (**g & s).is_subset(x)));
        u & s == x
    })
}

/// `|H ∪ {A ∪ S : S in H}|`, for `A` not covered by the union of `H`.
///
/// The result is at least `(1 + 2^{1-|A|})·|H|`, checked on return.
pub fn extend_count(h: &[ElementSet], a: ElementSet) -> Result<usize> {
    let cover = union_all(h);
    if a.is_subset(cover) {
        return Err(Error::Precondition(format!(
            "{a} lies inside the union {cover} of the family"
        )));
    }
    let base: HashSet<ElementSet> = h.iter().copied().collect();
    let mut all = base.clone();
    all.extend(base.iter().map(|&s| s | a));
    let count = all.len();
    assert!(
        meets_extension_bound(count, base.len(), a.len()),
        "extension bound violated: {count} new-family size for |H| = {}, |A| = {}",
        base.len(),
        a.len()
    );
    Ok(count)
}

/// `count >= (1 + 2^{1-a}) · h`, in integers.
pub fn meets_extension_bound(count: usize, h: usize, a: u32) -> bool {
    let scale = 1u128 << (a.max(1) - 1);
    (count as u128) * scale >= (scale + 1) * h as u128
}
