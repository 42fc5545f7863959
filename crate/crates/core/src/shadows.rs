//! Lower, upper and total upper shadows inside a finite universe `[p]`.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{domain, Error, Result};
use crate::math::{binom, pow2};
use crate::orders::{initial_segment, OrderKind};
use crate::setcore::{ElementSet, Family, MAX_LABEL};

/// A family of `r`-subsets of `[p]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniformFamily {
    r: u32,
    p: u32,
    members: BTreeSet<ElementSet>,
}

impl UniformFamily {
    pub fn new(r: u32, p: u32, members: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        if p > MAX_LABEL {
            return domain(format!("universe [{p}] exceeds {MAX_LABEL} labels"));
        }
        if r > p {
            return domain(format!("no {r}-subsets inside [{p}]"));
        }
        let universe = ElementSet::initial(p);
        let mut set = BTreeSet::new();
        for m in members {
            if m.len() != r {
                return domain(format!("member {m} has size {}, expected {r}", m.len()));
            }
            if !m.is_subset(universe) {
                return domain(format!("member {m} is not inside [{p}]"));
            }
            set.insert(m);
        }
        Ok(UniformFamily { r, p, members: set })
    }

    pub fn from_family(family: &Family, p: u32) -> Result<Self> {
        UniformFamily::new(family.k(), p, family.iter().copied())
    }

    /// All of `[p]^(r)`.
    pub fn full_level(r: u32, p: u32) -> Result<Self> {
        let members: Vec<ElementSet> = if r == 0 {
            vec![ElementSet::EMPTY]
        } else {
            crate::orders::segment_iter(OrderKind::Colex, r, p).collect()
        };
        UniformFamily::new(r, p, members)
    }

    /// The first `m` sets of lex order on `[p]^(r)`.
    pub fn lex_segment(m: usize, r: u32, p: u32) -> Result<Self> {
        Self::segment(OrderKind::Lex, m, r, p)
    }

    /// The first `m` sets of colex order on `[p]^(r)`.
    pub fn colex_segment(m: usize, r: u32, p: u32) -> Result<Self> {
        Self::segment(OrderKind::Colex, m, r, p)
    }

    fn segment(order: OrderKind, m: usize, r: u32, p: u32) -> Result<Self> {
        if r == 0 {
            if m > 1 {
                return domain(format!("[{p}] has a single 0-subset, {m} requested"));
            }
            return UniformFamily::new(0, p, (m == 1).then_some(ElementSet::EMPTY));
        }
        let f = initial_segment(order, r, m, Some(p))?;
        UniformFamily::new(r, p, f.iter().copied())
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn universe(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.contains(&s)
    }

    /// Members in colex order.
    pub fn members(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subfamily_of(&self, other: &UniformFamily) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// `{A \ {i} : A in F, i in A}`.
pub fn lower_shadow(f: &UniformFamily) -> Result<UniformFamily> {
    if f.r == 0 {
        return domain("lower shadow of a family of empty sets");
    }
    let out: BTreeSet<ElementSet> = f
        .members
        .iter()
        .flat_map(|&a| a.iter().map(move |i| a.without(i)))
        .collect();
    Ok(UniformFamily {
        r: f.r - 1,
        p: f.p,
        members: out,
    })
}

/// `{A ∪ {i} : A in F, i in [p] \ A}`.
pub fn upper_shadow(f: &UniformFamily) -> Result<UniformFamily> {
    if f.r >= f.p {
        return domain(format!("upper shadow of {}-sets inside [{}]", f.r, f.p));
    }
    let universe = ElementSet::initial(f.p);
    let out: BTreeSet<ElementSet> = f
        .members
        .iter()
        .flat_map(|&a| {
            universe
                .difference(a)
                .iter()
                .map(move |i| a.with(i).expect("label inside universe"))
        })
        .collect();
    Ok(UniformFamily {
        r: f.r + 1,
        p: f.p,
        members: out,
    })
}

/// The upper shadow applied `times` times; `times = 0` is the identity.
pub fn upper_shadow_iterated(f: &UniformFamily, times: u32) -> Result<UniformFamily> {
    let mut cur = f.clone();
    for _ in 0..times {
        cur = upper_shadow(&cur)?;
    }
    Ok(cur)
}

/// `A -> g(A^c)` with `g(i) = p + 1 - i`, applied to every member.
///
/// Involutive. Sends lex initial segments of `[p]^(r)` to colex initial
/// segments of `[p]^(p-r)` and turns upper shadows into lower shadows.
pub fn complement_transform(f: &UniformFamily) -> UniformFamily {
    let members = f
        .members
        .iter()
        .map(|a| a.complement_in(f.p).reflect_in(f.p))
        .collect();
    UniformFamily {
        r: f.p - f.r,
        p: f.p,
        members,
    }
}

/// Largest universe for which [`total_upper_shadow_by_enumeration`] runs.
pub const ENUMERATION_LIMIT: u32 = 26;

/// Number of subsets of `[p]`, of any size, that contain some member.
///
/// Counts the complement (sets containing no member) by branching on
/// elements, unless the family is large and the universe small enough to
/// walk all of `P([p])` directly.
pub fn total_upper_shadow_count(f: &UniformFamily) -> u128 {
    if f.len() > 64 && f.p <= 20 {
        total_upper_shadow_by_enumeration(f).expect("universe within limit")
    } else {
        total_upper_shadow_by_complement(f)
    }
}

/// `2^p` minus the number of subsets of `[p]` that contain no member.
pub fn total_upper_shadow_by_complement(f: &UniformFamily) -> u128 {
    let members: Vec<u64> = f.members.iter().map(|m| m.bits()).collect();
    let all = pow2(f.p).expect("p <= 64");
    all - count_avoiding(minimal_masks(members), ElementSet::initial(f.p).bits())
}

/// Direct walk over every subset of `[p]`.
pub fn total_upper_shadow_by_enumeration(f: &UniformFamily) -> Result<u128> {
    if f.p > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "universe size",
            actual: f.p as usize,
            limit: ENUMERATION_LIMIT as usize,
            hint: "",
        });
    }
    let members: Vec<u64> = minimal_masks(f.members.iter().map(|m| m.bits()).collect());
    let n = 1u64 << f.p;
    Ok((0..n)
        .filter(|&s| members.iter().any(|&m| m & !s == 0))
        .count() as u128)
}

/// Every set of the total upper shadow, ascending in colex.
pub fn total_upper_shadow_members(f: &UniformFamily) -> Result<Vec<ElementSet>> {
    if f.p > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "universe size",
            actual: f.p as usize,
            limit: ENUMERATION_LIMIT as usize,
            hint: "",
        });
    }
    let members: Vec<u64> = minimal_masks(f.members.iter().map(|m| m.bits()).collect());
    Ok((0..1u64 << f.p)
        .filter(|&s| members.iter().any(|&m| m & !s == 0))
        .map(ElementSet::from_bits)
        .collect())
}

/// Drops members that contain another member; they add nothing to an up-set.
fn minimal_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by_key(|m| m.count_ones());
    masks.dedup();
    let mut keep: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !keep.iter().any(|&k| k & !m == 0) {
            keep.push(m);
        }
    }
    keep
}

/// Subsets of `universe` that contain none of `members`.
fn count_avoiding(members: Vec<u64>, universe: u64) -> u128 {
    if members.is_empty() {
        return 1u128 << universe.count_ones();
    }
    if members.contains(&0) {
        return 0;
    }
    // branch on the most frequent element
    let mut best = (0u32, 0usize);
    let mut rest = universe;
    while rest != 0 {
        let x = rest.trailing_zeros();
        rest &= rest - 1;
        let c = members.iter().filter(|&&m| m >> x & 1 == 1).count();
        if c > best.1 {
            best = (x, c);
        }
    }
    let bit = 1u64 << best.0;
    let universe = universe & !bit;
    let without: Vec<u64> = members.iter().copied().filter(|&m| m & bit == 0).collect();
    let with: Vec<u64> = members.iter().map(|&m| m & !bit).collect();
    count_avoiding(without, universe) + count_avoiding(minimal_masks(with), universe)
}

/// Smallest possible `|∂₊T|` over families `T` of `m` sets in `[p]^(r)`.
///
/// By Kruskal–Katona, transported through [`complement_transform`], the lex
/// initial segment of length `m` attains it; that segment is built and
/// shadowed directly.
pub fn kk_min_upper_shadow(m: usize, r: u32, p: u32) -> Result<u128> {
    let cap = binom(p as u64, r as u64);
    if m as u128 > cap {
        return domain(format!("{m} sets requested but [{p}]^({r}) has {cap}"));
    }
    let seg = UniformFamily::lex_segment(m, r, p)?;
    Ok(upper_shadow(&seg)?.len() as u128)
}

/// Fraction of `P([t])` lying in the total upper shadow of the lex initial
/// segment of length `s` on `[t]^(k-1)`.
pub fn delta_proportion(s: usize, k: u32, t: u32) -> Result<Ratio<u128>> {
    if k == 0 {
        return domain("k must be at least 1");
    }
    if t > MAX_LABEL || k - 1 > t {
        return domain(format!("need k - 1 <= t <= {MAX_LABEL}, got k = {k}, t = {t}"));
    }
    let cap = binom(t as u64, k as u64 - 1);
    if s as u128 > cap {
        return domain(format!("s = {s} exceeds C({t}, {}) = {cap}", k - 1));
    }
    let seg = UniformFamily::lex_segment(s, k - 1, t)?;
    let count = total_upper_shadow_count(&seg);
    Ok(Ratio::new(count, pow2(t).expect("t <= 64")))
}
