//! Explicit candidate-extremal families and their predicted closure sizes.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::math::{binom, pow2};
use crate::orders::{initial_segment, segment_iter, OrderKind};
use crate::setcore::{ElementSet, Family, MAX_LABEL};
use crate::shadows::{total_upper_shadow_count, UniformFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    /// `[t]^(k)`.
    AllKSets,
    /// First `n` sets of colex on `N^(k)`.
    ColexSegment,
    /// First `n` sets of max-lex on `N^(k)`.
    MaxLexSegment,
    /// `[t]^(k)` minus the colex segment of `[t-1]^(k-1)` lifted by `t`.
    MinusColexStar,
    /// `[t]^(k)` plus `l` sets through `{1..k-2}` and the new element `t+1`.
    PlusPencil,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub t: Option<u32>,
    pub k: u32,
    pub n: usize,
    pub l: Option<usize>,
    pub family: Family,
    /// Closure size the construction is expected to generate, when known.
    pub predicted_size: Option<u128>,
}

fn check_tk(t: u32, k: u32) -> Result<()> {
    if k == 0 || k > t || t > MAX_LABEL {
        return domain(format!("need 1 <= k <= t <= {MAX_LABEL}, got k = {k}, t = {t}"));
    }
    Ok(())
}

/// All `k`-subsets of `[t]`, in colex order.
pub fn all_ksets(t: u32, k: u32) -> Result<Family> {
    check_tk(t, k)?;
    Family::new(k, segment_iter(OrderKind::Colex, k, t).collect())
}

/// `|[t]^(>=k)| = 2^t - sum_{i<k} C(t, i)`.
pub fn up_set_size(t: u32, k: u32) -> Result<u128> {
    if k > t || t > MAX_LABEL {
        return domain(format!("need k <= t <= {MAX_LABEL}, got k = {k}, t = {t}"));
    }
    let small: u128 = (0..k as u64).map(|i| binom(t as u64, i)).sum();
    Ok(pow2(t).expect("t <= 64") - small)
}

pub fn all_ksets_construction(t: u32, k: u32) -> Result<Construction> {
    let family = all_ksets(t, k)?;
    Ok(Construction {
        kind: ConstructionKind::AllKSets,
        t: Some(t),
        k,
        n: family.len(),
        l: None,
        family,
        predicted_size: Some(up_set_size(t, k)?),
    })
}

/// Closed-form data for `f(n, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Values {
    /// Least `t` with `n <= C(t, 2)`.
    pub t: u32,
    /// `C(t, 2) - n`.
    pub r: u64,
    /// `2^t - 2^r - t`, absent when it does not fit in 128 bits.
    pub f: Option<u128>,
}

/// Least `t >= 2` with `n <= C(t, 2)`, by search.
pub fn pair_level(n: u64) -> u32 {
    let mut t: u64 = 2;
    while (binom(t, 2) as u64) < n {
        t += 1;
    }
    t as u32
}

/// `floor(sqrt(2n) + 3/2)`, as written.
pub fn pair_level_closed_form(n: u64) -> u32 {
    ((2.0 * n as f64).sqrt() + 1.5).floor() as u32
}

pub fn theorem2_values(n: u64) -> Result<Theorem2Values> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let t = pair_level(n);
    let r = binom(t as u64, 2) as u64 - n;
    let f = pow2(t).and_then(|big| {
        let small = pow2(u32::try_from(r).ok()?)?;
        Some(big - small - t as u128)
    });
    Ok(Theorem2Values { t, r, f })
}

/// Colex initial segment, predicted via the `k = 2` formula when `k = 2`.
pub fn colex_segment(k: u32, n: usize) -> Result<Construction> {
    let family = initial_segment(OrderKind::Colex, k, n, None)?;
    let predicted_size = match k {
        2 => theorem2_values(n as u64)?.f,
        1 => pow2(n as u32).map(|p| p - 1),
        _ => None,
    };
    Ok(Construction {
        kind: ConstructionKind::ColexSegment,
        t: None,
        k,
        n,
        l: None,
        family,
        predicted_size,
    })
}

/// Max-lex initial segment. Its closure size is what the conjectured
/// optimum is compared against, so no prediction is attached beyond `k <= 2`.
pub fn maxlex_segment(k: u32, n: usize) -> Result<Construction> {
    let mut c = colex_segment(k, n)?;
    c.kind = ConstructionKind::MaxLexSegment;
    c.family = initial_segment(OrderKind::MaxLex, k, n, None)?;
    Ok(c)
}

/// Largest `s >= 0` with `l >= s·k - C(s, 2)`, for `l < C(k+1, 2)`.
pub fn s_l(l: usize, k: u32) -> Result<u32> {
    if l as u128 >= binom(k as u64 + 1, 2) {
        return domain(format!("l = {l} must be below C({}, 2)", k + 1));
    }
    let cost = |s: u32| s as u128 * k as u128 - binom(s as u64, 2);
    let mut s = 0;
    while s < k && cost(s + 1) <= l as u128 {
        s += 1;
    }
    Ok(s)
}

/// `[t]^(k)` without `{A ∪ {t} : A in C_l}`, `C_l` the colex segment of
/// length `l` on `[t-1]^(k-1)`.
///
/// Predicted size `|[t]^(>=k)| - l - s_l`: removed `k`-sets are never
/// unions, and exactly `s_l` sets of size `k+1` lose all but one of their
/// `k`-subsets.
pub fn minus_construction(t: u32, k: u32, l: usize) -> Result<Construction> {
    check_tk(t, k)?;
    let s = s_l(l, k)?;
    if l as u128 > binom(t as u64 - 1, k as u64 - 1) {
        return domain(format!("l = {l} exceeds C({}, {})", t - 1, k - 1));
    }
    let top = ElementSet::singleton(t)?;
    let removed: Vec<ElementSet> = if k == 1 {
        (l == 1).then_some(top).into_iter().collect()
    } else {
        initial_segment(OrderKind::Colex, k - 1, l, Some(t - 1))?
            .iter()
            .map(|&a| a | top)
            .collect()
    };
    let sets: Vec<ElementSet> = segment_iter(OrderKind::Colex, k, t)
        .filter(|a| !removed.contains(a))
        .collect();
    if sets.is_empty() {
        return domain("construction removes every set");
    }
    let family = Family::new(k, sets)?;
    Ok(Construction {
        kind: ConstructionKind::MinusColexStar,
        t: Some(t),
        k,
        n: family.len(),
        l: Some(l),
        family,
        predicted_size: Some(up_set_size(t, k)? - l as u128 - s as u128),
    })
}

/// The pencil sets `Y_i = {1, ..., k-2, k-2+i, t+1}` for `i = 1..=l`.
pub fn pencil_sets(t: u32, k: u32, l: usize) -> Result<Vec<ElementSet>> {
    let base = ElementSet::initial(k - 2) | ElementSet::singleton(t + 1)?;
    (1..=l as u32)
        .map(|i| base.with(k - 2 + i))
        .collect()
}

/// `[t]^(k) ∪ {Y_1, ..., Y_l}`.
///
/// Predicted size `|[t]^(>=k)| + |U|`, where `U` is the total upper shadow
/// of `{Y_i ∩ [t]}` inside `[t]`: every set of `U` plus `t+1` is a new union.
pub fn plus_construction(t: u32, k: u32, l: usize) -> Result<Construction> {
    check_tk(t, k)?;
    if k < 2 {
        return domain("the pencil construction needs k >= 2");
    }
    if t + 1 > MAX_LABEL {
        return domain(format!("ground [t+1] exceeds {MAX_LABEL} labels"));
    }
    if l == 0 || l as u32 > t - k + 2 {
        return domain(format!("need 1 <= l <= t - k + 2 = {}, got {l}", t - k + 2));
    }
    let ys = pencil_sets(t, k, l)?;
    let traces = UniformFamily::new(k - 1, t, ys.iter().map(|y| y.without(t + 1)))?;
    let mut sets: Vec<ElementSet> = segment_iter(OrderKind::Colex, k, t).collect();
    sets.extend(ys);
    let family = Family::new(k, sets)?;
    Ok(Construction {
        kind: ConstructionKind::PlusPencil,
        t: Some(t),
        k,
        n: family.len(),
        l: Some(l),
        family,
        predicted_size: Some(up_set_size(t, k)? + total_upper_shadow_count(&traces)),
    })
}

/// `([4]^(3) ∪ {125, 135, 145}, first 7 sets of colex on N^(3))`.
pub fn counterexample_pair() -> (Family, Family) {
    let a = Family::of(&[
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 3, 4],
        &[2, 3, 4],
        &[1, 2, 5],
        &[1, 3, 5],
        &[1, 4, 5],
    ]);
    let b = initial_segment(OrderKind::Colex, 3, 7, None).expect("7 <= C(64, 3)");
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::close_count;

    #[test]
    fn all_ksets_examples() {
        assert_eq!(all_ksets(3, 2).unwrap(), Family::of(&[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(all_ksets(4, 3).unwrap().len(), 4);
        assert_eq!(all_ksets(5, 5).unwrap().sets(), &[ElementSet::initial(5)]);
        assert!(all_ksets(3, 4).is_err());
        assert!(all_ksets(3, 0).is_err());
    }

    #[test]
    fn up_set_examples() {
        assert_eq!(up_set_size(4, 3).unwrap(), 5);
        assert_eq!(close_count(&all_ksets(4, 3).unwrap()).unwrap(), 5);
        assert_eq!(up_set_size(6, 6).unwrap(), 1);
        assert_eq!(up_set_size(5, 3).unwrap(), 16);
        assert_eq!(up_set_size(64, 1).unwrap(), (1u128 << 64) - 1);
    }

    #[test]
    fn theorem2_examples() {
        let v = theorem2_values(3).unwrap();
        assert_eq!((v.t, v.r, v.f), (3, 0, Some(4)));
        let v = theorem2_values(5).unwrap();
        assert_eq!((v.t, v.r, v.f), (4, 1, Some(10)));
        for t in 2..12u32 {
            let n = binom(t as u64, 2) as u64;
            assert_eq!(theorem2_values(n).unwrap().f, Some(up_set_size(t, 2).unwrap()));
        }
        assert!(theorem2_values(0).is_err());
        assert_eq!(theorem2_values(1_000_000).unwrap().f, None);
    }

    #[test]
    fn s_l_examples() {
        assert_eq!(s_l(0, 3).unwrap(), 0);
        assert_eq!(s_l(3, 3).unwrap(), 1);
        assert_eq!(s_l(2, 2).unwrap(), 1);
        assert_eq!(s_l(5, 3).unwrap(), 2);
        assert!(s_l(6, 3).is_err());
    }

    #[test]
    fn minus_examples() {
        let c = minus_construction(5, 3, 1).unwrap();
        assert!(!c.family.contains(ElementSet::of(&[1, 2, 5])));
        assert_eq!(c.family.len(), 9);
        assert_eq!(c.predicted_size, Some(15));
        assert_eq!(minus_construction(6, 3, 0).unwrap().family, all_ksets(6, 3).unwrap());
        let c = minus_construction(4, 2, 1).unwrap();
        assert!(!c.family.contains(ElementSet::of(&[1, 4])));
        assert_eq!(c.predicted_size, Some(10));
        assert_eq!(c.predicted_size, theorem2_values(5).unwrap().f);
        assert!(minus_construction(5, 3, 6).is_err());
    }

    #[test]
    fn plus_examples() {
        let c = plus_construction(4, 3, 1).unwrap();
        assert!(c.family.contains(ElementSet::of(&[1, 2, 5])));
        assert_eq!(c.predicted_size, Some(9));
        let c = plus_construction(3, 2, 1).unwrap();
        assert!(c.family.contains(ElementSet::of(&[1, 4])));
        // [3]^(>=2) has 4 sets, supersets of {1} in [3] number 4
        assert_eq!(c.predicted_size, Some(8));
        assert!(plus_construction(4, 3, 4).is_err());
        assert!(plus_construction(4, 1, 1).is_err());
        assert!(plus_construction(4, 3, 0).is_err());
    }

    #[test]
    fn counterexample_families() {
        let (a, b) = counterexample_pair();
        assert_eq!((a.len(), b.len()), (7, 7));
        assert_eq!(a, initial_segment(OrderKind::MaxLex, 3, 7, None).unwrap());
    }
}
