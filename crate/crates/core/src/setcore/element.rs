use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest element label. Labels run over `1..=MAX_LABEL`.
pub const MAX_LABEL: u32 = 64;

/// A subset of `{1, ..., 64}` packed into one machine word.
///
/// Label `x` occupies bit `x - 1`. With that layout the derived integer
/// ordering of the words is exactly the colex order on sets: the larger set
/// is the one owning the highest differing element.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(u64);

#[inline]
fn bit(x: u32) -> u64 {
    1u64 << (x - 1)
}

fn check_label(x: u32) -> Result<()> {
    if x == 0 || x > MAX_LABEL {
        Err(Error::Domain(format!("element label {x} outside 1..={MAX_LABEL}")))
    } else {
        Ok(())
    }
}

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a set from labels, rejecting labels outside `1..=64` and repeats.
    pub fn try_from_labels(labels: &[u32]) -> Result<Self> {
        let mut s = 0u64;
        for &x in labels {
            check_label(x)?;
            if s & bit(x) != 0 {
                return Err(Error::Domain(format!("element {x} repeated")));
            }
            s |= bit(x);
        }
        Ok(ElementSet(s))
    }

    /// Literal constructor for known-good labels.
    ///
    /// Panics on a label outside `1..=64` or a repeated label.
    pub fn of(labels: &[u32]) -> Self {
        Self::try_from_labels(labels).expect("invalid set literal")
    }

    /// The initial segment `[t] = {1, ..., t}`.
    pub fn initial(t: u32) -> Self {
        assert!(t <= MAX_LABEL, "initial segment beyond label {MAX_LABEL}");
        if t == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << t) - 1)
        }
    }

    pub fn singleton(x: u32) -> Result<Self> {
        check_label(x)?;
        Ok(ElementSet(bit(x)))
    }

    #[inline]
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, x: u32) -> bool {
        (1..=MAX_LABEL).contains(&x) && self.0 & bit(x) != 0
    }

    pub fn with(self, x: u32) -> Result<Self> {
        check_label(x)?;
        Ok(ElementSet(self.0 | bit(x)))
    }

    pub fn without(self, x: u32) -> Self {
        if (1..=MAX_LABEL).contains(&x) {
            ElementSet(self.0 & !bit(x))
        } else {
            self
        }
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: Self) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest label, `None` when empty.
    pub fn largest(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Smallest label, `None` when empty.
    pub fn smallest(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Complement inside `[p]`.
    pub fn complement_in(self, p: u32) -> Self {
        ElementSet::initial(p).difference(self)
    }

    /// Image under the reflection `i -> p + 1 - i` of `[p]`.
    ///
    /// Elements above `p` are dropped.
    pub fn reflect_in(self, p: u32) -> Self {
        let mut out = 0u64;
        for x in self.iter().take_while(|&x| x <= p) {
            out |= bit(p + 1 - x);
        }
        ElementSet(out)
    }

    /// Every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(0),
        }
    }

    /// Space-separated labels, the line form used by family files.
    pub fn to_line(self) -> String {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Sub-mask enumeration in increasing numeric order.
pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            Some((cur.wrapping_sub(self.full)) & self.full)
        };
        Some(ElementSet(cur))
    }
}

/// Sum of a collection of sets.
pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a ElementSet>) -> ElementSet {
    sets.into_iter().fold(ElementSet::EMPTY, |acc, &s| acc | s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_one_indexed() {
        let s = ElementSet::of(&[1, 64]);
        assert_eq!(s.bits(), 1 | (1u64 << 63));
        assert_eq!(s.len(), 2);
        assert_eq!(s.smallest(), Some(1));
        assert_eq!(s.largest(), Some(64));
        assert!(ElementSet::try_from_labels(&[0]).is_err());
        assert!(ElementSet::try_from_labels(&[65]).is_err());
        assert!(ElementSet::try_from_labels(&[3, 3]).is_err());
        assert!(!s.contains(0));
    }

    #[test]
    fn numeric_order_is_colex() {
        // max of the symmetric difference decides
        assert!(ElementSet::of(&[1, 4, 5]) < ElementSet::of(&[2, 3, 6]));
        assert!(ElementSet::of(&[1, 2, 5]) > ElementSet::of(&[2, 3, 4]));
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = ElementSet::of(&[2, 5, 7]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
        assert_eq!(ElementSet::initial(64).subsets().take(3).count(), 3);
    }

    #[test]
    fn reflection_and_complement() {
        assert_eq!(ElementSet::of(&[1, 2]).complement_in(4), ElementSet::of(&[3, 4]));
        assert_eq!(ElementSet::of(&[3, 4]).reflect_in(4), ElementSet::of(&[1, 2]));
        assert_eq!(ElementSet::initial(64).len(), 64);
        assert_eq!(ElementSet::of(&[1, 3]).to_string(), "{1,3}");
        assert_eq!(ElementSet::of(&[1, 3]).to_line(), "1 3");
    }
}
