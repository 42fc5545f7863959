use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::{union_all, ElementSet};
use crate::error::{domain, Error, Result};

/// An ordered list of distinct `k`-sets together with its ground set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct Family {
    k: u32,
    sets: Vec<ElementSet>,
    ground: ElementSet,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    k: u32,
    sets: Vec<Vec<u32>>,
}

impl TryFrom<FamilyRepr> for Family {
    type Error = Error;
    fn try_from(r: FamilyRepr) -> Result<Self> {
        let sets = r
            .sets
            .iter()
            .map(|s| ElementSet::try_from_labels(s))
            .collect::<Result<Vec<_>>>()?;
        Family::new(r.k, sets)
    }
}

impl From<Family> for FamilyRepr {
    fn from(f: Family) -> Self {
        FamilyRepr {
            k: f.k,
            sets: f.sets.iter().map(|s| s.to_vec()).collect(),
        }
    }
}

impl Family {
    /// Validates uniformity (`k >= 1`, every member of size `k`) and distinctness.
    pub fn new(k: u32, sets: Vec<ElementSet>) -> Result<Self> {
        if k == 0 {
            return domain("uniform set size k must be at least 1");
        }
        let mut seen = HashSet::with_capacity(sets.len());
        for s in &sets {
            if s.len() != k {
                return domain(format!("set {s} has size {}, expected {k}", s.len()));
            }
            if !seen.insert(*s) {
                return domain(format!("set {s} appears twice"));
            }
        }
        let ground = union_all(&sets);
        Ok(Family { k, sets, ground })
    }

    /// Infers `k` from the first member.
    pub fn from_sets(sets: Vec<ElementSet>) -> Result<Self> {
        match sets.first() {
            Some(s) => Family::new(s.len(), sets),
            None => domain("cannot infer k from an empty family"),
        }
    }

    /// Shorthand for tests and literals; panics on invalid input.
    pub fn of(sets: &[&[u32]]) -> Self {
        Family::from_sets(sets.iter().map(|s| ElementSet::of(s)).collect())
            .expect("invalid family literal")
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.sets.iter()
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.sets.contains(&s)
    }

    /// Members in colex order.
    pub fn sorted(&self) -> Family {
        let mut sets = self.sets.clone();
        sets.sort_unstable();
        Family {
            k: self.k,
            sets,
            ground: self.ground,
        }
    }

    /// Number of members containing `x`; `x` must lie in the ground set.
    pub fn degree(&self, x: u32) -> Result<usize> {
        if !self.ground.contains(x) {
            return domain(format!("element {x} is not in the ground set {}", self.ground));
        }
        Ok(self.sets.iter().filter(|s| s.contains(x)).count())
    }

    /// `(element, degree)` for every ground element, ascending by element.
    pub fn degrees(&self) -> Vec<(u32, usize)> {
        self.ground
            .iter()
            .map(|x| (x, self.sets.iter().filter(|s| s.contains(x)).count()))
            .collect()
    }

    /// Applies an element relabeling. `map[x]` is the new label of `x`.
    pub fn relabel(&self, map: &[u32]) -> Result<Family> {
        let sets = self
            .sets
            .iter()
            .map(|s| {
                let labels: Vec<u32> = s.iter().map(|x| map[x as usize]).collect();
                ElementSet::try_from_labels(&labels)
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(self.k, sets)
    }

    /// One set per line, labels space separated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            out.push_str(&s.to_line());
            out.push('\n');
        }
        out
    }

    /// Parses the family text format.
    ///
    /// Lines starting with `#` and blank lines are skipped. A repeated set,
    /// a repeated label within a line, or a size different from the first
    /// set is reported with its 1-based line number.
    pub fn parse(text: &str) -> Result<Family> {
        let mut sets = Vec::new();
        let mut seen = HashSet::new();
        let mut k = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let labels = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>()
                        .map_err(|_| err(format!("`{tok}` is not a decimal element label")))
                })
                .collect::<Result<Vec<_>>>()?;
            let set = ElementSet::try_from_labels(&labels).map_err(|e| match e {
                Error::Domain(m) => err(m),
                other => other,
            })?;
            match k {
                None => k = Some(set.len()),
                Some(k) if k != set.len() => {
                    return Err(err(format!("set has {} elements, expected {k}", set.len())))
                }
                _ => {}
            }
            if !seen.insert(set) {
                return Err(err(format!("duplicate set {set}")));
            }
            sets.push(set);
        }
        match k {
            Some(k) => Family::new(k, sets),
            None => Err(Error::Parse {
                line: 0,
                message: "no sets in input".into(),
            }),
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.sets.iter()).finish()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;
    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}
