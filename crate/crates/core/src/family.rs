//! Set families over `[n]`, distance specifications, skew distance and the
//! two pairwise properties built on it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{Subset, WORD_BITS};

/// Skew distance `min(|F ∖ G|, |G ∖ F|)`.
pub fn sd(f: &Subset, g: &Subset) -> usize {
    f.difference_len(g).min(g.difference_len(f))
}

/// A nonempty set `L` of allowed skew distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<usize>")]
pub struct DistanceSpec {
    values: BTreeSet<usize>,
}

impl From<DistanceSpec> for Vec<usize> {
    fn from(spec: DistanceSpec) -> Self {
        spec.values.into_iter().collect()
    }
}

impl DistanceSpec {
    pub fn new<I: IntoIterator<Item = usize>>(values: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for v in values {
            if !set.insert(v) {
                return Err(Error::InvalidInput(format!("distance {v} listed twice")));
            }
        }
        if set.is_empty() {
            return Err(Error::InvalidInput("distance set L is empty".into()));
        }
        Ok(Self { values: set })
    }

    /// `{lo, lo+1, ..., hi}`.
    pub fn range(lo: usize, hi: usize) -> Result<Self> {
        Self::new(lo..=hi)
    }

    /// Parses a comma-separated list such as `0,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad distance '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn contains(&self, d: usize) -> bool {
        self.values.contains(&d)
    }

    pub fn contains_zero(&self) -> bool {
        self.values.contains(&0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> usize {
        *self.values.iter().next_back().expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.values.is_subset(&other.values)
    }

    /// Every element must lie in `[0, n]`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.values.iter().find(|&&v| v > n) {
            Some(&value) => Err(Error::DistanceOutOfRange { value, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Ground-set size plus an ordered list of distinct subsets of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    sets: Vec<Subset>,
}

/// A pair of positions whose skew distance falls outside `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    pub distance: usize,
}

impl SetFamily {
    /// Single-word families (`n ≤ 64`).
    pub fn new(n: usize, sets: Vec<Subset>) -> Result<Self> {
        if n > WORD_BITS {
            return Err(Error::WidthLimit { n });
        }
        Self::new_wide(n, sets)
    }

    /// Same validation without the 64-element cap.
    pub fn new_wide(n: usize, sets: Vec<Subset>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "ground set size must be at least 1".into(),
            ));
        }
        let mut seen: HashMap<&Subset, usize> = HashMap::with_capacity(sets.len());
        for (idx, s) in sets.iter().enumerate() {
            if s.max_element() > n {
                return Err(Error::InvalidInput(format!(
                    "set {idx} contains element {} > n = {n}",
                    s.max_element()
                )));
            }
            if let Some(&first) = seen.get(s) {
                return Err(Error::DuplicateSet { first, second: idx });
            }
            seen.insert(s, idx);
        }
        Ok(Self { n, sets })
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| Subset::from_elements(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new_wide(n, sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &Subset) -> bool {
        self.sets.contains(set)
    }

    pub fn into_sets(self) -> Vec<Subset> {
        self.sets
    }

    /// First pair (in position order) with `sd ∉ L`.
    pub fn first_violation(&self, spec: &DistanceSpec) -> Option<PairViolation> {
        for (i, f) in self.sets.iter().enumerate() {
            for (j, g) in self.sets.iter().enumerate().skip(i + 1) {
                let d = sd(f, g);
                if !spec.contains(d) {
                    return Some(PairViolation { i, j, distance: d });
                }
            }
        }
        None
    }

    /// Parses the line-oriented family format, capped at `n ≤ 64`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, false)
    }

    pub fn parse_with(text: &str, wide: bool) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            match n {
                None => {
                    let rest = line
                        .strip_prefix("n ")
                        .ok_or_else(|| perr("expected header 'n <integer>'".into()))?;
                    let value = rest
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| perr(format!("bad ground-set size '{}'", rest.trim())))?;
                    n = Some(value);
                }
                Some(n) => {
                    if line.len() != n {
                        return Err(perr(format!(
                            "expected {n} characters, found {}",
                            line.len()
                        )));
                    }
                    let mut s = Subset::empty();
                    for (pos, ch) in line.chars().enumerate() {
                        match ch {
                            '1' => s.insert(pos + 1),
                            '0' => {}
                            other => return Err(perr(format!("unexpected character '{other}'"))),
                        }
                    }
                    sets.push(s);
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing header 'n <integer>'".into(),
        })?;
        if wide {
            Self::new_wide(n, sets)
        } else {
            Self::new(n, sets)
        }
    }

    /// Canonical text form; `parse(to_text())` is the identity.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Renames every element through a 1-based permutation of `[n]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new_wide(self.n, self.sets.iter().map(|s| s.permuted(perm)).collect())
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for s in &self.sets {
            writeln!(f, "{}", s.to_bit_string(self.n))?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Every pair of distinct sets has `sd ∈ L`, with `0 ∉ L` required.
pub fn is_close_sperner(fam: &SetFamily, spec: &DistanceSpec) -> Result<bool> {
    if spec.contains_zero() {
        return Err(Error::SpecMismatch);
    }
    Ok(fam.first_violation(spec).is_none())
}

/// Every pair of distinct sets has `sd ∈ L`; `0 ∈ L` allowed.
pub fn is_sd_family(fam: &SetFamily, spec: &DistanceSpec) -> bool {
    fam.first_violation(spec).is_none()
}

/// The set of realized pairwise skew distances.
pub fn sd_profile(fam: &SetFamily) -> Result<BTreeSet<usize>> {
    if fam.len() < 2 {
        return Err(Error::EmptyProfile(fam.len()));
    }
    let sets = fam.sets();
    let mut out = BTreeSet::new();
    for (i, f) in sets.iter().enumerate() {
        for g in &sets[i + 1..] {
            out.insert(sd(f, g));
        }
    }
    Ok(out)
}
