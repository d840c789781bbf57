//! Fixed-width bit patterns for subsets of `[n] = {1, ..., n}`.
//!
//! Element `i` lives at bit `i - 1`. Trailing zero words are trimmed so
//! that equality and hashing do not depend on how a subset was built.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

type Words = SmallVec<[u64; 1]>;

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    words: Words,
}

impl Subset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `{1, ..., k}`.
    pub fn prefix(k: usize) -> Self {
        let mut words: Words = SmallVec::from_elem(u64::MAX, k / WORD_BITS);
        let rem = k % WORD_BITS;
        if rem > 0 {
            words.push((1u64 << rem) - 1);
        }
        Self { words }
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Self {
            words: SmallVec::from_elem(mask, 1),
        };
        s.trim();
        s
    }

    /// Builds a subset of `[n]` from 1-based elements.
    pub fn from_elements<I>(n: usize, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty();
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidInput(format!(
                    "element {e} is not in [1, {n}]"
                )));
            }
            s.insert(e);
        }
        Ok(s)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, element: usize) {
        debug_assert!(element >= 1);
        let bit = element - 1;
        let w = bit / WORD_BITS;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (bit % WORD_BITS);
    }

    pub fn remove(&mut self, element: usize) {
        debug_assert!(element >= 1);
        let bit = element - 1;
        let w = bit / WORD_BITS;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (bit % WORD_BITS));
            self.trim();
        }
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 {
            return false;
        }
        let bit = element - 1;
        self.words
            .get(bit / WORD_BITS)
            .is_some_and(|w| w & (1u64 << (bit % WORD_BITS)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => {
                (self.words.len() - 1) * WORD_BITS + (WORD_BITS - w.leading_zeros() as usize)
            }
        }
    }

    /// The low word; exact whenever every element is at most 64.
    pub fn low_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    /// `|self ∖ other|`.
    pub fn difference_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .enumerate()
            .map(|(i, &w)| (w & !other.word(i)).count_ones() as usize)
            .sum()
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let len = self.words.len().max(other.words.len());
        let mut s = Self {
            words: (0..len).map(|i| f(self.word(i), other.word(i))).collect(),
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// 1-based elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD_BITS + tz + 1)
            })
        })
    }

    /// Lexicographic order on the increasing element sequences.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }

    /// Applies a relabelling `element -> perm[element - 1]` (1-based images).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut s = Self::empty();
        for e in self.elements() {
            s.insert(perm[e - 1]);
        }
        s
    }

    /// Length-`n` 0/1 string; character `i` is `1` iff `i` is an element.
    pub fn to_bit_string(&self, n: usize) -> String {
        (1..=n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Characteristic 0/1 vector of a subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharVector(Vec<u8>);

impl CharVector {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.iter().any(|&e| e > 1) {
            return Err(Error::InvalidInput(
                "characteristic vectors have 0/1 entries".into(),
            ));
        }
        Ok(Self(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn dot(&self, other: &Self) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (a * b) as usize)
            .sum()
    }

    /// The subset whose characteristic vector this is.
    pub fn support(&self) -> Subset {
        let mut s = Subset::empty();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                s.insert(i + 1);
            }
        }
        s
    }
}

/// `v_F` for `F ⊆ [n]`.
pub fn char_vector(set: &Subset, n: usize) -> Result<CharVector> {
    if set.max_element() > n {
        return Err(Error::InvalidInput(format!(
            "element {} exceeds n = {n}",
            set.max_element()
        )));
    }
    Ok(CharVector(
        (1..=n).map(|i| u8::from(set.contains(i))).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::from_elements(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn trailing_words_do_not_affect_equality() {
        let mut a = s(100, &[3, 90]);
        a.remove(90);
        assert_eq!(a, s(5, &[3]));
        assert_eq!(a.max_element(), 3);
    }

    #[test]
    fn wide_elements_round_trip() {
        let a = s(130, &[1, 64, 65, 130]);
        assert_eq!(a.elements().collect::<Vec<_>>(), vec![1, 64, 65, 130]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.max_element(), 130);
        assert_eq!(Subset::prefix(65).len(), 65);
        assert_eq!(Subset::prefix(64).max_element(), 64);
    }

    #[test]
    fn rejects_out_of_range_elements() {
        assert!(Subset::from_elements(3, [4]).is_err());
        assert!(Subset::from_elements(3, [0]).is_err());
    }

    #[test]
    fn char_vector_examples() {
        assert_eq!(
            char_vector(&s(4, &[1, 3]), 4).unwrap().entries(),
            &[1, 0, 1, 0]
        );
        assert_eq!(
            char_vector(&Subset::empty(), 3).unwrap().entries(),
            &[0, 0, 0]
        );
        let f = char_vector(&s(3, &[1, 2]), 3).unwrap();
        let g = char_vector(&s(3, &[2, 3]), 3).unwrap();
        assert_eq!(f.dot(&g), 1);
        assert!(char_vector(&s(5, &[5]), 4).is_err());
    }

    #[test]
    fn lex_order_uses_elements() {
        assert_eq!(s(3, &[1, 3]).lex_cmp(&s(3, &[2, 3])), Ordering::Less);
        assert_eq!(s(3, &[1]).lex_cmp(&s(3, &[1, 2])), Ordering::Less);
    }
}
