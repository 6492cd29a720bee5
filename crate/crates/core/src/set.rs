//! Subsets of a finite carrier `0..n`, stored as bitsets.

use std::cmp::Ordering;
use std::fmt;

/// A subset of `0..universe`.
///
/// Sets are ordered canonically: by size first, then lexicographically by
/// their sorted member lists. Every enumeration in the crate returns its
/// results in this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        Self::from_iter(universe, 0..universe)
    }

    /// The set `{0}`.
    pub fn zero(universe: usize) -> Self {
        Self::from_iter(universe, [0])
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut set = Self::empty(universe);
        for x in items {
            set.insert(x);
        }
        set
    }

    pub fn from_mask(universe: usize, mask: &[bool]) -> Self {
        Self::from_iter(universe, (0..universe).filter(|&i| mask[i]))
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.universe
    }

    /// True for `{0}` (and for the empty set, which never arises as a substructure).
    pub fn is_zero(&self) -> bool {
        self.len <= 1 && (self.len == 0 || self.contains(0))
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Inserts `x`, returning true if it was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let word = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Least member, if any.
    pub fn least(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & !b)
    }

    fn zip_with(&self, other: &ElementSet, f: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet {
            universe: self.universe,
            words,
            len,
        }
    }

    /// Image of the set under an index map.
    pub fn map(&self, universe: usize, f: impl Fn(usize) -> usize) -> ElementSet {
        ElementSet::from_iter(universe, self.iter().map(f))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl serde::Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
