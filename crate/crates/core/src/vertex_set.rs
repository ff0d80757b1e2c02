use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const WORDS: usize = 4;

/// Largest graph order representable by [`VertexSet`] (and therefore by
/// [`crate::Graph`]).
pub const MAX_ORDER: usize = WORDS * 64;

/// Index of a vertex. Vertices of a graph of order `n` are `0..n`.
pub type VertexId = usize;

/// A set of vertex ids below [`MAX_ORDER`], stored as a fixed-width bitset.
///
/// The set carries no ambient order of its own; operations that need one
/// (complement, range checks) take it from the graph they are applied to.
///
/// `Ord` is the lexicographic order of the ascending element sequences, so
/// `{0, 3} < {1}` and `{0} < {0, 1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet { words: [0; WORDS] }
    }

    /// The set `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
        let mut s = VertexSet::new();
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = VertexSet::new();
        s.words[0] = mask;
        s
    }

    /// The low 64 bits of the set.
    pub fn low_mask(&self) -> u64 {
        self.words[0]
    }

    #[inline]
    pub fn insert(&mut self, v: VertexId) -> bool {
        assert!(v < MAX_ORDER, "vertex {v} exceeds {MAX_ORDER}");
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: VertexId) -> bool {
        if v >= MAX_ORDER {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v < MAX_ORDER && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// True when the sets intersect but neither contains the other.
    pub fn overlaps(&self, other: &VertexSet) -> bool {
        !self.is_disjoint(other) && !self.is_subset(other) && !other.is_subset(self)
    }

    pub fn first(&self) -> Option<VertexId> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn last(&self) -> Option<VertexId> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter { words: self.words, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a VertexId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl Extend<VertexId> for VertexSet {
    fn extend<I: IntoIterator<Item = VertexId>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let b = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &VertexSet {
    type Item = VertexId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

macro_rules! bitop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for VertexSet {
            type Output = VertexSet;
            #[inline]
            #[allow(clippy::assign_op_pattern)]
            fn $f(mut self, rhs: VertexSet) -> VertexSet {
                for (a, b) in self.words.iter_mut().zip(rhs.words) {
                    *a = *a $op b;
                }
                self
            }
        }
        impl $atr for VertexSet {
            #[inline]
            fn $af(&mut self, rhs: VertexSet) {
                *self = *self $op rhs;
            }
        }
    };
}

bitop!(BitOr, bitor, BitOrAssign, bitor_assign, |);
bitop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);

impl BitXor for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn bitxor(mut self, rhs: VertexSet) -> VertexSet {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a ^= b;
        }
        self
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(mut self, rhs: VertexSet) -> VertexSet {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a &= !b;
        }
        self
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: VertexSet) {
        *self = *self - rhs;
    }
}

/// Complement within `0..MAX_ORDER`; intersect with [`VertexSet::full`] to
/// bring it back to a graph's vertex range.
impl Not for VertexSet {
    type Output = VertexSet;
    fn not(mut self) -> VertexSet {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<VertexId>::deserialize(deserializer)?;
        if let Some(&v) = items.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {v} exceeds {MAX_ORDER}")));
        }
        Ok(items.into_iter().collect())
    }
}
