//! Compact vertex sets over a fixed universe `0..n`.
//!
//! Sets over universes with at most 128 vertices live inline (two 64-bit
//! words); larger universes spill to the heap. Subset and intersection
//! tests cost one pass over the words.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// A subset of the vertex universe `0..n`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: u32,
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    /// The empty set over universe `0..n`.
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n: n as u32,
            words: smallvec::smallvec![0; words_for(n)],
        }
    }

    /// The full universe `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_elements(n: usize, elements: &[usize]) -> Self {
        let mut s = Self::empty(n);
        for &v in elements {
            s.insert(v);
        }
        s
    }

    /// Universe size (not the cardinality).
    pub fn universe(&self) -> usize {
        self.n as usize
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.n as usize,
            "vertex {} out of universe {}",
            v,
            self.n
        );
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(
            v < self.n as usize,
            "vertex {} out of universe {}",
            v,
            self.n
        );
        self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        if v >= self.n as usize {
            return false;
        }
        self.words[v / WORD_BITS] & (1 << (v % WORD_BITS)) != 0
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> VertexIter<'_> {
        VertexIter {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a vertex relabeling (`perm[old] = new`).
    pub fn permuted(&self, perm: &[usize]) -> VertexSet {
        let mut out = VertexSet::empty(self.n as usize);
        for v in self.iter() {
            out.insert(perm[v]);
        }
        out
    }
}

impl Ord for VertexSet {
    /// Orders sets as their ascending element lists (so `{0,1,2} < {0,2}`),
    /// which matches the order of the text file lines they serialize to.
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
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "}}")
    }
}

pub struct VertexIter<'a> {
    set: &'a VertexSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for VertexIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.set.words.len() {
                return None;
            }
            self.current = self.set.words[self.word_idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_idx * WORD_BITS + bit)
    }
}
