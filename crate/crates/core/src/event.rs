//! Subsets of a finite universe `{0, .., n-1}` stored as packed bit vectors.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A subset of a finite universe of `universe_size` points.
///
/// Bits past `universe_size` are always zero, so equality and hashing are
/// plain word comparisons.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    universe_size: usize,
    words: Box<[u64]>,
}

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

impl Event {
    pub fn empty(universe_size: usize) -> Self {
        Event {
            universe_size,
            words: vec![0; word_count(universe_size)].into_boxed_slice(),
        }
    }

    pub fn full(universe_size: usize) -> Self {
        let mut e = Event::empty(universe_size);
        for w in e.words.iter_mut() {
            *w = u64::MAX;
        }
        e.mask_tail();
        e
    }

    /// Builds an event from member indices. Repeated indices are accepted.
    pub fn from_members<I>(universe_size: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut e = Event::empty(universe_size);
        for i in members {
            if i >= universe_size {
                return Err(Error::PointOutOfRange {
                    point: i,
                    universe_size,
                });
            }
            e.insert(i);
        }
        Ok(e)
    }

    /// Builds an event from a characteristic vector; bit `i` of the result is
    /// set iff `bits[i]` is true.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut e = Event::empty(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                e.insert(i);
            }
        }
        e
    }

    fn mask_tail(&mut self) {
        let rem = self.universe_size % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe_size, "point {i} out of range");
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe_size && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe_size
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        debug_assert_eq!(self.universe_size, other.universe_size);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Event) -> bool {
        debug_assert_eq!(self.universe_size, other.universe_size);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &Event, op: impl Fn(u64, u64) -> u64) -> Event {
        debug_assert_eq!(self.universe_size, other.universe_size);
        let mut e = Event {
            universe_size: self.universe_size,
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        };
        e.mask_tail();
        e
    }

    pub fn union(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Event) -> Event {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// `P \ self`.
    pub fn complement(&self) -> Event {
        let mut e = Event {
            universe_size: self.universe_size,
            words: self.words.iter().map(|w| !w).collect(),
        };
        e.mask_tail();
        e
    }

    /// Member indices in increasing order.
    pub fn members(&self) -> Members<'_> {
        Members {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<usize> {
        self.members().next()
    }
}

/// Iterator over the members of an [`Event`].
pub struct Members<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD_BITS + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

/// Canonical order: by cardinality, then lexicographically on the sorted
/// member lists. Universe size is the last tie-break so that the order stays
/// total across universes.
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                // Equal cardinality: the set holding the least element of the
                // symmetric difference has the lexicographically smaller list.
                for (a, b) in self.words.iter().zip(other.words.iter()) {
                    let diff = a ^ b;
                    if diff != 0 {
                        let bit = 1u64 << diff.trailing_zeros();
                        return if a & bit != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
            .then_with(|| self.universe_size.cmp(&other.universe_size))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}
