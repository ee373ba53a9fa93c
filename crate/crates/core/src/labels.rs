//! Subsets of the ground set encoded as binary labels.
//!
//! Element `w_i` (1-based, in input order) is bit `i - 1` of the label, so the
//! numeric value of a label is `L(X) = sum of 2^(i-1)` over the members of `X`.
//! Comparing labels compares these numbers, which gives the total order used to
//! pick the representative basis (the *pointer*) of every flat.
//!
//! The ground-set order is part of the contract: pointers are only meaningful
//! relative to the order in which the elements were supplied.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const WORDS: usize = 4;

/// Largest supported ground-set size.
pub const MAX_ELEMENTS: usize = WORDS * 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("element index {index} is outside 1..={capacity}")]
    OutOfRange { index: usize, capacity: usize },
    #[error("element index {0} appears more than once")]
    Duplicate(usize),
    #[error("operation requires a nonempty label")]
    Empty,
    #[error("cannot parse label {0:?}")]
    Parse(String),
}

/// A subset of `{w_1, ..., w_N}` with `N <= MAX_ELEMENTS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetLabel {
    words: [u64; WORDS],
}

impl SubsetLabel {
    pub const EMPTY: SubsetLabel = SubsetLabel { words: [0; WORDS] };

    /// Builds the label of `{w_i : i in members}` after checking every index
    /// against the ground size `n`.
    pub fn from_indices(members: &[usize], n: usize) -> Result<Self, LabelError> {
        let capacity = n.min(MAX_ELEMENTS);
        let mut label = Self::EMPTY;
        for &index in members {
            if index == 0 || index > capacity {
                return Err(LabelError::OutOfRange { index, capacity });
            }
            if label.contains(index) {
                return Err(LabelError::Duplicate(index));
            }
            label.insert(index);
        }
        Ok(label)
    }

    /// `{w_1, ..., w_n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} exceeds {MAX_ELEMENTS}");
        let mut label = Self::EMPTY;
        for (w, word) in label.words.iter_mut().enumerate() {
            let lo = w * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        label
    }

    pub fn singleton(index: usize) -> Self {
        let mut label = Self::EMPTY;
        label.insert(index);
        label
    }

    /// Label with numeric value `value`.
    pub fn from_u128(value: u128) -> Self {
        let mut label = Self::EMPTY;
        label.words[0] = value as u64;
        label.words[1] = (value >> 64) as u64;
        label
    }

    /// Numeric value, if it fits.
    pub fn to_u128(&self) -> Option<u128> {
        if self.words[2..].iter().any(|&w| w != 0) {
            return None;
        }
        Some(self.words[0] as u128 | (self.words[1] as u128) << 64)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of members, `|X|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        debug_assert!((1..=MAX_ELEMENTS).contains(&index));
        let bit = index - 1;
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, index: usize) {
        assert!(
            (1..=MAX_ELEMENTS).contains(&index),
            "element index {index} out of range"
        );
        let bit = index - 1;
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    #[inline]
    pub fn remove(&mut self, index: usize) {
        assert!(
            (1..=MAX_ELEMENTS).contains(&index),
            "element index {index} out of range"
        );
        let bit = index - 1;
        self.words[bit / 64] &= !(1 << (bit % 64));
    }

    #[inline]
    pub fn with(mut self, index: usize) -> Self {
        self.insert(index);
        self
    }

    #[inline]
    pub fn without(mut self, index: usize) -> Self {
        self.remove(index);
        self
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(other.words).all(|(a, b)| a & !b == 0)
    }

    /// Position of the most significant set bit, i.e. the largest member index.
    pub fn leading_digit(&self) -> Result<usize, LabelError> {
        self.max_index().ok_or(LabelError::Empty)
    }

    pub fn max_index(&self) -> Option<usize> {
        (0..WORDS)
            .rev()
            .find(|&w| self.words[w] != 0)
            .map(|w| w * 64 + 64 - self.words[w].leading_zeros() as usize)
    }

    /// The label with its leading digit replaced by zero.
    pub fn clear_leading(&self) -> Result<Self, LabelError> {
        let lead = self.leading_digit()?;
        Ok(self.without(lead))
    }

    /// The `n - l` labels obtained by setting one digit `delta` in `l+1..=n`,
    /// where `l` is the leading digit. Ascending order.
    pub fn expansions(&self, n: usize) -> Result<Vec<Self>, LabelError> {
        let lead = self.leading_digit()?;
        Ok((lead + 1..=n.min(MAX_ELEMENTS)).map(|delta| self.with(delta)).collect())
    }

    /// Members with index strictly below `k`.
    pub fn prefix_below(&self, k: usize) -> Self {
        let mut out = Self::EMPTY;
        let bits = k.saturating_sub(1).min(MAX_ELEMENTS);
        for (w, word) in out.words.iter_mut().enumerate() {
            let lo = w * 64;
            if bits >= lo + 64 {
                *word = self.words[w];
            } else if bits > lo {
                *word = self.words[w] & ((1u64 << (bits - lo)) - 1);
            }
        }
        out
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> Members {
        Members {
            words: self.words,
            word: 0,
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lowercase binary with `w_1` rightmost, prefixed by `0b`.
    pub fn to_binary_string(&self) -> String {
        match self.max_index() {
            None => "0b0".to_owned(),
            Some(top) => {
                let mut s = String::with_capacity(top + 2);
                s.push_str("0b");
                for i in (1..=top).rev() {
                    s.push(if self.contains(i) { '1' } else { '0' });
                }
                s
            }
        }
    }

    /// Same as `to_binary_string`, zero-padded to `n` digits.
    pub fn to_padded_binary(&self, n: usize) -> String {
        let width = n.max(self.max_index().unwrap_or(1));
        let mut s = String::with_capacity(width + 2);
        s.push_str("0b");
        for i in (1..=width).rev() {
            s.push(if self.contains(i) { '1' } else { '0' });
        }
        s
    }

    /// `[1,3,7]`.
    pub fn to_index_list(&self) -> String {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl Ord for SubsetLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for SubsetLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

impl fmt::Debug for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetLabel({})", self.to_index_list())
    }
}

/// Accepts `0b1000101` or `[1,3,7]`.
impl FromStr for SubsetLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_err = || LabelError::Parse(s.to_owned());
        if let Some(digits) = s.strip_prefix("0b") {
            if digits.is_empty() {
                return Err(parse_err());
            }
            let mut label = Self::EMPTY;
            for (pos, c) in digits.chars().rev().enumerate() {
                match c {
                    '0' => {}
                    '1' if pos < MAX_ELEMENTS => label.insert(pos + 1),
                    _ => return Err(parse_err()),
                }
            }
            Ok(label)
        } else if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return Ok(Self::EMPTY);
            }
            let indices = inner
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| parse_err()))
                .collect::<Result<Vec<_>, _>>()?;
            Self::from_indices(&indices, MAX_ELEMENTS)
        } else {
            Err(parse_err())
        }
    }
}

impl Serialize for SubsetLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_binary_string())
    }
}

impl<'de> Deserialize<'de> for SubsetLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ascending iterator over member indices.
pub struct Members {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + bit + 1);
            }
            self.word += 1;
        }
        None
    }
}

impl FromIterator<usize> for SubsetLabel {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut label = Self::EMPTY;
        for i in iter {
            label.insert(i);
        }
        label
    }
}
