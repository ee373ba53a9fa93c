//! Rank-by-rank enumeration of flats through their pointers.
//!
//! The pointer of a flat is the label of its basis with the smallest label.
//! Clearing the leading digit of an `i`-pointer always yields an
//! `(i-1)`-pointer, so every `i`-pointer is found by setting one digit above
//! the leading digit of some `(i-1)`-pointer. Each such candidate has exactly
//! one parent, which keeps the generation free of duplicates; candidates that
//! are not pointers are rejected by a local exchange test (see
//! [`is_pointer`]).
//!
//! The engine requires a simple matroid. [`enumerate_flats`] wraps the whole
//! pipeline and handles loops and parallel elements by simplifying first and
//! mapping the flats back afterwards.

mod enumerate;
mod pointer;
mod simplify;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::labels::SubsetLabel;
use crate::oracle::IndependenceOracle;

pub use enumerate::{enumerate_pointers, expand_flats, PointerLevel, PointerSet};
pub use pointer::is_pointer;
pub use simplify::{simplify, unsimplify, SimpleMatroid, SimplificationMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("element {0} is a loop; simplify the matroid before enumerating")]
    Loop(usize),
    #[error("elements {0} and {1} are parallel; simplify the matroid before enumerating")]
    Parallel(usize, usize),
}

/// How pointer candidates are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Strategy {
    /// Echelon fast path when the oracle exposes a matrix, queries otherwise.
    #[default]
    Auto,
    /// Boolean oracle queries only.
    Generic,
    /// Shared row-echelon forms; needs a matrix-backed oracle.
    Echelon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Also report the rank-0 and rank-`d` flats.
    pub include_extremes: bool,
    pub strategy: Strategy,
    /// Check the candidates of a rank level concurrently. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            include_extremes: true,
            strategy: Strategy::Auto,
            parallel: true,
        }
    }
}

/// A flat, its pointer and its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FlatWire", into = "FlatWire")]
pub struct FlatRecord {
    pub rank: usize,
    pub pointer: SubsetLabel,
    pub members: SubsetLabel,
}

#[derive(Serialize, Deserialize)]
struct FlatWire {
    rank: usize,
    pointer: SubsetLabel,
    pointer_indices: Vec<usize>,
    members: Vec<usize>,
}

impl From<FlatRecord> for FlatWire {
    fn from(f: FlatRecord) -> Self {
        Self {
            rank: f.rank,
            pointer: f.pointer,
            pointer_indices: f.pointer.indices(),
            members: f.members.indices(),
        }
    }
}

impl TryFrom<FlatWire> for FlatRecord {
    type Error = String;

    fn try_from(w: FlatWire) -> Result<Self, String> {
        let to_label =
            |v: &[usize]| SubsetLabel::from_indices(v, crate::labels::MAX_ELEMENTS).map_err(|e| e.to_string());
        if to_label(&w.pointer_indices)? != w.pointer {
            return Err(format!(
                "pointer {} disagrees with pointer_indices {:?}",
                w.pointer, w.pointer_indices
            ));
        }
        Ok(Self {
            rank: w.rank,
            pointer: w.pointer,
            members: to_label(&w.members)?,
        })
    }
}

/// Flats of one rank, ascending by pointer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankLevel {
    pub rank: usize,
    pub flats: Vec<FlatRecord>,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub ground_size: usize,
    /// Rank of the whole ground set.
    pub rank: usize,
    /// Ascending by rank.
    pub levels: Vec<RankLevel>,
    pub queries: u64,
    pub elapsed: Duration,
}

impl EnumerationReport {
    /// `(rank, M_rank)` pairs.
    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.levels.iter().map(|l| (l.rank, l.flats.len())).collect()
    }

    /// Total number of flats `M`.
    pub fn total(&self) -> usize {
        self.levels.iter().map(|l| l.flats.len()).sum()
    }

    pub fn level(&self, rank: usize) -> Option<&[FlatRecord]> {
        self.levels.iter().find(|l| l.rank == rank).map(|l| l.flats.as_slice())
    }

    pub fn flats(&self) -> impl Iterator<Item = &FlatRecord> {
        self.levels.iter().flat_map(|l| l.flats.iter())
    }

    /// Same flats, ignoring query counts and timing.
    pub fn same_flats(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.rank == other.rank && self.levels == other.levels
    }
}

/// Simplify, enumerate, expand and map back to the original ground set.
pub fn enumerate_flats(
    oracle: &dyn IndependenceOracle,
    options: &EnumerationOptions,
) -> Result<EnumerationReport, EngineError> {
    let start = std::time::Instant::now();
    let before = oracle.queries();
    let map = simplify(oracle, options.strategy);
    let simple = SimpleMatroid::new(oracle, &map);
    let pointers = enumerate_pointers(&simple, options)?;
    let flats = expand_flats(&simple, &pointers, options);
    let mut report = unsimplify(&flats, &map);
    report.queries = oracle.queries() - before;
    report.elapsed = start.elapsed();
    Ok(report)
}
