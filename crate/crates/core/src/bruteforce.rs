//! Exhaustive reference enumeration: close every subset of the ground set.
//! Exponential in `N`; meant for cross-checking the engine on small inputs.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::{EnumerationReport, FlatRecord, RankLevel};
use crate::labels::SubsetLabel;
use crate::oracle::IndependenceOracle;

pub const DEFAULT_CAP: usize = 20;

/// Hard ceiling on any cap; subsets are counted in 64-bit words.
pub const MAX_CAP: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteForceError {
    #[error("ground set of {n} elements exceeds the brute-force cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0} is not a flat")]
    NotAFlat(String),
}

/// Every flat, with its pointer, grouped by rank (ranks `0..=d`).
pub fn brute_flats(oracle: &dyn IndependenceOracle, cap: usize) -> Result<EnumerationReport, BruteForceError> {
    let start = std::time::Instant::now();
    let before = oracle.queries();
    let n = oracle.ground_size();
    let cap = cap.min(MAX_CAP);
    if n > cap {
        return Err(BruteForceError::TooLarge { n, cap });
    }
    let mut flats: BTreeMap<SubsetLabel, usize> = BTreeMap::new();
    for bits in 0u128..1 << n {
        let subset = SubsetLabel::from_u128(bits);
        let closed = oracle.closure(&subset);
        flats.entry(closed).or_insert_with(|| oracle.rank(&closed));
    }
    let mut by_rank: BTreeMap<usize, Vec<FlatRecord>> = BTreeMap::new();
    for (members, rank) in flats {
        let pointer = minimal_basis(oracle, &members, rank);
        by_rank
            .entry(rank)
            .or_default()
            .push(FlatRecord { rank, pointer, members });
    }
    let levels: Vec<RankLevel> = by_rank
        .into_iter()
        .map(|(rank, mut flats)| {
            flats.sort_unstable_by_key(|f| f.pointer);
            RankLevel { rank, flats }
        })
        .collect();
    Ok(EnumerationReport {
        ground_size: n,
        rank: levels.last().map_or(0, |l| l.rank),
        levels,
        queries: oracle.queries() - before,
        elapsed: start.elapsed(),
    })
}

/// Smallest-label basis of a flat, found by scanning its `r`-subsets.
pub fn brute_pointer(oracle: &dyn IndependenceOracle, flat: &SubsetLabel) -> Result<SubsetLabel, BruteForceError> {
    if oracle.closure(flat) != *flat {
        return Err(BruteForceError::NotAFlat(flat.to_index_list()));
    }
    if flat.len() > MAX_CAP {
        return Err(BruteForceError::TooLarge {
            n: flat.len(),
            cap: MAX_CAP,
        });
    }
    let rank = oracle.rank(flat);
    Ok(minimal_basis(oracle, flat, rank))
}

fn minimal_basis(oracle: &dyn IndependenceOracle, flat: &SubsetLabel, rank: usize) -> SubsetLabel {
    let members = flat.indices();
    let m = members.len();
    if rank == 0 {
        return SubsetLabel::EMPTY;
    }
    // r-subsets of the members in increasing numeric order (Gosper's hack);
    // the first independent one has the smallest label
    let mut combo: u64 = (1u64 << rank) - 1;
    while combo < 1u64 << m {
        let candidate: SubsetLabel = (0..m).filter(|&i| combo >> i & 1 == 1).map(|i| members[i]).collect();
        if oracle.independent(&candidate) {
            return candidate;
        }
        let low = combo & combo.wrapping_neg();
        let ripple = combo + low;
        combo = (((ripple ^ combo) >> 2) / low) | ripple;
    }
    unreachable!("a flat of rank {rank} has a basis")
}
