use std::time::{Duration, Instant};

use super::pointer::{children_echelon, children_generic};
use super::{EngineError, EnumerationOptions, EnumerationReport, FlatRecord, RankLevel, Strategy};
use crate::labels::SubsetLabel;
use crate::linalg::reduce::{reduce_against, Reduced};
use crate::linalg::{EchelonState, RationalMatrix};
use crate::oracle::IndependenceOracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointerLevel {
    pub rank: usize,
    /// Ascending.
    pub pointers: Vec<SubsetLabel>,
}

/// Pointers of a simple matroid, grouped by rank.
#[derive(Debug, Clone)]
pub struct PointerSet {
    pub ground_size: usize,
    pub rank: usize,
    pub levels: Vec<PointerLevel>,
    /// The path actually taken (never `Auto`).
    pub strategy: Strategy,
    pub queries: u64,
    pub elapsed: Duration,
}

impl PointerSet {
    pub fn level(&self, rank: usize) -> Option<&[SubsetLabel]> {
        self.levels
            .iter()
            .find(|l| l.rank == rank)
            .map(|l| l.pointers.as_slice())
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(|l| l.pointers.len()).sum()
    }
}

fn resolve(oracle: &dyn IndependenceOracle, strategy: Strategy) -> (Strategy, Option<&RationalMatrix>) {
    match (strategy, oracle.matrix()) {
        (Strategy::Generic, _) | (_, None) => (Strategy::Generic, None),
        (_, Some(m)) => (Strategy::Echelon, Some(m)),
    }
}

fn check_simple(oracle: &dyn IndependenceOracle, matrix: Option<&RationalMatrix>) -> Result<(), EngineError> {
    let n = oracle.ground_size();
    let independent = |set: SubsetLabel| match matrix {
        Some(m) => m.rank_of(&set) == set.len(),
        None => oracle.independent(&set),
    };
    for i in 1..=n {
        if !independent(SubsetLabel::singleton(i)) {
            return Err(EngineError::Loop(i));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if !independent(SubsetLabel::singleton(i).with(j)) {
                return Err(EngineError::Parallel(i, j));
            }
        }
    }
    Ok(())
}

/// Generates the pointers of every rank of a simple matroid.
///
/// Rank-1 pointers are the singletons; rank-`i` pointers for `i` up to `d-1`
/// come from expanding the rank-`(i-1)` pointers. With `include_extremes` the
/// rank-0 pointer (empty set) and the rank-`d` pointer (greedy basis of the
/// ground set) are added.
pub fn enumerate_pointers(
    oracle: &dyn IndependenceOracle,
    options: &EnumerationOptions,
) -> Result<PointerSet, EngineError> {
    let start = Instant::now();
    let before = oracle.queries();
    let n = oracle.ground_size();
    let (strategy, matrix) = resolve(oracle, options.strategy);
    check_simple(oracle, matrix)?;

    let full = SubsetLabel::full(n);
    let rank = match matrix {
        Some(m) => m.rank_of(&full),
        None => oracle.matroid_rank(),
    };

    let mut levels = Vec::new();
    if options.include_extremes {
        levels.push(PointerLevel {
            rank: 0,
            pointers: vec![SubsetLabel::EMPTY],
        });
    }
    if rank >= 2 {
        let mut frontier: Vec<SubsetLabel> = (1..=n).map(SubsetLabel::singleton).collect();
        log::info!("rank 1: {} pointers", frontier.len());
        for i in 2..rank {
            let mut next = match matrix {
                Some(m) => crate::par::flat_map(&frontier, options.parallel, |p| children_echelon(m, p)),
                None => crate::par::flat_map(&frontier, options.parallel, |p| children_generic(oracle, p)),
            };
            next.sort_unstable();
            log::info!("rank {i}: {} pointers", next.len());
            let finished = std::mem::replace(&mut frontier, next);
            levels.push(PointerLevel {
                rank: i - 1,
                pointers: finished,
            });
        }
        levels.push(PointerLevel {
            rank: rank - 1,
            pointers: frontier,
        });
    }
    if options.include_extremes && rank > 0 {
        let basis = match matrix {
            Some(m) => {
                let mut state = EchelonState::empty(m.dim());
                let mut basis = SubsetLabel::EMPTY;
                for i in 1..=n {
                    if state.push(m.column(i), Some(i)).expect("column length matches") {
                        basis.insert(i);
                    }
                }
                basis
            }
            None => oracle.basis_of(&full),
        };
        levels.push(PointerLevel {
            rank,
            pointers: vec![basis],
        });
    }

    Ok(PointerSet {
        ground_size: n,
        rank,
        levels,
        strategy,
        queries: oracle.queries() - before,
        elapsed: start.elapsed(),
    })
}

/// Fills in the members of every flat from its pointer.
pub fn expand_flats(
    oracle: &dyn IndependenceOracle,
    pointers: &PointerSet,
    options: &EnumerationOptions,
) -> EnumerationReport {
    let start = Instant::now();
    let before = oracle.queries();
    let n = pointers.ground_size;
    let matrix = match pointers.strategy {
        Strategy::Generic => None,
        _ => oracle.matrix(),
    };
    let close = |p: &SubsetLabel| -> SubsetLabel {
        let mut members = *p;
        match matrix {
            Some(m) => {
                for (w, r) in (1..=n).zip(reduce_against(m, p)) {
                    if matches!(r, Reduced::PrefixSpan | Reduced::Span) {
                        members.insert(w);
                    }
                }
            }
            // a pointer is independent, so w is in its closure iff p + w is dependent
            None => {
                for w in (1..=n).filter(|&w| !p.contains(w)) {
                    if !oracle.independent(&p.with(w)) {
                        members.insert(w);
                    }
                }
            }
        }
        members
    };
    let levels = pointers
        .levels
        .iter()
        .map(|level| RankLevel {
            rank: level.rank,
            flats: crate::par::map(&level.pointers, options.parallel, |p| FlatRecord {
                rank: level.rank,
                pointer: *p,
                members: close(p),
            }),
        })
        .collect();
    EnumerationReport {
        ground_size: n,
        rank: pointers.rank,
        levels,
        queries: pointers.queries + (oracle.queries() - before),
        elapsed: pointers.elapsed + start.elapsed(),
    }
}
