use std::time::Duration;

use super::{EnumerationReport, FlatRecord, RankLevel, Strategy};
use crate::labels::SubsetLabel;
use crate::linalg::RationalMatrix;
use crate::oracle::{IndependenceOracle, QueryCounter};

/// Loops and parallel classes of a matroid. The representative of a class is
/// its smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplificationMap {
    ground_size: usize,
    representatives: Vec<usize>,
    loops: SubsetLabel,
    // original element - 1 -> 1-based position among the representatives
    class_of: Vec<Option<usize>>,
    classes: Vec<SubsetLabel>,
}

impl SimplificationMap {
    pub fn identity(n: usize) -> Self {
        Self {
            ground_size: n,
            representatives: (1..=n).collect(),
            loops: SubsetLabel::EMPTY,
            class_of: (1..=n).map(Some).collect(),
            classes: (1..=n).map(SubsetLabel::singleton).collect(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Original indices of the representatives, ascending.
    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn loops(&self) -> SubsetLabel {
        self.loops
    }

    /// Parallel classes, one per representative, in representative order.
    pub fn classes(&self) -> &[SubsetLabel] {
        &self.classes
    }

    /// Position (1-based) of the class containing original element `index`,
    /// or `None` for loops.
    pub fn class_of(&self, index: usize) -> Option<usize> {
        self.class_of[index - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.loops.is_empty() && self.representatives.len() == self.ground_size
    }

    /// Original-index label of a set of representatives.
    pub fn lift_representatives(&self, simple: &SubsetLabel) -> SubsetLabel {
        simple.iter().map(|p| self.representatives[p - 1]).collect()
    }

    /// Union of the classes of a set of representatives, plus every loop.
    pub fn lift_flat(&self, simple: &SubsetLabel) -> SubsetLabel {
        simple.iter().fold(self.loops, |acc, p| acc.union(&self.classes[p - 1]))
    }
}

/// Finds loops and parallel classes. Matrix-backed oracles are analysed
/// directly on their columns unless `strategy` forces queries.
pub fn simplify(oracle: &dyn IndependenceOracle, strategy: Strategy) -> SimplificationMap {
    let n = oracle.ground_size();
    let matrix = oracle.matrix().filter(|_| strategy != Strategy::Generic);
    let independent = |set: SubsetLabel| match matrix {
        Some(m) => m.rank_of(&set) == set.len(),
        None => oracle.independent(&set),
    };
    let mut loops = SubsetLabel::EMPTY;
    let mut class_of = vec![None; n];
    let mut representatives = Vec::new();
    let mut classes = Vec::new();
    for i in 1..=n {
        if !independent(SubsetLabel::singleton(i)) {
            loops.insert(i);
        }
    }
    for i in 1..=n {
        if loops.contains(i) || class_of[i - 1].is_some() {
            continue;
        }
        representatives.push(i);
        let position = representatives.len();
        let mut class = SubsetLabel::singleton(i);
        class_of[i - 1] = Some(position);
        for j in i + 1..=n {
            if loops.contains(j) || class_of[j - 1].is_some() {
                continue;
            }
            if !independent(SubsetLabel::singleton(i).with(j)) {
                class.insert(j);
                class_of[j - 1] = Some(position);
            }
        }
        classes.push(class);
    }
    SimplificationMap {
        ground_size: n,
        representatives,
        loops,
        class_of,
        classes,
    }
}

/// The restriction of a matroid to the representatives of its parallel
/// classes, renumbered `1..=r` in ascending original order.
pub struct SimpleMatroid<'a> {
    inner: &'a dyn IndependenceOracle,
    representatives: Vec<usize>,
    matrix: Option<RationalMatrix>,
}

impl<'a> SimpleMatroid<'a> {
    pub fn new(inner: &'a dyn IndependenceOracle, map: &SimplificationMap) -> Self {
        let matrix = inner.matrix().map(|m| {
            m.select(map.representatives())
                .expect("representatives index existing columns")
        });
        Self {
            inner,
            representatives: map.representatives().to_vec(),
            matrix,
        }
    }
}

impl IndependenceOracle for SimpleMatroid<'_> {
    fn ground_size(&self) -> usize {
        self.representatives.len()
    }

    fn decide(&self, set: &SubsetLabel) -> bool {
        let lifted: SubsetLabel = set.iter().map(|p| self.representatives[p - 1]).collect();
        self.inner.decide(&lifted)
    }

    fn counter(&self) -> &QueryCounter {
        self.inner.counter()
    }

    fn matrix(&self) -> Option<&RationalMatrix> {
        self.matrix.as_ref()
    }
}

/// Maps flats of the simplified matroid back to the original ground set.
pub fn unsimplify(report: &EnumerationReport, map: &SimplificationMap) -> EnumerationReport {
    let levels = report
        .levels
        .iter()
        .map(|level| {
            let mut flats: Vec<FlatRecord> = level
                .flats
                .iter()
                .map(|f| FlatRecord {
                    rank: f.rank,
                    pointer: map.lift_representatives(&f.pointer),
                    members: map.lift_flat(&f.members),
                })
                .collect();
            flats.sort_unstable_by_key(|f| f.pointer);
            RankLevel {
                rank: level.rank,
                flats,
            }
        })
        .collect();
    EnumerationReport {
        ground_size: map.ground_size(),
        rank: report.rank,
        levels,
        queries: report.queries,
        elapsed: Duration::ZERO,
    }
}
