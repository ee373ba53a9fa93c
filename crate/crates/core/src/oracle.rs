//! Independence oracles.
//!
//! A matroid is presented to the engine as a boolean decision procedure on
//! subsets of `{w_1, ..., w_N}`. Rank, bases and closure are derived from that
//! procedure alone, so any type implementing [`IndependenceOracle`] can be
//! enumerated. Every counted call goes through a shared [`QueryCounter`].

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::labels::SubsetLabel;
use crate::linalg::{columns_independent, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("subset {label} contains element {index} but the ground set has {ground_size} elements")]
    OutOfRange {
        label: String,
        index: usize,
        ground_size: usize,
    },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("uniform matroid: {0}")]
    Uniform(String),
}

/// Exact tally of oracle calls. Safe to bump from many threads.
#[derive(Debug, Default)]
pub struct QueryCounter(AtomicU64);

impl QueryCounter {
    #[inline]
    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.0.store(0, Ordering::Relaxed);
    }
}

/// The independence predicate of a matroid on `ground_size()` elements.
///
/// Implementations must satisfy the matroid axioms: the empty set is
/// independent, subsets of independent sets are independent, and a smaller
/// independent set can always be augmented from a larger one.
pub trait IndependenceOracle: Sync {
    fn ground_size(&self) -> usize;

    /// Uncounted decision. Callers outside this trait should use
    /// [`independent`](Self::independent) or [`query`](Self::query).
    fn decide(&self, set: &SubsetLabel) -> bool;

    fn counter(&self) -> &QueryCounter;

    /// Column representation, for oracles backed by vectors. Enables the
    /// echelon fast path in the engine.
    fn matrix(&self) -> Option<&RationalMatrix> {
        None
    }

    /// Counted decision; `set` must lie within the ground set.
    #[inline]
    fn independent(&self, set: &SubsetLabel) -> bool {
        debug_assert!(set.max_index().unwrap_or(0) <= self.ground_size());
        self.counter().bump();
        self.decide(set)
    }

    /// Counted decision with a range check.
    fn query(&self, set: &SubsetLabel) -> Result<bool, OracleError> {
        check_range(set, self.ground_size())?;
        Ok(self.independent(set))
    }

    fn queries(&self) -> u64 {
        self.counter().get()
    }

    /// Greedy basis of `set`, scanning members in ascending index order. This
    /// is also the basis of `set` with the smallest label.
    fn basis_of(&self, set: &SubsetLabel) -> SubsetLabel {
        let mut basis = SubsetLabel::EMPTY;
        for i in set.iter() {
            let candidate = basis.with(i);
            if self.independent(&candidate) {
                basis = candidate;
            }
        }
        basis
    }

    fn rank(&self, set: &SubsetLabel) -> usize {
        self.basis_of(set).len()
    }

    /// All elements whose addition leaves the rank of `set` unchanged.
    fn closure(&self, set: &SubsetLabel) -> SubsetLabel {
        let basis = self.basis_of(set);
        let mut cl = *set;
        for w in 1..=self.ground_size() {
            if !set.contains(w) && !self.independent(&basis.with(w)) {
                cl.insert(w);
            }
        }
        cl
    }

    fn matroid_rank(&self) -> usize {
        self.rank(&SubsetLabel::full(self.ground_size()))
    }
}

pub(crate) fn check_range(set: &SubsetLabel, ground_size: usize) -> Result<(), OracleError> {
    match set.max_index() {
        Some(index) if index > ground_size => Err(OracleError::OutOfRange {
            label: set.to_string(),
            index,
            ground_size,
        }),
        _ => Ok(()),
    }
}

/// `U_{k,n}`: every set of at most `k` elements is independent.
#[derive(Debug, Default)]
pub struct UniformOracle {
    n: usize,
    k: usize,
    counter: QueryCounter,
}

impl UniformOracle {
    pub fn new(k: usize, n: usize) -> Self {
        Self {
            n,
            k,
            counter: QueryCounter::default(),
        }
    }

    /// Parses `"k,n"`.
    pub fn parse(text: &str) -> Result<Self, OracleError> {
        let bad = || OracleError::Uniform(format!("expected \"k,n\", got {text:?}"));
        let (k, n) = text.split_once(',').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n > crate::labels::MAX_ELEMENTS {
            return Err(OracleError::Uniform(format!(
                "n = {n} exceeds {}",
                crate::labels::MAX_ELEMENTS
            )));
        }
        Ok(Self::new(k, n))
    }

    pub fn rank_cap(&self) -> usize {
        self.k
    }
}

impl IndependenceOracle for UniformOracle {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn decide(&self, set: &SubsetLabel) -> bool {
        set.len() <= self.k
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

/// Cycle matroid of a multigraph: an edge set is independent iff it is a forest.
#[derive(Debug, Default)]
pub struct GraphicOracle {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    counter: QueryCounter,
}

impl GraphicOracle {
    /// Edges use 1-based vertex numbers; edge `i` of the list is element `w_i`.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges
                .iter()
                .all(|&(u, v)| (1..=vertices).contains(&u) && (1..=vertices).contains(&v)),
            "edge endpoint outside 1..={vertices}"
        );
        assert!(edges.len() <= crate::labels::MAX_ELEMENTS, "too many edges");
        Self {
            vertices,
            edges,
            counter: QueryCounter::default(),
        }
    }

    /// Complete graph `K_n` with edges in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
        Self::new(n, edges)
    }

    /// One `u v` pair per line; `#` starts a comment. The vertex count is the
    /// largest vertex mentioned.
    pub fn parse_edge_list(text: &str) -> Result<Self, OracleError> {
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| OracleError::EdgeList {
                line: lineno + 1,
                message,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(err(format!("expected \"u v\", got {line:?}")));
            };
            let parse_vertex = |s: &str| match s.parse::<usize>() {
                Ok(0) | Err(_) => Err(err(format!("vertex {s:?} is not a positive integer"))),
                Ok(x) => Ok(x),
            };
            edges.push((parse_vertex(u)?, parse_vertex(v)?));
        }
        if edges.len() > crate::labels::MAX_ELEMENTS {
            return Err(OracleError::EdgeList {
                line: edges.len(),
                message: format!("more than {} edges", crate::labels::MAX_ELEMENTS),
            });
        }
        let vertices = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        Ok(Self::new(vertices, edges))
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl IndependenceOracle for GraphicOracle {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn decide(&self, set: &SubsetLabel) -> bool {
        let mut forest = DisjointSets::new(self.vertices + 1);
        set.iter().all(|e| {
            let (u, v) = self.edges[e - 1];
            forest.union(u, v)
        })
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Column matroid of a rational matrix: a set is independent iff its columns
/// are linearly independent over the rationals.
#[derive(Debug)]
pub struct VectorialOracle {
    matrix: RationalMatrix,
    counter: QueryCounter,
}

impl VectorialOracle {
    pub fn new(matrix: RationalMatrix) -> Self {
        Self {
            matrix,
            counter: QueryCounter::default(),
        }
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.matrix
    }
}

impl IndependenceOracle for VectorialOracle {
    fn ground_size(&self) -> usize {
        self.matrix.len()
    }

    fn decide(&self, set: &SubsetLabel) -> bool {
        columns_independent(&self.matrix, set)
    }

    fn counter(&self) -> &QueryCounter {
        &self.counter
    }

    fn matrix(&self) -> Option<&RationalMatrix> {
        Some(&self.matrix)
    }
}

/// Hides the column representation of another oracle so the engine takes the
/// generic query path.
pub struct OpaqueOracle<'a>(pub &'a dyn IndependenceOracle);

impl IndependenceOracle for OpaqueOracle<'_> {
    fn ground_size(&self) -> usize {
        self.0.ground_size()
    }

    fn decide(&self, set: &SubsetLabel) -> bool {
        self.0.decide(set)
    }

    fn counter(&self) -> &QueryCounter {
        self.0.counter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> SubsetLabel {
        v.iter().copied().collect()
    }

    fn subsets(n: usize) -> impl Iterator<Item = SubsetLabel> {
        (0u128..1 << n).map(SubsetLabel::from_u128)
    }

    /// Axioms checked over every pair of subsets.
    fn assert_matroid(oracle: &dyn IndependenceOracle) {
        let n = oracle.ground_size();
        let indep: Vec<bool> = subsets(n).map(|x| oracle.decide(&x)).collect();
        assert!(indep[0], "empty set must be independent");
        for a in 0..1usize << n {
            if !indep[a] {
                continue;
            }
            for b in 0..1usize << n {
                if b & !a == 0 {
                    assert!(indep[b], "hereditarity fails for {b:b} in {a:b}");
                }
                if indep[b] && a.count_ones() < b.count_ones() {
                    let augmentable = (0..n).any(|i| b >> i & 1 == 1 && a >> i & 1 == 0 && indep[a | 1 << i]);
                    assert!(augmentable, "augmentation fails for {a:b} from {b:b}");
                }
            }
        }
    }

    #[test]
    fn query_examples() {
        let u = UniformOracle::new(2, 3);
        assert_eq!(u.query(&s(&[1, 2, 3])), Ok(false));
        let k3 = GraphicOracle::new(3, vec![(1, 2), (2, 3), (3, 1)]);
        assert_eq!(k3.query(&s(&[1, 2, 3])), Ok(false));
        assert_eq!(k3.query(&s(&[1, 2])), Ok(true));
        let v = VectorialOracle::new(RationalMatrix::from_integer_columns(2, &[[1, 0], [2, 0], [0, 1]]).unwrap());
        assert_eq!(v.query(&s(&[1, 2])), Ok(false));
        assert!(matches!(
            v.query(&s(&[4])),
            Err(OracleError::OutOfRange { index: 4, .. })
        ));
        assert_eq!(v.queries(), 1, "out-of-range queries are not counted");
    }

    #[test]
    fn counter_tallies_every_query() {
        let u = UniformOracle::new(2, 5);
        for _ in 0..7 {
            u.query(&s(&[1])).unwrap();
        }
        assert_eq!(u.queries(), 7);
        u.counter().reset();
        assert_eq!(u.queries(), 0);
    }

    #[test]
    fn rank_examples() {
        let v = VectorialOracle::new(RationalMatrix::from_integer_columns(2, &[[1, 0], [2, 0], [0, 1]]).unwrap());
        assert_eq!(v.rank(&s(&[1, 2])), 1);
        assert_eq!(v.rank(&SubsetLabel::EMPTY), 0);
        assert_eq!(UniformOracle::new(2, 4).rank(&SubsetLabel::EMPTY), 0);
        assert_eq!(GraphicOracle::complete(4).rank(&SubsetLabel::full(6)), 3);
    }

    #[test]
    fn k4_rank_by_brute_force() {
        // largest acyclic edge subset, found without the greedy routine
        let k4 = GraphicOracle::complete(4);
        let best = subsets(6).filter(|x| k4.decide(x)).map(|x| x.len()).max().unwrap();
        assert_eq!(best, 3);
        assert_eq!(k4.matroid_rank(), 3);
    }

    #[test]
    fn closure_examples() {
        let v = VectorialOracle::new(
            RationalMatrix::from_integer_columns(3, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap(),
        );
        assert_eq!(v.closure(&s(&[1, 2])), s(&[1, 2, 3]));
        assert_eq!(v.closure(&s(&[1, 2, 3])), s(&[1, 2, 3]));
        assert_eq!(v.closure(&s(&[4])), s(&[4]));
        let u = UniformOracle::new(2, 3);
        assert_eq!(u.closure(&s(&[1, 2])), s(&[1, 2, 3]));
    }

    #[test]
    fn matroid_rank_examples() {
        assert_eq!(UniformOracle::new(3, 5).matroid_rank(), 3);
        let id =
            VectorialOracle::new(RationalMatrix::from_integer_columns(3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap());
        assert_eq!(id.matroid_rank(), 3);
        assert_eq!(GraphicOracle::complete(4).matroid_rank(), 3);
    }

    #[test]
    fn shipped_oracles_are_matroids() {
        for k in 0..=5 {
            assert_matroid(&UniformOracle::new(k, 5));
        }
        assert_matroid(&GraphicOracle::complete(5));
        assert_matroid(&GraphicOracle::new(
            4,
            vec![(1, 2), (1, 2), (2, 3), (3, 3), (3, 4), (4, 1), (2, 4)],
        ));
        assert_matroid(&VectorialOracle::new(
            RationalMatrix::from_integer_columns(
                3,
                &[
                    [1, 0, 0],
                    [0, 1, 0],
                    [1, 1, 0],
                    [0, 0, 0],
                    [2, 0, 0],
                    [1, 2, 3],
                    [0, 1, 1],
                    [3, 3, 0],
                    [1, -1, 2],
                    [0, 0, 5],
                ],
            )
            .unwrap(),
        ));
    }

    #[test]
    fn closure_axioms() {
        let g = GraphicOracle::new(5, vec![(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 3), (1, 4), (2, 2)]);
        let n = g.ground_size();
        let cls: Vec<SubsetLabel> = subsets(n).map(|x| g.closure(&x)).collect();
        for (a, ca) in subsets(n).zip(&cls) {
            assert!(a.is_subset(ca));
            assert_eq!(g.closure(ca), *ca);
            assert_eq!(g.rank(ca), g.rank(&a));
            for (b, cb) in subsets(n).zip(&cls) {
                if a.is_subset(&b) {
                    assert!(ca.is_subset(cb));
                    if g.rank(&a) == g.rank(&b) {
                        assert_eq!(ca, cb);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_list_parsing() {
        let g = GraphicOracle::parse_edge_list("# K3\n1 2\n2 3\n\n3 1 # closing edge\n").unwrap();
        assert_eq!(g.vertices(), 3);
        assert_eq!(g.edges(), &[(1, 2), (2, 3), (3, 1)]);
        assert!(matches!(
            GraphicOracle::parse_edge_list("1 2\n0 3\n"),
            Err(OracleError::EdgeList { line: 2, .. })
        ));
        assert!(GraphicOracle::parse_edge_list("1 2 3\n").is_err());
        assert!(GraphicOracle::parse_edge_list("a b\n").is_err());
    }

    #[test]
    fn uniform_spec() {
        let u = UniformOracle::parse("3, 5").unwrap();
        assert_eq!((u.rank_cap(), u.ground_size()), (3, 5));
        assert!(UniformOracle::parse("3").is_err());
        assert!(UniformOracle::parse("x,5").is_err());
    }

    #[test]
    fn counter_is_shared_across_threads() {
        let u = UniformOracle::new(2, 4);
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| {
                    for _ in 0..1000 {
                        u.independent(&s(&[1, 2]));
                    }
                });
            }
        });
        assert_eq!(u.queries(), 4000);
    }
}
