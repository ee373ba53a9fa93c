//! Enumeration of the flats of a finite matroid, and zonotope
//! H-representations built on top of it.
//!
//! A matroid on `{w_1, ..., w_N}` is given by an [`IndependenceOracle`]. The
//! engine walks the flats rank by rank through their *pointers*, the
//! smallest-label basis of each flat, so the work grows with the number of
//! flats rather than with `2^N`. Matrix-backed oracles additionally get a
//! path that shares row-echelon forms between sibling candidates and never
//! calls the boolean oracle.
//!
//! ```
//! use matroid_flats::{enumerate_flats, EnumerationOptions, RationalMatrix, VectorialOracle};
//!
//! let m = RationalMatrix::from_integer_columns(3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
//! let report = enumerate_flats(&VectorialOracle::new(m), &EnumerationOptions::default()).unwrap();
//! assert_eq!(report.counts(), vec![(0, 1), (1, 3), (2, 3), (3, 1)]);
//! ```
//!
//! Element order is significant: labels, and therefore pointers, are defined
//! relative to the order in which the ground set is supplied.

pub mod bruteforce;
pub mod cli;
pub mod engine;
pub mod labels;
pub mod linalg;
pub mod oracle;
mod par;
pub mod zonotope;

pub use engine::{
    enumerate_flats, enumerate_pointers, expand_flats, is_pointer, simplify, unsimplify, EngineError,
    EnumerationOptions, EnumerationReport, FlatRecord, RankLevel, SimplificationMap, Strategy,
};
pub use labels::{LabelError, SubsetLabel};
pub use linalg::{EchelonState, LinalgError, NumberPolicy, Rational, RationalMatrix};
pub use oracle::{GraphicOracle, IndependenceOracle, OpaqueOracle, QueryCounter, UniformOracle, VectorialOracle};
pub use zonotope::{hrep, membership, HRepresentation, HalfSpace, ZonotopeOptions};
