//! Pointer acceptance.
//!
//! Let `X` be the set labelled `s` and `delta` its leading digit. `s` is a
//! pointer iff `X` is independent and every `w_k` outside `X` with
//! `k < delta` satisfies `w_k not in cl(X)` or `w_k in cl(Y_k)`, where `Y_k`
//! holds the members of `X` with index below `k`.

use crate::labels::SubsetLabel;
use crate::linalg::reduce::{reduce_against, Reduced};
use crate::linalg::{EchelonState, RationalMatrix};
use crate::oracle::IndependenceOracle;

/// Decides whether `s` is the pointer of the flat it spans. The matroid must
/// be simple and `s` nonempty.
///
/// With a matrix-backed oracle and the echelon form of `s` minus its leading
/// element, the check runs on that form and issues no oracle queries.
pub fn is_pointer(oracle: &dyn IndependenceOracle, s: &SubsetLabel, parent_echelon: Option<&EchelonState>) -> bool {
    match (oracle.matrix(), parent_echelon) {
        (Some(matrix), Some(parent)) => is_pointer_echelon(matrix, s, parent),
        _ => is_pointer_generic(oracle, s),
    }
}

pub(crate) fn is_pointer_generic(oracle: &dyn IndependenceOracle, s: &SubsetLabel) -> bool {
    let Some(delta) = s.max_index() else {
        return true;
    };
    if !oracle.independent(s) {
        return false;
    }
    (1..delta).filter(|&k| !s.contains(k)).all(|k| {
        // the independence test is a single query, so try it first
        oracle.independent(&s.with(k)) || !oracle.independent(&s.prefix_below(k).with(k))
    })
}

fn is_pointer_echelon(matrix: &RationalMatrix, s: &SubsetLabel, parent: &EchelonState) -> bool {
    let Some(delta) = s.max_index() else {
        return true;
    };
    let Ok((full, grew)) = parent.extend(matrix.column(delta)) else {
        return false;
    };
    if !grew || full.rank() != s.len() {
        return false;
    }
    let mut prefix = EchelonState::empty(matrix.dim());
    for k in 1..delta {
        let column = matrix.column(k);
        if s.contains(k) {
            prefix.push(column, Some(k)).expect("column length matches");
            continue;
        }
        // prefix form is warm from the sweep, so test membership there first
        if prefix.in_span(column).expect("column length matches") {
            continue;
        }
        if full.in_span(column).expect("column length matches") {
            return false;
        }
    }
    true
}

/// Candidates generated from `parent` that pass the generic check.
pub(crate) fn children_generic(oracle: &dyn IndependenceOracle, parent: &SubsetLabel) -> Vec<SubsetLabel> {
    let n = oracle.ground_size();
    let lead = parent.max_index().unwrap_or(0);
    (lead + 1..=n)
        .map(|delta| parent.with(delta))
        .filter(|s| is_pointer_generic(oracle, s))
        .collect()
}

/// Candidates generated from `parent` that pass the check, sharing one
/// reduction of the columns against `parent` across all of them.
///
/// For a candidate `X = Z + w_delta`, a column outside the span of `Z` lies
/// in the span of `X` iff its residual modulo `Z` is proportional to that of
/// `w_delta`. For `k < delta` the prefix `Y_k` never contains `w_delta`, so
/// prefix membership is computed once per parent.
pub(crate) fn children_echelon(matrix: &RationalMatrix, parent: &SubsetLabel) -> Vec<SubsetLabel> {
    let n = matrix.len();
    let lead = parent.max_index().unwrap_or(0);
    if lead == n {
        return Vec::new();
    }
    let reduced = reduce_against(matrix, parent);
    (lead + 1..=n)
        .filter(|&delta| {
            let Reduced::Direction(d) = reduced[delta - 1] else {
                return false;
            };
            !reduced[..delta - 1].iter().any(|r| match r {
                Reduced::Member | Reduced::PrefixSpan => false,
                Reduced::Span => true,
                Reduced::Direction(c) => *c == d,
            })
        })
        .map(|delta| parent.with(delta))
        .collect()
}
