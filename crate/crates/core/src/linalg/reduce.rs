//! Fraction-free reduction of every column against an independent set.
//!
//! Forward Bareiss elimination pivots on the basis columns in ascending index
//! order. Every row still unused after a step has been scaled by the same
//! factor, so the unused-row part of a column is an integer multiple of its
//! residual modulo the span of the processed columns. Two columns outside
//! the span differ by an element of it plus a multiple of each other exactly
//! when those parts are proportional.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::RationalMatrix;
use crate::labels::SubsetLabel;

/// Relation of one element to an independent set `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Reduced {
    Member,
    /// In the span of the members of `B` with smaller index.
    PrefixSpan,
    /// In the span of `B`, but not of its smaller-index members.
    Span,
    /// Outside the span of `B`. Two elements share an id iff each lies in
    /// the span of `B` plus the other.
    Direction(usize),
}

trait Entry: Clone + Eq + Hash {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(a x - b y) / c`; the division is exact.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self, c: &Self) -> Option<Self>;
    /// Divides by the content and makes the first nonzero entry positive.
    fn make_primitive(v: &mut [Self]);
}

impl Entry for i128 {
    fn one() -> Self {
        1
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn cross(a: &Self, x: &Self, b: &Self, y: &Self, c: &Self) -> Option<Self> {
        Some(a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)? / c)
    }

    fn make_primitive(v: &mut [Self]) {
        let g = v.iter().fold(0i128, |g, x| g.gcd(x));
        let lead = v.iter().find(|x| **x != 0).copied().unwrap_or(1);
        let g = if lead < 0 { -g } else { g };
        if g != 0 && g != 1 {
            v.iter_mut().for_each(|x| *x /= g);
        }
    }
}

impl Entry for BigInt {
    fn one() -> Self {
        num_traits::One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cross(a: &Self, x: &Self, b: &Self, y: &Self, c: &Self) -> Option<Self> {
        Some((a * x - b * y) / c)
    }

    fn make_primitive(v: &mut [Self]) {
        let mut g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if v.iter().find(|x| !Zero::is_zero(*x)).is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        if !Zero::is_zero(&g) {
            v.iter_mut().for_each(|x| *x /= &g);
        }
    }
}

/// Classifies every element against the independent set `basis`. Entry
/// `k - 1` describes element `w_k`.
pub(crate) fn reduce_against(matrix: &RationalMatrix, basis: &SubsetLabel) -> Vec<Reduced> {
    if let Some(narrow) = matrix.narrow_columns() {
        if let Some(r) = reduce(narrow, matrix.dim(), basis) {
            return r;
        }
    }
    reduce(matrix.integer_columns(), matrix.dim(), basis).expect("big integers cannot overflow")
}

fn reduce<T: Entry>(columns: &[Vec<T>], dim: usize, basis: &SubsetLabel) -> Option<Vec<Reduced>> {
    let n = columns.len();
    // row-major copy; rows are what elimination touches
    let mut a: Vec<Vec<T>> = (0..dim)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut active: Vec<usize> = (0..dim).collect();
    let mut prev = T::one();
    let mut out = vec![Reduced::Span; n];
    let zero_in_active = |a: &[Vec<T>], active: &[usize], k: usize| active.iter().all(|&r| a[r][k].is_zero());

    let mut done = 0;
    for z in basis.iter() {
        for k in done + 1..z {
            if zero_in_active(&a, &active, k - 1) {
                out[k - 1] = Reduced::PrefixSpan;
            }
        }
        out[z - 1] = Reduced::Member;
        done = z;
        let col = z - 1;
        let pos = active.iter().position(|&r| !a[r][col].is_zero())?;
        let p = active.swap_remove(pos);
        let pivot = a[p][col].clone();
        let pivot_row = std::mem::take(&mut a[p]);
        for &i in &active {
            let factor = a[i][col].clone();
            let row = &mut a[i];
            for j in 0..n {
                if out[j] == Reduced::Member && j != col {
                    continue;
                }
                row[j] = T::cross(&pivot, &row[j], &factor, &pivot_row[j], &prev)?;
            }
        }
        a[p] = pivot_row;
        prev = pivot;
    }
    for k in done + 1..=n {
        if zero_in_active(&a, &active, k - 1) {
            out[k - 1] = Reduced::PrefixSpan;
        }
    }

    let mut directions: HashMap<Vec<T>, usize> = HashMap::new();
    for k in 0..n {
        if out[k] != Reduced::Span {
            continue;
        }
        let mut v: Vec<T> = active.iter().map(|&r| a[r][k].clone()).collect();
        if v.iter().all(T::is_zero) {
            continue;
        }
        T::make_primitive(&mut v);
        let next = directions.len();
        out[k] = Reduced::Direction(*directions.entry(v).or_insert(next));
    }
    Some(out)
}
