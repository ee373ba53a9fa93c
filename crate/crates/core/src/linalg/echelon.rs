use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, Rational, RationalMatrix};
use crate::labels::SubsetLabel;

#[derive(Debug, Clone)]
struct PivotRow {
    pivot: usize,
    // entries before `pivot` are zero, `entries[pivot]` is one
    entries: Arc<[Rational]>,
}

/// Row-echelon form of a set of vectors, stored as normalized rows with
/// strictly increasing pivot positions.
///
/// Extending is non-destructive: the new state shares every existing row with
/// its parent, so one parent can be extended by many candidate columns.
#[derive(Debug, Clone)]
pub struct EchelonState {
    dim: usize,
    rows: Vec<PivotRow>,
    sources: Vec<usize>,
}

impl EchelonState {
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            rows: Vec::new(),
            sources: Vec::new(),
        }
    }

    /// Echelon form of the columns of `matrix` selected by `set`.
    pub fn from_columns(matrix: &RationalMatrix, set: &SubsetLabel) -> Result<Self, LinalgError> {
        let mut state = Self::empty(matrix.dim());
        for i in set.iter() {
            if i > matrix.len() {
                return Err(LinalgError::ColumnOutOfRange {
                    index: i,
                    columns: matrix.len(),
                });
            }
            state.push(matrix.column(i), Some(i))?;
        }
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Element indices fed into this state, in insertion order.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// The column with every pivot coordinate eliminated. Zero iff the column
    /// lies in the span of the state.
    pub fn residual(&self, column: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        self.check_len(column)?;
        let mut v = column.to_vec();
        self.reduce_in_place(&mut v);
        Ok(v)
    }

    pub fn in_span(&self, column: &[Rational]) -> Result<bool, LinalgError> {
        self.check_len(column)?;
        let mut v = column.to_vec();
        self.reduce_in_place(&mut v);
        Ok(v.iter().all(Zero::is_zero))
    }

    /// The state spanned by `self` and `column`, and whether the rank grew.
    /// `self` is left untouched.
    pub fn extend(&self, column: &[Rational]) -> Result<(Self, bool), LinalgError> {
        let mut next = self.clone();
        let grew = next.push(column, None)?;
        Ok((next, grew))
    }

    /// Like `extend`, recording `source` as the contributing element.
    pub fn extend_with(&self, column: &[Rational], source: usize) -> Result<(Self, bool), LinalgError> {
        let mut next = self.clone();
        let grew = next.push(column, Some(source))?;
        Ok((next, grew))
    }

    /// In-place extension; returns whether the rank grew.
    pub fn push(&mut self, column: &[Rational], source: Option<usize>) -> Result<bool, LinalgError> {
        let residual = self.residual(column)?;
        if let Some(s) = source {
            self.sources.push(s);
        }
        Ok(self.push_residual(residual))
    }

    /// Adds a vector that is already reduced against this state.
    pub(crate) fn push_residual(&mut self, mut residual: Vec<Rational>) -> bool {
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = residual[pivot].recip();
        for x in residual[pivot..].iter_mut() {
            *x *= &inv;
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(
            at,
            PivotRow {
                pivot,
                entries: residual.into(),
            },
        );
        true
    }

    fn reduce_in_place(&self, v: &mut [Rational]) {
        for row in &self.rows {
            if v[row.pivot].is_zero() {
                continue;
            }
            let c = v[row.pivot].clone();
            for (x, r) in v[row.pivot..].iter_mut().zip(&row.entries[row.pivot..]) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
    }

    fn check_len(&self, column: &[Rational]) -> Result<(), LinalgError> {
        if column.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: column.len(),
            });
        }
        Ok(())
    }

    /// Nonzero vector orthogonal to every row, when the rank is `dim - 1`.
    fn null_vector(&self) -> Option<Vec<Rational>> {
        if self.rank() + 1 != self.dim {
            return None;
        }
        let free = (0..self.dim).find(|c| !self.rows.iter().any(|r| r.pivot == *c))?;
        let mut n = vec![Rational::zero(); self.dim];
        n[free] = Rational::one();
        for row in self.rows.iter().rev() {
            let acc: Rational = row.entries[row.pivot + 1..]
                .iter()
                .zip(&n[row.pivot + 1..])
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .map(|(a, b)| a * b)
                .sum();
            n[row.pivot] = -acc;
        }
        Some(n)
    }
}

/// Scales a nonzero vector to coprime integers whose first nonzero entry is
/// positive. The zero vector maps to zeros.
pub fn canonical_normal(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return ints;
    }
    let negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in ints.iter_mut() {
        *x /= &gcd;
        if negative {
            *x = -&*x;
        }
    }
    ints
}

/// Canonical normal of the hyperplane spanned by `basis`, which must be
/// `dim - 1` independent columns with `dim` the ambient dimension.
pub fn hyperplane_normal(matrix: &RationalMatrix, basis: &SubsetLabel, dim: usize) -> Result<Vec<BigInt>, LinalgError> {
    if matrix.dim() != dim {
        return Err(LinalgError::RankDeficient {
            rank: dim,
            dim: matrix.dim(),
        });
    }
    if basis.len() + 1 != dim {
        return Err(LinalgError::BasisSize {
            dim,
            expected: dim.saturating_sub(1),
            found: basis.len(),
        });
    }
    let state = EchelonState::from_columns(matrix, basis)?;
    let normal = state.null_vector().ok_or(LinalgError::DependentBasis {
        rank: state.rank(),
        size: basis.len(),
    })?;
    Ok(canonical_normal(&normal))
}
