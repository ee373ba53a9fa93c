use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::{parse_rational, LinalgError, NumberPolicy, Rational};
use crate::labels::SubsetLabel;

/// `n` column vectors of length `dim`; column `i` (1-based) is element `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    columns: Vec<Vec<Rational>>,
    // Each column rescaled to integers. Scaling a column never changes which
    // subsets are independent, so rank queries can run fraction-free.
    scaled: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i64>>>,
    // set when no minor product can overflow i128 (Hadamard bound)
    narrow: Option<Vec<Vec<i128>>>,
}

impl RationalMatrix {
    pub fn new(dim: usize, columns: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        if columns.len() > crate::labels::MAX_ELEMENTS {
            return Err(LinalgError::Format(format!(
                "{} columns exceed the supported {}",
                columns.len(),
                crate::labels::MAX_ELEMENTS
            )));
        }
        let scaled: Vec<Vec<BigInt>> = columns.iter().map(|c| integer_multiple(c)).collect();
        // i64 entries keep every Bareiss intermediate within i128 for the
        // sizes we handle; overflow is still checked at runtime.
        let small = scaled
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.to_i64().filter(|v| v.unsigned_abs() < 1 << 31))
                    .collect()
            })
            .collect::<Option<Vec<Vec<i64>>>>();
        let narrow = fits_i128(&scaled, dim).then(|| {
            scaled
                .iter()
                .map(|c| c.iter().map(|x| x.to_i128().expect("bounded entries")).collect())
                .collect()
        });
        Ok(Self {
            dim,
            columns,
            scaled,
            small,
            narrow,
        })
    }

    /// Convenience constructor from integer columns.
    pub fn from_integer_columns<C: AsRef<[i64]>>(dim: usize, columns: &[C]) -> Result<Self, LinalgError> {
        let cols = columns
            .iter()
            .map(|c| c.as_ref().iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::new(dim, cols)
    }

    /// Builds the matrix from `dim` rows of equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let columns = (0..n).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        Self::new(dim, columns)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of columns, i.e. ground-set size.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column of element `w_index` (1-based).
    pub fn column(&self, index: usize) -> &[Rational] {
        &self.columns[index - 1]
    }

    pub fn columns(&self) -> &[Vec<Rational>] {
        &self.columns
    }

    /// Matrix made of the selected columns, in ascending index order.
    pub fn select(&self, elements: &[usize]) -> Result<Self, LinalgError> {
        let mut cols = Vec::with_capacity(elements.len());
        for &i in elements {
            if i == 0 || i > self.len() {
                return Err(LinalgError::ColumnOutOfRange {
                    index: i,
                    columns: self.len(),
                });
            }
            cols.push(self.columns[i - 1].clone());
        }
        Self::new(self.dim, cols)
    }

    pub(crate) fn integer_columns(&self) -> &[Vec<BigInt>] {
        &self.scaled
    }

    pub(crate) fn narrow_columns(&self) -> Option<&[Vec<i128>]> {
        self.narrow.as_deref()
    }

    /// Rank of the columns in `set`.
    pub fn rank_of(&self, set: &SubsetLabel) -> usize {
        let indices: Vec<usize> = set.iter().collect();
        if let Some(small) = &self.small {
            if let Some(r) = bareiss_rank_i128(small, &indices, self.dim) {
                return r;
            }
        }
        bareiss_rank_big(&self.scaled, &indices, self.dim)
    }

    /// Parses the text format: a header `d N`, then `d` rows of `N` numbers.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_text(text: &str, policy: NumberPolicy) -> Result<Self, LinalgError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| LinalgError::Format("missing header line".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let [d, n] = dims.as_slice() else {
            return Err(LinalgError::Format(format!("header {header:?} is not \"d N\"")));
        };
        let parse_usize = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| LinalgError::Format(format!("header {header:?} is not \"d N\"")))
        };
        let (d, n) = (parse_usize(d)?, parse_usize(n)?);
        let mut rows = Vec::with_capacity(d);
        for r in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| LinalgError::Format(format!("expected {d} rows, found {r}")))?;
            let row = line
                .split_whitespace()
                .map(|tok| parse_rational(tok, policy))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(LinalgError::Format(format!(
                    "row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(LinalgError::Format(format!("unexpected trailing line {extra:?}")));
        }
        if d == 0 {
            return Self::new(0, vec![Vec::new(); n]);
        }
        Self::from_rows(rows)
    }

    /// Parses `{"d": 2, "n": 3, "rows": [[1, 0, "1/2"], [0, 1, 1]]}`; entries
    /// may be JSON integers or rational strings.
    pub fn parse_json(text: &str, policy: NumberPolicy) -> Result<Self, LinalgError> {
        let value: Value = serde_json::from_str(text).map_err(|e| LinalgError::Format(e.to_string()))?;
        let field = |name: &str| {
            value
                .get(name)
                .ok_or_else(|| LinalgError::Format(format!("missing field {name:?}")))
        };
        let as_usize = |v: &Value, name: &str| {
            v.as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| LinalgError::Format(format!("field {name:?} must be a nonnegative integer")))
        };
        let d = as_usize(field("d")?, "d")?;
        let n = as_usize(field("n")?, "n")?;
        let rows = field("rows")?
            .as_array()
            .ok_or_else(|| LinalgError::Format("field \"rows\" must be an array".into()))?;
        if rows.len() != d {
            return Err(LinalgError::Format(format!("expected {d} rows, found {}", rows.len())));
        }
        let mut parsed = Vec::with_capacity(d);
        for (r, row) in rows.iter().enumerate() {
            let entries = row
                .as_array()
                .ok_or_else(|| LinalgError::Format(format!("row {} is not an array", r + 1)))?;
            if entries.len() != n {
                return Err(LinalgError::Format(format!(
                    "row {} has {} entries, expected {n}",
                    r + 1,
                    entries.len()
                )));
            }
            let row = entries
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_rational(s, policy),
                    Value::Number(x) if x.is_i64() || x.is_u64() => parse_rational(&x.to_string(), policy),
                    Value::Number(x) => match policy {
                        NumberPolicy::Exact => Err(LinalgError::FloatRejected(x.to_string())),
                        NumberPolicy::ConvertFloats => x
                            .as_f64()
                            .and_then(Rational::from_float)
                            .ok_or_else(|| LinalgError::BadNumber(x.to_string())),
                    },
                    other => Err(LinalgError::BadNumber(other.to_string())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(row);
        }
        if d == 0 {
            return Self::new(0, vec![Vec::new(); n]);
        }
        Self::from_rows(parsed)
    }

    /// Picks the JSON reader when the input starts with `{`.
    pub fn parse(text: &str, policy: NumberPolicy) -> Result<Self, LinalgError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text, policy)
        } else {
            Self::parse_text(text, policy)
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim, self.len());
        for r in 0..self.dim {
            let row: Vec<String> = self.columns.iter().map(|c| c[r].to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// True when twice the largest possible minor, bounded by the product of
/// the `dim` largest column norms, stays below `2^126`.
fn fits_i128(columns: &[Vec<BigInt>], dim: usize) -> bool {
    let mut log_norms: Vec<f64> = columns
        .iter()
        .map(|c| {
            let sq: f64 = c.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY).powi(2)).sum();
            0.5 * sq.max(1.0).log2()
        })
        .collect();
    log_norms.sort_unstable_by(|a, b| b.total_cmp(a));
    let bits: f64 = log_norms.iter().take(dim).sum();
    bits.is_finite() && 2.0 * bits + 2.0 < 126.0
}

fn integer_multiple(column: &[Rational]) -> Vec<BigInt> {
    let lcm = column.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    column
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Fraction-free elimination on the selected columns (as rows). Returns
/// `None` if an intermediate overflows `i128`.
#[allow(clippy::needless_range_loop)]
fn bareiss_rank_i128(columns: &[Vec<i64>], indices: &[usize], dim: usize) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = indices
        .iter()
        .map(|&i| columns[i - 1].iter().map(|&x| x as i128).collect())
        .collect();
    let k = m.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..dim {
        if rank == k {
            break;
        }
        let Some(p) = (rank..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for i in rank + 1..k {
            let factor = m[i][col];
            for j in col + 1..dim {
                let t = pivot
                    .checked_mul(m[i][j])?
                    .checked_sub(factor.checked_mul(m[rank][j])?)?;
                m[i][j] = t / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

#[allow(clippy::needless_range_loop)]
fn bareiss_rank_big(columns: &[Vec<BigInt>], indices: &[usize], dim: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = indices.iter().map(|&i| columns[i - 1].clone()).collect();
    let k = m.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..dim {
        if rank == k {
            break;
        }
        let Some(p) = (rank..k).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..k {
            let factor = m[i][col].clone();
            for j in col + 1..dim {
                let t = &pivot * &m[i][j] - &factor * &m[rank][j];
                m[i][j] = t / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// True iff the given vectors are linearly independent.
pub fn columns_independent(matrix: &RationalMatrix, set: &SubsetLabel) -> bool {
    matrix.rank_of(set) == set.len()
}
