//! H-representation of a zonotope given as a Minkowski sum of segments.
//!
//! The zonotope generated by `w_1, ..., w_N` is `{ sum l_k w_k : 0 <= l_k <= 1 }`.
//! Each hyperplane (rank `d-1` flat) of the column matroid contributes the
//! pair of facets orthogonal to its normal `n`:
//!
//! ```text
//!  n.x <= sum_k max(0, n.w_k)      -n.x <= -sum_k min(0, n.w_k)
//! ```
//!
//! Normals come from the `d-1` columns of each hyperplane's pointer.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{enumerate_pointers, simplify, EngineError, EnumerationOptions, SimpleMatroid, Strategy};
use crate::linalg::{hyperplane_normal, parse_rational, LinalgError, NumberPolicy, Rational, RationalMatrix};
use crate::oracle::VectorialOracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZonotopeError {
    #[error("generators span a {rank}-dimensional subspace of {dim}-space; the zonotope is not full-dimensional")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("half-space input: {0}")]
    Format(String),
}

/// `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        dot(&self.normal, point)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        self.evaluate(point) <= self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRepresentation {
    pub dim: usize,
    /// Two entries per hyperplane: `n.x <= upper` then `-n.x <= -lower`,
    /// hyperplanes ordered by canonical normal.
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZonotopeOptions {
    /// Translate so the zonotope is centred at the origin.
    pub centered: bool,
    pub parallel: bool,
}

impl HRepresentation {
    pub fn hyperplanes(&self) -> usize {
        self.halfspaces.len() / 2
    }

    pub fn contains(&self, point: &[Rational]) -> Result<bool, ZonotopeError> {
        membership(self, point)
    }

    /// `[{"normal": [..], "offset": "p/q"}, ..]`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<HalfSpaceWire> = self.halfspaces.iter().map(HalfSpaceWire::from).collect();
        serde_json::to_value(rows).expect("half-spaces serialize")
    }

    pub fn from_json(value: &serde_json::Value, dim: usize) -> Result<Self, ZonotopeError> {
        let rows: Vec<HalfSpaceWire> =
            serde_json::from_value(value.clone()).map_err(|e| ZonotopeError::Format(e.to_string()))?;
        let halfspaces = rows
            .into_iter()
            .map(|w| w.try_into())
            .collect::<Result<Vec<HalfSpace>, _>>()?;
        if let Some(h) = halfspaces.iter().find(|h| h.normal.len() != dim) {
            return Err(ZonotopeError::DimensionMismatch {
                expected: dim,
                found: h.normal.len(),
            });
        }
        Ok(Self { dim, halfspaces })
    }

    /// Polyhedral text format: one row `b -a_1 ... -a_d` per inequality
    /// `a.x <= b`, read as `b - a.x >= 0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("* each row \"b -a_1 ... -a_d\" encodes the inequality b - a.x >= 0\n");
        out.push_str("H-representation\nbegin\n");
        let _ = writeln!(out, " {} {} rational", self.halfspaces.len(), self.dim + 1);
        for h in &self.halfspaces {
            let mut row = vec![h.offset.to_string()];
            row.extend(h.normal.iter().map(|a| (-a).to_string()));
            let _ = writeln!(out, " {}", row.join(" "));
        }
        out.push_str("end\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct HalfSpaceWire {
    normal: Vec<serde_json::Value>,
    offset: String,
}

impl From<&HalfSpace> for HalfSpaceWire {
    fn from(h: &HalfSpace) -> Self {
        let normal = h
            .normal
            .iter()
            .map(|a| match i64::try_from(a) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(a.to_string()),
            })
            .collect();
        Self {
            normal,
            offset: h.offset.to_string(),
        }
    }
}

impl TryFrom<HalfSpaceWire> for HalfSpace {
    type Error = ZonotopeError;

    fn try_from(w: HalfSpaceWire) -> Result<Self, ZonotopeError> {
        let normal = w
            .normal
            .iter()
            .map(|v| {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                text.parse::<BigInt>()
                    .map_err(|_| ZonotopeError::Format(format!("normal entry {text:?} is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let offset = parse_rational(&w.offset, NumberPolicy::Exact)?;
        Ok(Self { normal, offset })
    }
}

fn dot(normal: &[BigInt], v: &[Rational]) -> Rational {
    normal
        .iter()
        .zip(v)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, x)| x * Rational::from_integer(a.clone()))
        .sum()
}

/// The generators times the least common denominator of their entries.
struct Cleared {
    denominator: BigInt,
    columns: Vec<Vec<BigInt>>,
}

impl Cleared {
    fn new(generators: &RationalMatrix) -> Self {
        let denominator = generators
            .columns()
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let columns = generators
            .columns()
            .iter()
            .map(|w| w.iter().map(|x| x.numer() * (&denominator / x.denom())).collect())
            .collect();
        Self { denominator, columns }
    }

    fn offsets(&self, normal: &[BigInt]) -> (Rational, Rational) {
        let mut upper = BigInt::zero();
        let mut lower = BigInt::zero();
        for w in &self.columns {
            let p: BigInt = normal.iter().zip(w).map(|(a, x)| a * x).sum();
            if p.is_positive() {
                upper += p;
            } else {
                lower += p;
            }
        }
        (
            Rational::new(upper, self.denominator.clone()),
            Rational::new(lower, self.denominator.clone()),
        )
    }
}

/// `(sum_k max(0, n.w_k), sum_k min(0, n.w_k))`: the largest and smallest
/// values of `n.x` over the zonotope.
pub fn facet_offsets(normal: &[BigInt], generators: &RationalMatrix) -> (Rational, Rational) {
    Cleared::new(generators).offsets(normal)
}

/// The vertex `sum_k [n.w_k > 0] w_k`, where `n.x` attains its maximum.
pub fn maximizing_vertex(normal: &[BigInt], generators: &RationalMatrix) -> Vec<Rational> {
    let mut point = vec![Rational::zero(); generators.dim()];
    for w in generators.columns() {
        if dot(normal, w).is_positive() {
            for (x, c) in point.iter_mut().zip(w) {
                *x += c;
            }
        }
    }
    point
}

/// Facet inequalities of the zonotope generated by the columns of
/// `generators`, which must span the ambient space.
pub fn hrep(generators: &RationalMatrix, options: &ZonotopeOptions) -> Result<HRepresentation, ZonotopeError> {
    let dim = generators.dim();
    let oracle = VectorialOracle::new(generators.clone());
    let rank = generators.rank_of(&crate::labels::SubsetLabel::full(generators.len()));
    if rank != dim {
        return Err(ZonotopeError::NotFullDimensional { rank, dim });
    }
    if dim == 0 {
        return Ok(HRepresentation {
            dim,
            halfspaces: Vec::new(),
        });
    }
    let map = simplify(&oracle, Strategy::Echelon);
    let simple = SimpleMatroid::new(&oracle, &map);
    let pointers = enumerate_pointers(
        &simple,
        &EnumerationOptions {
            include_extremes: true,
            strategy: Strategy::Echelon,
            parallel: options.parallel,
        },
    )?;
    let hyperplanes: Vec<_> = pointers
        .level(dim - 1)
        .unwrap_or_default()
        .iter()
        .map(|p| map.lift_representatives(p))
        .collect();

    let shift: Option<Vec<Rational>> = options.centered.then(|| {
        let half = Rational::new(1.into(), 2.into());
        (0..dim)
            .map(|r| generators.columns().iter().map(|w| &w[r]).sum::<Rational>() * &half)
            .collect()
    });

    let cleared = Cleared::new(generators);
    let computed = crate::par::map(&hyperplanes, options.parallel, |basis| {
        let normal = hyperplane_normal(generators, basis, dim)?;
        let (mut upper, mut lower) = cleared.offsets(&normal);
        if let Some(c) = &shift {
            let nc = dot(&normal, c);
            upper -= &nc;
            lower -= &nc;
        }
        Ok::<_, LinalgError>((normal, upper, lower))
    });
    let mut rows = computed.into_iter().collect::<Result<Vec<_>, _>>()?;
    rows.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(
        rows.windows(2).all(|w| w[0].0 != w[1].0),
        "distinct hyperplanes share a normal"
    );

    let mut halfspaces = Vec::with_capacity(2 * rows.len());
    for (normal, upper, lower) in rows {
        let negated: Vec<BigInt> = normal.iter().map(|a| -a).collect();
        halfspaces.push(HalfSpace { normal, offset: upper });
        halfspaces.push(HalfSpace {
            normal: negated,
            offset: -lower,
        });
    }
    Ok(HRepresentation { dim, halfspaces })
}

/// True iff `point` satisfies every inequality.
pub fn membership(hrep: &HRepresentation, point: &[Rational]) -> Result<bool, ZonotopeError> {
    if point.len() != hrep.dim {
        return Err(ZonotopeError::DimensionMismatch {
            expected: hrep.dim,
            found: point.len(),
        });
    }
    Ok(hrep.halfspaces.iter().all(|h| h.contains(point)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn gens<const D: usize>(cols: &[[i64; D]]) -> RationalMatrix {
        RationalMatrix::from_integer_columns(D, cols).unwrap()
    }

    fn hs(normal: &[i64], offset: Rational) -> HalfSpace {
        HalfSpace {
            normal: ints(normal),
            offset,
        }
    }

    #[test]
    fn unit_cube() {
        let h = hrep(&gens(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), &ZonotopeOptions::default()).unwrap();
        assert_eq!(
            h.halfspaces,
            vec![
                hs(&[0, 0, 1], q(1, 1)),
                hs(&[0, 0, -1], q(0, 1)),
                hs(&[0, 1, 0], q(1, 1)),
                hs(&[0, -1, 0], q(0, 1)),
                hs(&[1, 0, 0], q(1, 1)),
                hs(&[-1, 0, 0], q(0, 1)),
            ]
        );
        assert!(h.contains(&[q(1, 2), q(1, 2), q(1, 2)]).unwrap());
        assert!(!h.contains(&[q(2, 1), q(0, 1), q(0, 1)]).unwrap());
        assert!(h.contains(&[q(1, 2)]).is_err());
    }

    #[test]
    fn hexagon_offsets() {
        let h = hrep(&gens(&[[1, 0], [0, 1], [1, 1]]), &ZonotopeOptions::default()).unwrap();
        assert_eq!(h.hyperplanes(), 3);
        let i = h.halfspaces.iter().position(|x| x.normal == ints(&[1, -1])).unwrap();
        assert_eq!(h.halfspaces[i].offset, q(1, 1));
        assert_eq!(h.halfspaces[i + 1], hs(&[-1, 1], q(1, 1)), "n.x >= -1");
    }

    #[test]
    fn parallel_generators_merge() {
        let h = hrep(&gens(&[[1, 0], [2, 0], [0, 1]]), &ZonotopeOptions::default()).unwrap();
        assert_eq!(
            h.halfspaces,
            vec![
                hs(&[0, 1], q(1, 1)),
                hs(&[0, -1], q(0, 1)),
                hs(&[1, 0], q(3, 1)),
                hs(&[-1, 0], q(0, 1)),
            ]
        );
    }

    #[test]
    fn loops_and_negative_generators() {
        // segment [-2, 1] on the line, plus a zero generator
        let h = hrep(&gens(&[[1], [0], [-2]]), &ZonotopeOptions::default()).unwrap();
        assert_eq!(h.halfspaces, vec![hs(&[1], q(1, 1)), hs(&[-1], q(2, 1))]);
    }

    #[test]
    fn centered_shift() {
        let h = hrep(
            &gens(&[[1, 0], [2, 0], [0, 1]]),
            &ZonotopeOptions {
                centered: true,
                parallel: false,
            },
        )
        .unwrap();
        assert_eq!(
            h.halfspaces,
            vec![
                hs(&[0, 1], q(1, 2)),
                hs(&[0, -1], q(1, 2)),
                hs(&[1, 0], q(3, 2)),
                hs(&[-1, 0], q(3, 2)),
            ]
        );
    }

    #[test]
    fn rejects_flat_generators() {
        let err = hrep(&gens(&[[1, 0, 0], [0, 1, 0]]), &ZonotopeOptions::default()).unwrap_err();
        assert_eq!(err, ZonotopeError::NotFullDimensional { rank: 2, dim: 3 });
    }

    #[test]
    fn offsets_under_generator_negation() {
        // replacing w by -w translates the zonotope by -w: upper and lower both move by -n.w
        let a = gens(&[[1, 0], [0, 1], [1, 1]]);
        let b = gens(&[[1, 0], [0, 1], [-1, -1]]);
        for normal in [ints(&[1, -1]), ints(&[0, 1]), ints(&[1, 0])] {
            let (ua, la) = facet_offsets(&normal, &a);
            let (ub, lb) = facet_offsets(&normal, &b);
            let nw = dot(&normal, a.column(3));
            assert_eq!(&ua - &ub, &la - &lb);
            assert_eq!(ua - ub, nw);
        }
    }

    #[test]
    fn text_and_json_forms() {
        let h = hrep(&gens(&[[1, 0], [2, 0], [0, 1]]), &ZonotopeOptions::default()).unwrap();
        let text = h.to_text();
        assert!(text.contains(" 4 3 rational\n"));
        assert!(text.contains("\n 3 -1 0\n"));
        assert!(text.contains("\n 0 1 0\n"));
        let json = h.to_json();
        assert_eq!(json[2], serde_json::json!({"normal": [1, 0], "offset": "3"}));
        assert_eq!(HRepresentation::from_json(&json, 2).unwrap(), h);
        assert!(HRepresentation::from_json(&json, 3).is_err());
    }
}
