#![allow(dead_code)]

use matroid_flats::{
    EnumerationReport, GraphicOracle, IndependenceOracle, Rational, RationalMatrix, SubsetLabel, UniformOracle,
    VectorialOracle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A randomly drawn matroid together with a column representation of it.
pub struct Instance {
    pub name: String,
    pub oracle: Box<dyn IndependenceOracle>,
    pub matrix: RationalMatrix,
}

pub fn random_vectorial(rng: &mut ChaCha8Rng) -> Instance {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=12);
    let span = rng.gen_range(1..=3);
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-span..=span)).collect())
        .collect();
    let matrix = RationalMatrix::from_integer_columns(d, &cols).unwrap();
    Instance {
        name: format!("vectorial d={d} n={n} span={span}"),
        oracle: Box::new(VectorialOracle::new(matrix.clone())),
        matrix,
    }
}

/// Signed incidence matrix; over the rationals its column matroid is the
/// cycle matroid of the graph.
pub fn incidence_matrix(vertices: usize, edges: &[(usize, usize)]) -> RationalMatrix {
    let cols: Vec<Vec<i64>> = edges
        .iter()
        .map(|&(u, v)| {
            let mut c = vec![0; vertices];
            if u != v {
                c[u - 1] = 1;
                c[v - 1] = -1;
            }
            c
        })
        .collect();
    RationalMatrix::from_integer_columns(vertices, &cols).unwrap()
}

pub fn random_graphic(rng: &mut ChaCha8Rng) -> Instance {
    let vertices = rng.gen_range(2..=7);
    let n = rng.gen_range(1..=12);
    let loops = rng.gen_bool(0.3);
    let edges: Vec<(usize, usize)> = (0..n)
        .map(|_| loop {
            let u = rng.gen_range(1..=vertices);
            let v = rng.gen_range(1..=vertices);
            if u != v || loops {
                break (u, v);
            }
        })
        .collect();
    Instance {
        name: format!("graphic v={vertices} edges={edges:?}"),
        matrix: incidence_matrix(vertices, &edges),
        oracle: Box::new(GraphicOracle::new(vertices, edges)),
    }
}

/// Columns `(1, t, ..., t^(k-1))` for `t = 1..=n`: every `k` of them are
/// independent (Vandermonde).
pub fn moment_matrix(k: usize, n: usize) -> RationalMatrix {
    let cols: Vec<Vec<Rational>> = (1..=n)
        .map(|t| {
            (0..k)
                .map(|e| Rational::from_integer((t as i64).pow(e as u32).into()))
                .collect()
        })
        .collect();
    RationalMatrix::new(k, cols).unwrap()
}

pub fn random_uniform(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(1..=12);
    let k = rng.gen_range(0..=n);
    Instance {
        name: format!("uniform U({k},{n})"),
        oracle: Box::new(UniformOracle::new(k, n)),
        matrix: moment_matrix(k, n),
    }
}

/// The randomized corpus: a mix of vectorial, graphic and uniform matroids
/// with at most 12 elements.
pub fn corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| match i % 3 {
            0 => random_vectorial(&mut rng),
            1 => random_graphic(&mut rng),
            _ => random_uniform(&mut rng),
        })
        .collect()
}

/// Random rationals `p/q` with `|p| <= 20`, `1 <= q <= 9`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=9).into())
}

/// `n` random rational vectors in `d`-space, resampled until every `d` of
/// them are independent.
pub fn general_position(rng: &mut ChaCha8Rng, d: usize, n: usize) -> RationalMatrix {
    loop {
        let cols = (0..n).map(|_| (0..d).map(|_| random_rational(rng)).collect()).collect();
        let m = RationalMatrix::new(d, cols).unwrap();
        if every_subset_of_size(n, d).all(|s| m.rank_of(&s) == d) {
            return m;
        }
    }
}

pub fn every_subset_of_size(n: usize, k: usize) -> impl Iterator<Item = SubsetLabel> {
    (0u128..1 << n)
        .filter(move |b| b.count_ones() as usize == k)
        .map(SubsetLabel::from_u128)
}

/// Every nonempty pointer minus its leading element is a pointer one rank
/// lower. Returns the offending pointers.
pub fn broken_prefix_chain(report: &EnumerationReport) -> Vec<SubsetLabel> {
    let mut bad = Vec::new();
    for f in report.flats().filter(|f| f.rank > 0) {
        let parent = f.pointer.clear_leading().unwrap();
        let found = report
            .level(f.rank - 1)
            .is_some_and(|lower| lower.iter().any(|g| g.pointer == parent));
        if !found {
            bad.push(f.pointer);
        }
    }
    bad
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
