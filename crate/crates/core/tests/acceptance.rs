//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line to standard
//! error (bypassing the test harness capture) and then asserts.

mod common;

use std::io::Write;
use std::time::Instant;

use common::*;
use matroid_flats::bruteforce::brute_flats;
use matroid_flats::{
    enumerate_flats, hrep, EnumerationOptions, EnumerationReport, GraphicOracle, HalfSpace, IndependenceOracle,
    OpaqueOracle, Rational, RationalMatrix, Strategy, SubsetLabel, VectorialOracle, ZonotopeOptions,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

const CORPUS_SIZE: usize = 120;
const CORPUS_SEED: u64 = 0x5eed_f1a7;

fn verdict(id: u32, title: &str, ok: bool, detail: &str) {
    let line = format!(
        "acceptance {id}: {} {title} ({detail})\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {title} ({detail})");
}

fn options(strategy: Strategy) -> EnumerationOptions {
    EnumerationOptions {
        strategy,
        ..EnumerationOptions::default()
    }
}

fn flats(oracle: &dyn IndependenceOracle) -> EnumerationReport {
    enumerate_flats(oracle, &EnumerationOptions::default()).unwrap()
}

fn wire(report: &EnumerationReport) -> String {
    serde_json::to_string(&(report.ground_size, report.rank, &report.levels)).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn dot(normal: &[BigInt], x: &[Rational]) -> Rational {
    normal
        .iter()
        .zip(x)
        .map(|(a, b)| Rational::from_integer(a.clone()) * b)
        .sum()
}

fn half_space(normal: &[i64], offset: i64) -> HalfSpace {
    HalfSpace {
        normal: normal.iter().map(|&a| BigInt::from(a)).collect(),
        offset: q(offset),
    }
}

fn sorted(mut v: Vec<HalfSpace>) -> Vec<HalfSpace> {
    v.sort();
    v
}

#[test]
fn c1_engine_matches_brute_force() {
    let start = Instant::now();
    let corpus = corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut failures = Vec::new();
    let mut total = 0;
    for inst in &corpus {
        let engine = flats(inst.oracle.as_ref());
        let brute = brute_flats(inst.oracle.as_ref(), 12).unwrap();
        total += brute.total();
        if !engine.same_flats(&brute) {
            failures.push(inst.name.clone());
        }
    }
    verdict(
        1,
        "engine flats equal brute-force flats",
        failures.is_empty(),
        &format!(
            "{} matroids, {total} flats, {} mismatches {:?}, {:.2?}",
            corpus.len(),
            failures.len(),
            failures,
            start.elapsed()
        ),
    );
}

#[test]
fn c2_general_position_counts() {
    let mut rng = rng(2);
    let m = general_position(&mut rng, 4, 8);
    let report = flats(&VectorialOracle::new(m));
    let got: Vec<usize> = (1..=3).map(|k| report.level(k).map_or(0, <[_]>::len)).collect();
    let expected: Vec<usize> = (1..=3).map(|k| binomial(8, k)).collect();
    verdict(
        2,
        "general position N=8 d=4 rank counts",
        got == vec![8, 28, 56] && got == expected,
        &format!("got {got:?}, expected {expected:?}"),
    );
}

#[test]
fn c3_prefix_chain() {
    let mut reports: Vec<EnumerationReport> = corpus(CORPUS_SIZE, CORPUS_SEED)
        .iter()
        .map(|inst| flats(inst.oracle.as_ref()))
        .collect();
    reports.push(flats(&GraphicOracle::complete(4)));
    reports.push(flats(&GraphicOracle::complete(5)));
    let mut rng = rng(3);
    reports.push(flats(&VectorialOracle::new(general_position(&mut rng, 4, 10))));
    let pointers: usize = reports.iter().map(EnumerationReport::total).sum();
    let broken: Vec<_> = reports.iter().flat_map(broken_prefix_chain).collect();
    verdict(
        3,
        "clearing the leading bit of a pointer gives a lower-rank pointer",
        broken.is_empty(),
        &format!(
            "{} matroids, {pointers} pointers, {} violations",
            reports.len(),
            broken.len()
        ),
    );
}

#[test]
fn c4_cube() {
    let m = RationalMatrix::from_integer_columns(3, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    let h = hrep(&m, &ZonotopeOptions::default()).unwrap();
    let mut expected = Vec::new();
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = 1;
        expected.push(half_space(&e, 1));
        e[i] = -1;
        expected.push(half_space(&e, 0));
    }
    let got = sorted(h.halfspaces.clone());
    verdict(
        4,
        "cube has the six half-spaces 0 <= x_i <= 1",
        got.len() == 6 && got == sorted(expected),
        &format!("{} half-spaces", got.len()),
    );
}

#[test]
fn c5_hexagon() {
    let m = RationalMatrix::from_integer_columns(2, &[[1, 0], [0, 1], [1, 1]]).unwrap();
    let h = hrep(&m, &ZonotopeOptions::default()).unwrap();
    let gens = m.columns();

    let mut rng = rng(5);
    let mut violations = 0;
    for _ in 0..10_000 {
        let mut point = vec![Rational::zero(); 2];
        for w in gens {
            let den: i64 = rng.gen_range(1..=1000);
            let lambda = Rational::new(rng.gen_range(0..=den).into(), den.into());
            for (x, c) in point.iter_mut().zip(w) {
                *x += &lambda * c;
            }
        }
        violations += h
            .halfspaces
            .iter()
            .filter(|s| dot(&s.normal, &point) > s.offset)
            .count();
    }

    let mut loose = 0;
    for s in &h.halfspaces {
        let mut vertex = vec![Rational::zero(); 2];
        for w in gens {
            if dot(&s.normal, w).is_positive() {
                for (x, c) in vertex.iter_mut().zip(w) {
                    *x += c;
                }
            }
        }
        if dot(&s.normal, &vertex) != s.offset {
            loose += 1;
        }
    }
    verdict(
        5,
        "hexagon facets, soundness and tightness",
        h.halfspaces.len() == 6 && violations == 0 && loose == 0,
        &format!(
            "{} facets, {violations} violations over 10^4 points, {loose} non-tight facets",
            h.halfspaces.len()
        ),
    );
}

#[test]
fn c6_k4() {
    let k4 = GraphicOracle::complete(4);
    let report = flats(&k4);
    let brute = brute_flats(&k4, 12).unwrap();
    let profile: Vec<usize> = report.counts().into_iter().map(|(_, c)| c).collect();
    verdict(
        6,
        "K4 has 15 flats with profile (1,6,7,1)",
        report.total() == 15 && profile == vec![1, 6, 7, 1] && report.same_flats(&brute),
        &format!(
            "{} flats, profile {profile:?}, brute force {}",
            report.total(),
            brute.total()
        ),
    );
}

#[test]
fn c7_output_sensitivity() {
    const N: usize = 14;
    let start = Instant::now();
    let mut rng = rng(7);
    let mut rows = Vec::new();
    for d in [3, 4, 5, 6] {
        let oracle = VectorialOracle::new(general_position(&mut rng, d, N));
        let opaque = OpaqueOracle(&oracle);
        let report = enumerate_flats(&opaque, &options(Strategy::Generic)).unwrap();
        let m = report.total();
        rows.push((d, m, report.queries, report.queries as f64 / m as f64));
    }
    let ms: Vec<usize> = rows.iter().map(|r| r.1).collect();
    let ratios: Vec<f64> = rows.iter().map(|r| r.3).collect();
    let spread_m = *ms.iter().max().unwrap() as f64 / *ms.iter().min().unwrap() as f64;
    let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let bound = (4 * N * N) as f64;
    let table: Vec<String> = rows
        .iter()
        .map(|(d, m, queries, r)| format!("d={d} M={m} queries={queries} ratio={r:.1}"))
        .collect();
    verdict(
        7,
        "queries per flat stay flat across families at N=14",
        spread_m >= 10.0 && hi / lo < 4.0 && hi <= bound && start.elapsed().as_secs() < 60,
        &format!(
            "{}; M spread {spread_m:.1}x, ratio spread {:.2}x, bound {bound}, {:.2?}",
            table.join("; "),
            hi / lo,
            start.elapsed()
        ),
    );
}

#[test]
fn c8_fast_path_equivalence() {
    let corpus = corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut differ = Vec::new();
    let mut fast_queries = 0;
    for inst in &corpus {
        let vectors = VectorialOracle::new(inst.matrix.clone());
        let fast = enumerate_flats(&vectors, &options(Strategy::Echelon)).unwrap();
        fast_queries += fast.queries + vectors.queries();
        let generic = enumerate_flats(&OpaqueOracle(&vectors), &options(Strategy::Generic)).unwrap();
        let native = enumerate_flats(inst.oracle.as_ref(), &options(Strategy::Generic)).unwrap();
        if wire(&fast) != wire(&generic) || wire(&fast) != wire(&native) {
            differ.push(inst.name.clone());
        }
    }
    verdict(
        8,
        "echelon fast path matches the generic path with zero oracle queries",
        differ.is_empty() && fast_queries == 0,
        &format!(
            "{} instances, {} differing {:?}, {fast_queries} fast-path queries",
            corpus.len(),
            differ.len(),
            differ
        ),
    );
}

#[test]
fn c9_parallel_generators() {
    let m = RationalMatrix::from_integer_columns(2, &[[1, 0], [2, 0], [0, 1]]).unwrap();
    let h = hrep(&m, &ZonotopeOptions::default()).unwrap();
    let expected = sorted(vec![
        half_space(&[1, 0], 3),
        half_space(&[-1, 0], 0),
        half_space(&[0, 1], 1),
        half_space(&[0, -1], 0),
    ]);
    let report = flats(&VectorialOracle::new(m));
    let pair = SubsetLabel::from_indices(&[1, 2], 3).unwrap();
    let has_pair = report.flats().any(|f| f.members == pair && f.rank == 1);
    let got = sorted(h.halfspaces.clone());
    verdict(
        9,
        "parallel generators give the rectangle and the flat {1,2}",
        got == expected && has_pair && report.ground_size == 3,
        &format!("{} half-spaces, flat {{1,2}} present: {has_pair}", got.len()),
    );
}
