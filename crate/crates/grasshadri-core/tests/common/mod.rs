//! Helpers shared by the integration test suites. Everything here goes
//! through the public API only.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use grasshadri_core::{HNData, HNPiece, SplitBundle, Summand};

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from(big(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(big(n), big(d))
}

pub fn ex1() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(-1, 1, false).unwrap(),
            Summand::new(0, 3, true).unwrap(),
        ],
        1,
    )
    .unwrap()
}

pub fn ex2() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(-1, 2, false).unwrap(),
            Summand::new(0, 2, true).unwrap(),
        ],
        0,
    )
    .unwrap()
}

pub fn ex3() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(1, 2, false).unwrap(),
            Summand::new(-1, 2, false).unwrap(),
        ],
        0,
    )
    .unwrap()
}

pub fn ex4() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(-1, 1, false).unwrap(),
            Summand::new(0, 2, true).unwrap(),
            Summand::new(0, 1, false).unwrap(),
        ],
        1,
    )
    .unwrap()
}

/// Builds filtration data from raw (rank, degree) parts by sorting on
/// slope and merging equal-slope parts; `None` when fewer than two
/// distinct slopes remain.
pub fn hn_from_parts(parts: &[(u64, i64)], genus: u64) -> Option<HNData> {
    let mut by_slope: BTreeMap<BigRational, (u64, BigInt)> = BTreeMap::new();
    for &(rank, degree) in parts {
        if rank == 0 {
            return None;
        }
        let slope = BigRational::new(big(degree), big(rank as i64));
        let entry = by_slope.entry(slope).or_insert((0, BigInt::from(0)));
        entry.0 += rank;
        entry.1 += big(degree);
    }
    if by_slope.len() < 2 {
        return None;
    }
    let pieces = by_slope
        .into_values()
        .rev()
        .map(|(rank, degree)| HNPiece::new(rank, degree).unwrap())
        .collect();
    Some(HNData::new(pieces, genus).expect("parts were canonicalized"))
}

/// Every size-`r` sub-multiset of the summands, as (total degree, whether
/// the selection is exactly the filtration tail at that rank).
pub fn split_quotients(bundle: &SplitBundle, r: u64, m: usize) -> Vec<(BigInt, bool)> {
    let hn = bundle.hn_filtration();
    let tail_degrees: BTreeSet<BigInt> = hn.pieces()[m - 1..]
        .iter()
        .map(|p| p.degree() / big(p.rank() as i64))
        .collect();
    let tail_vector: Vec<u64> = bundle
        .summands()
        .iter()
        .map(|s| {
            if tail_degrees.contains(s.degree()) {
                s.multiplicity()
            } else {
                0
            }
        })
        .collect();

    let mut out = Vec::new();
    let mut selection = vec![0u64; bundle.summands().len()];
    fn walk(
        bundle: &SplitBundle,
        idx: usize,
        remaining: u64,
        selection: &mut Vec<u64>,
        tail_vector: &[u64],
        out: &mut Vec<(BigInt, bool)>,
    ) {
        if remaining == 0 {
            let degree = bundle
                .summands()
                .iter()
                .zip(selection.iter())
                .map(|(s, &k)| s.degree() * BigInt::from(k))
                .sum();
            out.push((degree, selection.as_slice() == tail_vector));
            return;
        }
        if idx == bundle.summands().len() {
            return;
        }
        let take_max = remaining.min(bundle.summands()[idx].multiplicity());
        for k in 0..=take_max {
            selection[idx] = k;
            walk(bundle, idx + 1, remaining - k, selection, tail_vector, out);
        }
        selection[idx] = 0;
    }
    walk(bundle, 0, r, &mut selection, &tail_vector, &mut out);
    out
}
