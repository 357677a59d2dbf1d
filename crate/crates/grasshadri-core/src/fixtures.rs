//! Shared unit-test fixtures: the four example bundles and a brute-force
//! split-quotient enumerator.

use num_bigint::BigInt;

use crate::hn::{SplitBundle, Summand};

pub(crate) fn ex1() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(-1, 1, false).unwrap(),
            Summand::new(0, 3, true).unwrap(),
        ],
        1,
    )
    .unwrap()
}

pub(crate) fn ex2() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(-1, 2, false).unwrap(),
            Summand::new(0, 2, true).unwrap(),
        ],
        0,
    )
    .unwrap()
}

pub(crate) fn ex3() -> SplitBundle {
    SplitBundle::new(
        vec![
            Summand::new(1, 2, false).unwrap(),
            Summand::new(-1, 2, false).unwrap(),
        ],
        0,
    )
    .unwrap()
}

pub(crate) fn ex4() -> SplitBundle {
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

/// All degree sums of size-`rho` sub-multisets of the summands: the
/// degrees of the split quotients onto those summands.
pub(crate) fn split_quotient_degrees(bundle: &SplitBundle, rho: u64) -> Vec<BigInt> {
    let mut expanded: Vec<&BigInt> = Vec::new();
    for s in bundle.summands() {
        for _ in 0..s.multiplicity() {
            expanded.push(s.degree());
        }
    }
    let n = expanded.len();
    assert!(n <= 20, "enumeration is exponential; keep ranks small");
    let rho = rho as usize;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != rho {
            continue;
        }
        let sum = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| expanded[i])
            .sum::<BigInt>();
        out.push(sum);
    }
    out
}
