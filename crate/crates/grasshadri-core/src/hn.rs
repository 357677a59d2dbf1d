//! Harder-Narasimhan data for non-semistable bundles on a curve.
//!
//! Everything downstream (cones, intersection numbers, Seshadri constants)
//! is driven by the numerical skeleton of the bundle: the ranks and degrees
//! of the graded pieces of its canonical slope filtration, ordered by
//! strictly decreasing slope. This module owns that skeleton, the selection
//! of a filtration level of a given tail rank, the twist normalization that
//! places the tail degree in `[-r, 0)`, and the quotient-degree bounds the
//! exactness criteria rest on.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// One graded piece of the slope filtration: a semistable quotient of
/// consecutive filtration steps, recorded by rank and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNPiece {
    rank: u64,
    degree: BigInt,
}

impl HNPiece {
    pub fn new(rank: u64, degree: impl Into<BigInt>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(Self {
            rank,
            degree: degree.into(),
        })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// The slope degree/rank, as an exact rational.
    pub fn slope(&self) -> BigRational {
        BigRational::new(self.degree.clone(), BigInt::from(self.rank))
    }
}

/// Ordered graded pieces of the slope filtration (strictly decreasing
/// slopes, at least two pieces) plus the genus of the base curve.
///
/// The genus never enters the cone or Seshadri formulas; it is carried for
/// the section-count estimates on split bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNData {
    pieces: Vec<HNPiece>,
    genus: u64,
}

/// A choice of filtration level: the tail quotient below step `m - 1`,
/// with its rank `r` and degree `theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSelection {
    m: usize,
    r: u64,
    theta: BigInt,
}

impl LevelSelection {
    /// 1-based level index, `2 <= m <= d`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Rank of the tail quotient.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// Degree of the tail quotient.
    pub fn theta(&self) -> &BigInt {
        &self.theta
    }
}

/// A filtration head of rank exactly `r`: the first `head_len` pieces, with
/// their total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedHead {
    /// Number of graded pieces in the head (the index `c`).
    pub head_len: usize,
    /// Total degree of the head (the invariant `zeta`).
    pub degree: BigInt,
}

/// Verdict of the slope-gap criterion with both sides of the inequality.
///
/// The criterion asks that the slope drop across the selected level,
/// `slope(piece m) - slope(piece m-1)`, is at most the normalized tail
/// degree. The slope gap is twist-invariant; the tail degree must be the
/// normalized one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeGapCheck {
    pub holds: bool,
    /// Left side: `slope(piece m) - slope(piece m-1)` (negative).
    pub slope_gap: BigRational,
    /// Right side: the normalized tail degree.
    pub theta: BigInt,
}

/// Verdict of the aligned-head criterion: some head has rank exactly `r`
/// and its degree is divisible by `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedHeadCheck {
    pub holds: bool,
    pub head: Option<AlignedHead>,
    /// Whether `r` divides the head degree; absent when no head aligns.
    pub divisible: Option<bool>,
}

impl HNData {
    /// Validates that there are at least two pieces and that slopes
    /// strictly decrease.
    pub fn new(pieces: Vec<HNPiece>, genus: u64) -> Result<Self> {
        if pieces.len() < 2 {
            return Err(Error::SemistableInput);
        }
        for i in 1..pieces.len() {
            if pieces[i - 1].slope() <= pieces[i].slope() {
                return Err(Error::SlopesNotDecreasing { index: i + 1 });
            }
        }
        Ok(Self { pieces, genus })
    }

    pub fn pieces(&self) -> &[HNPiece] {
        &self.pieces
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Number of graded pieces (`d` in the filtration indexing).
    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn total_rank(&self) -> u64 {
        self.pieces.iter().map(|p| p.rank).sum()
    }

    pub fn total_degree(&self) -> BigInt {
        self.pieces.iter().map(|p| &p.degree).sum()
    }

    /// Ranks of the proper tail quotients, one per level `m = d, ..., 2`,
    /// in increasing order.
    pub fn tail_ranks(&self) -> Vec<u64> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.pieces.len() - 1);
        for p in self.pieces.iter().skip(1).rev() {
            acc += p.rank;
            out.push(acc);
        }
        out
    }

    /// Finds the unique level whose tail quotient has rank exactly `r`.
    pub fn select_level(&self, r: u64) -> Result<LevelSelection> {
        let d = self.pieces.len();
        let mut rank_acc = 0u64;
        let mut degree_acc = BigInt::zero();
        for m in (2..=d).rev() {
            rank_acc += self.pieces[m - 1].rank;
            degree_acc += &self.pieces[m - 1].degree;
            if rank_acc == r {
                return Ok(LevelSelection {
                    m,
                    r,
                    theta: degree_acc,
                });
            }
            if rank_acc > r {
                break;
            }
        }
        Err(Error::RankNotAligned {
            r,
            available: self.tail_ranks(),
        })
    }

    /// Twists every piece by the unique integer `alpha` that places the
    /// selected tail degree in `[-r, 0)`. Returns the twisted data and
    /// `alpha`; each degree becomes `degree - alpha * rank`, so all slopes
    /// shift by `-alpha` and slope differences are unchanged.
    pub fn normalize_twist(&self, sel: &LevelSelection) -> (HNData, BigInt) {
        let r = BigInt::from(sel.r);
        let alpha = (&sel.theta + &r).div_floor(&r);
        let pieces = self
            .pieces
            .iter()
            .map(|p| HNPiece {
                rank: p.rank,
                degree: &p.degree - &alpha * BigInt::from(p.rank),
            })
            .collect();
        (
            HNData {
                pieces,
                genus: self.genus,
            },
            alpha,
        )
    }

    /// The filtration head of rank exactly `r`, if one exists. The head
    /// must be proper (fewer pieces than the whole filtration). Absence is
    /// a value, not an error: the pseudo-effective cone is simply not
    /// determined in that case.
    pub fn aligned_head(&self, r: u64) -> Option<AlignedHead> {
        let mut rank_acc = 0u64;
        let mut degree_acc = BigInt::zero();
        for c in 1..self.pieces.len() {
            rank_acc += self.pieces[c - 1].rank;
            degree_acc += &self.pieces[c - 1].degree;
            if rank_acc == r {
                return Some(AlignedHead {
                    head_len: c,
                    degree: degree_acc,
                });
            }
            if rank_acc > r {
                return None;
            }
        }
        None
    }

    /// Sharp lower bound for the degree of any rank-`rho` quotient bundle:
    /// with `t` the smallest index such that `rank(E/E_t) <= rho`, the
    /// bound is `degree(E/E_t) + (rho - rank(E/E_t)) * slope(piece t)`.
    ///
    /// When `rho` is a tail rank this equals the selected tail degree.
    pub fn theta_for_rank(&self, rho: u64) -> Result<BigRational> {
        let total = self.total_rank();
        if rho == 0 || rho >= total {
            return Err(Error::RhoOutOfRange {
                rho,
                total_rank: total,
            });
        }
        let mut below_rank = total;
        let mut below_degree = self.total_degree();
        for piece in &self.pieces {
            below_rank -= piece.rank;
            below_degree -= &piece.degree;
            if below_rank <= rho {
                let excess = BigInt::from(rho - below_rank);
                return Ok(
                    BigRational::from(below_degree) + BigRational::from(excess) * piece.slope()
                );
            }
        }
        unreachable!("the last step leaves rank(E/E_d) = 0 <= rho")
    }

    /// Lower bounds for the degree of a rank-`r` quotient other than the
    /// tail itself: the base bound is the tail degree; the refined bound
    /// adds the (positive) slope gap across the selected level. The
    /// refined bound is always strictly larger.
    pub fn quotient_degree_bounds(&self, sel: &LevelSelection) -> (BigRational, BigRational) {
        let base = BigRational::from(sel.theta.clone());
        let above = self.pieces[sel.m - 2].slope();
        let at = self.pieces[sel.m - 1].slope();
        let refined = &base + above - at;
        (base, refined)
    }

    /// The slope-gap criterion on normalized data:
    /// `slope(piece m) - slope(piece m-1) <= theta`.
    ///
    /// Errors with [`Error::NotNormalized`] unless `theta` lies in
    /// `[-r, 0)`; apply [`HNData::normalize_twist`] first.
    pub fn slope_gap_check(&self, sel: &LevelSelection) -> Result<SlopeGapCheck> {
        let r = BigInt::from(sel.r);
        if sel.theta < -&r || !sel.theta.is_negative() {
            return Err(Error::NotNormalized {
                theta: sel.theta.clone(),
                r: sel.r,
            });
        }
        let gap = self.pieces[sel.m - 1].slope() - self.pieces[sel.m - 2].slope();
        let holds = gap <= BigRational::from(sel.theta.clone());
        Ok(SlopeGapCheck {
            holds,
            slope_gap: gap,
            theta: sel.theta.clone(),
        })
    }

    /// The aligned-head criterion: some head has rank exactly `r` and `r`
    /// divides its degree.
    pub fn aligned_head_check(&self, r: u64) -> AlignedHeadCheck {
        match self.aligned_head(r) {
            None => AlignedHeadCheck {
                holds: false,
                head: None,
                divisible: None,
            },
            Some(head) => {
                let divisible = head.degree.is_multiple_of(&BigInt::from(r));
                AlignedHeadCheck {
                    holds: divisible,
                    head: Some(head),
                    divisible: Some(divisible),
                }
            }
        }
    }
}

/// One isotypic block of a split bundle: a line-bundle summand with its
/// multiplicity. `trivial` marks the structure sheaf among the degree-zero
/// summands; a nontrivial degree-zero summand is taken generic (no
/// sections), which needs positive genus to exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    degree: BigInt,
    multiplicity: u64,
    trivial: bool,
}

impl Summand {
    pub fn new(degree: impl Into<BigInt>, multiplicity: u64, trivial: bool) -> Result<Self> {
        let degree = degree.into();
        if multiplicity == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        if trivial && !degree.is_zero() {
            return Err(Error::TrivialNonzeroDegree { degree });
        }
        Ok(Self {
            degree,
            multiplicity,
            trivial,
        })
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn trivial(&self) -> bool {
        self.trivial
    }
}

/// A direct sum of line bundles on a curve of the given genus. This is the
/// concrete input model: the slope filtration of a split bundle is read off
/// by grouping summands by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBundle {
    summands: Vec<Summand>,
    genus: u64,
}

impl SplitBundle {
    /// Validates the summand list: a nontrivial degree-zero summand needs
    /// genus at least 1, and at least two distinct degrees must be present
    /// (a single slope would be semistable, which is out of scope).
    pub fn new(summands: Vec<Summand>, genus: u64) -> Result<Self> {
        if genus == 0
            && summands
                .iter()
                .any(|s| s.degree.is_zero() && !s.trivial)
        {
            return Err(Error::NontrivialDegreeZeroNeedsGenus);
        }
        let mut distinct: Vec<&BigInt> = summands.iter().map(|s| &s.degree).collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::SemistableInput);
        }
        Ok(Self { summands, genus })
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn total_rank(&self) -> u64 {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn total_degree(&self) -> BigInt {
        self.summands
            .iter()
            .map(|s| &s.degree * BigInt::from(s.multiplicity))
            .sum()
    }

    /// The slope filtration of a direct sum of line bundles: one graded
    /// piece per distinct degree, in decreasing order, of rank the total
    /// multiplicity at that degree.
    pub fn hn_filtration(&self) -> HNData {
        let mut by_degree: BTreeMap<BigInt, u64> = BTreeMap::new();
        for s in &self.summands {
            *by_degree.entry(s.degree.clone()).or_insert(0) += s.multiplicity;
        }
        let pieces = by_degree
            .into_iter()
            .rev()
            .map(|(degree, rank)| HNPiece {
                degree: &degree * BigInt::from(rank),
                rank,
            })
            .collect();
        HNData {
            pieces,
            genus: self.genus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex1, ex2, ex3, ex4, split_quotient_degrees};

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    fn pieces_of(hn: &HNData) -> Vec<(u64, i64)> {
        hn.pieces()
            .iter()
            .map(|p| (p.rank(), i64::try_from(p.degree()).unwrap()))
            .collect()
    }

    #[test]
    fn filtration_groups_summands_by_degree() {
        assert_eq!(pieces_of(&ex1().hn_filtration()), vec![(3, 0), (1, -1)]);
        assert_eq!(pieces_of(&ex3().hn_filtration()), vec![(2, 2), (2, -2)]);
        assert_eq!(pieces_of(&ex4().hn_filtration()), vec![(3, 0), (1, -1)]);
    }

    #[test]
    fn single_slope_is_rejected_as_semistable() {
        let err = SplitBundle::new(vec![Summand::new(0, 2, true).unwrap()], 0).unwrap_err();
        assert_eq!(err, Error::SemistableInput);
    }

    #[test]
    fn nontrivial_degree_zero_needs_positive_genus() {
        let err = SplitBundle::new(
            vec![
                Summand::new(-1, 1, false).unwrap(),
                Summand::new(0, 1, false).unwrap(),
            ],
            0,
        )
        .unwrap_err();
        assert_eq!(err, Error::NontrivialDegreeZeroNeedsGenus);
    }

    #[test]
    fn trivial_summand_must_have_degree_zero() {
        let err = Summand::new(2, 1, true).unwrap_err();
        assert_eq!(err, Error::TrivialNonzeroDegree { degree: big(2) });
    }

    #[test]
    fn slopes_are_exact_rationals() {
        assert_eq!(HNPiece::new(3, 0).unwrap().slope(), rat(0, 1));
        assert_eq!(HNPiece::new(1, -1).unwrap().slope(), rat(-1, 1));
        assert_eq!(HNPiece::new(4, -1).unwrap().slope(), rat(-1, 4));
    }

    #[test]
    fn hn_data_requires_strictly_decreasing_slopes() {
        let equal = HNData::new(
            vec![HNPiece::new(2, 2).unwrap(), HNPiece::new(1, 1).unwrap()],
            0,
        );
        assert_eq!(
            equal.unwrap_err(),
            Error::SlopesNotDecreasing { index: 2 }
        );
        let single = HNData::new(vec![HNPiece::new(2, 2).unwrap()], 0);
        assert_eq!(single.unwrap_err(), Error::SemistableInput);
    }

    #[test]
    fn select_level_finds_unique_tail() {
        let sel = ex1().hn_filtration().select_level(1).unwrap();
        assert_eq!((sel.m(), sel.r(), sel.theta().clone()), (2, 1, big(-1)));

        let sel = ex2().hn_filtration().select_level(2).unwrap();
        assert_eq!((sel.m(), sel.r(), sel.theta().clone()), (2, 2, big(-2)));

        let err = ex1().hn_filtration().select_level(3).unwrap_err();
        assert_eq!(
            err,
            Error::RankNotAligned {
                r: 3,
                available: vec![1]
            }
        );
    }

    #[test]
    fn normalize_twist_lands_theta_in_window() {
        let hn = ex1().hn_filtration();
        let sel = hn.select_level(1).unwrap();
        let (twisted, alpha) = hn.normalize_twist(&sel);
        assert_eq!(alpha, big(0));
        assert_eq!(twisted, hn);

        let hn = HNData::new(
            vec![HNPiece::new(2, 6).unwrap(), HNPiece::new(2, 3).unwrap()],
            0,
        )
        .unwrap();
        let sel = hn.select_level(2).unwrap();
        assert_eq!(sel.theta(), &big(3));
        let (twisted, alpha) = hn.normalize_twist(&sel);
        assert_eq!(alpha, big(2));
        assert_eq!(pieces_of(&twisted), vec![(2, 2), (2, -1)]);
        assert_eq!(twisted.select_level(2).unwrap().theta(), &big(-1));

        let hn = HNData::new(
            vec![HNPiece::new(1, 0).unwrap(), HNPiece::new(1, -5).unwrap()],
            0,
        )
        .unwrap();
        let sel = hn.select_level(1).unwrap();
        let (twisted, alpha) = hn.normalize_twist(&sel);
        assert_eq!(alpha, big(-4));
        assert_eq!(pieces_of(&twisted), vec![(1, 4), (1, -1)]);
        // slope differences are twist-invariant
        let gap = |h: &HNData| h.pieces()[1].slope() - h.pieces()[0].slope();
        assert_eq!(gap(&hn), gap(&twisted));
        assert_eq!(gap(&twisted), rat(-5, 1));
    }

    #[test]
    fn aligned_head_matches_prefix_ranks() {
        let head = ex2().hn_filtration().aligned_head(2).unwrap();
        assert_eq!((head.head_len, head.degree.clone()), (1, big(0)));

        assert!(ex1().hn_filtration().aligned_head(1).is_none());

        let head = ex3().hn_filtration().aligned_head(2).unwrap();
        assert_eq!((head.head_len, head.degree.clone()), (1, big(2)));
    }

    #[test]
    fn theta_for_rank_matches_tail_and_enumeration() {
        let hn = ex1().hn_filtration();
        assert_eq!(hn.theta_for_rank(1).unwrap(), rat(-1, 1));

        // min degree over all rank-1 split quotients of EX2 is -1
        let min = split_quotient_degrees(&ex2(), 1).into_iter().min().unwrap();
        assert_eq!(min, big(-1));
        assert_eq!(ex2().hn_filtration().theta_for_rank(1).unwrap(), rat(-1, 1));

        // min degree over all rank-3 split quotients of EX3 is -1
        let min = split_quotient_degrees(&ex3(), 3).into_iter().min().unwrap();
        assert_eq!(min, big(-1));
        assert_eq!(ex3().hn_filtration().theta_for_rank(3).unwrap(), rat(-1, 1));

        let err = hn.theta_for_rank(4).unwrap_err();
        assert_eq!(
            err,
            Error::RhoOutOfRange {
                rho: 4,
                total_rank: 4
            }
        );
        assert!(hn.theta_for_rank(0).is_err());
    }

    #[test]
    fn quotient_degree_bounds_examples() {
        let cases = [
            (ex1(), 1, rat(-1, 1), rat(0, 1)),
            (ex2(), 2, rat(-2, 1), rat(-1, 1)),
            (ex3(), 2, rat(-2, 1), rat(0, 1)),
        ];
        for (bundle, r, base, refined) in cases {
            let hn = bundle.hn_filtration();
            let sel = hn.select_level(r).unwrap();
            assert_eq!(hn.quotient_degree_bounds(&sel), (base.clone(), refined));
        }
    }

    #[test]
    fn slope_gap_check_examples() {
        let check = |bundle: &SplitBundle, r: u64| {
            let hn = bundle.hn_filtration();
            let sel = hn.select_level(r).unwrap();
            hn.slope_gap_check(&sel).unwrap()
        };
        let c1 = check(&ex1(), 1);
        assert!(c1.holds);
        assert_eq!(c1.slope_gap, rat(-1, 1));
        assert_eq!(c1.theta, big(-1));

        let c2 = check(&ex2(), 2);
        assert!(!c2.holds);
        assert_eq!(c2.slope_gap, rat(-1, 1));
        assert_eq!(c2.theta, big(-2));

        assert!(check(&ex4(), 1).holds);
        assert!(check(&ex3(), 2).holds);
    }

    #[test]
    fn slope_gap_check_rejects_unnormalized_theta() {
        let hn = HNData::new(
            vec![HNPiece::new(1, 0).unwrap(), HNPiece::new(1, -5).unwrap()],
            0,
        )
        .unwrap();
        let sel = hn.select_level(1).unwrap();
        let err = hn.slope_gap_check(&sel).unwrap_err();
        assert_eq!(
            err,
            Error::NotNormalized {
                theta: big(-5),
                r: 1
            }
        );
    }

    #[test]
    fn aligned_head_check_examples() {
        let c = ex2().hn_filtration().aligned_head_check(2);
        assert!(c.holds);
        assert_eq!(c.divisible, Some(true));

        let c = ex1().hn_filtration().aligned_head_check(1);
        assert!(!c.holds);
        assert!(c.head.is_none());

        let c = ex3().hn_filtration().aligned_head_check(2);
        assert!(c.holds);
        assert_eq!(c.head.unwrap().degree, big(2));
    }
}
