//! Seshadri constants of ample classes on a Grassmann bundle over a curve.
//!
//! An ample class is written as `a * L + b * M` over the nef basis. Two
//! exactness criteria on the filtration decide the constant at every point
//! stratum:
//!
//! * the slope-gap criterion (the slope drop across the selected level is
//!   at most the normalized tail degree) pins the constant exactly at
//!   every point: `b`, except `a` on the distinguished section when
//!   `a < b`;
//! * the aligned-head criterion (a filtration head of rank exactly `r`
//!   whose degree is divisible by `r`) pins it everywhere except on the
//!   base locus off the section, where only the interval `[a, b]` is
//!   known.
//!
//! When neither criterion applies the engine returns the interval
//! `[min(a, b), b]`, flagged as non-authoritative bounds.
//!
//! The brute-force oracle re-derives the minimum Seshadri ratio by
//! enumerating the admissible curve-class families the case analysis
//! rests on, and must agree with the closed forms wherever they are exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::hn::{AlignedHeadCheck, HNData, HNPiece, LevelSelection, SlopeGapCheck};

/// Declared position of the point: on the distinguished section, in the
/// base locus of the tautological system but off the section, or generic.
///
/// Strata are declared by the caller; base-locus membership of an
/// arbitrary point is geometric data the numerical skeleton cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStratum {
    OnGammaS,
    InBaseLocusOffGammaS,
    Generic,
}

impl PointStratum {
    pub const ALL: [PointStratum; 3] = [
        PointStratum::OnGammaS,
        PointStratum::InBaseLocusOffGammaS,
        PointStratum::Generic,
    ];
}

/// An exact value or a closed interval for a Seshadri constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeshadriValue {
    lower: BigRational,
    upper: BigRational,
}

impl SeshadriValue {
    pub fn exact(value: BigRational) -> Self {
        Self {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn bounds(lower: BigRational, upper: BigRational) -> Self {
        assert!(lower <= upper, "interval bounds out of order");
        Self { lower, upper }
    }

    pub fn lower(&self) -> &BigRational {
        &self.lower
    }

    pub fn upper(&self) -> &BigRational {
        &self.upper
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The exact value, when the bounds coincide.
    pub fn value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.lower)
    }
}

/// Which criterion produced the reported values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// Slope-gap criterion: exact at every stratum.
    SlopeGap,
    /// Aligned-head criterion: exact except on the base locus off the
    /// section.
    AlignedHead,
    /// No criterion applies; values are non-authoritative bounds.
    BoundsOnly,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::SlopeGap => "slope-gap",
            Criterion::AlignedHead => "aligned-head",
            Criterion::BoundsOnly => "bounds-only",
        }
    }
}

/// Normalization and hypothesis data backing a Seshadri computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeshadriDiagnostics {
    /// Tail degree of the input data before normalization.
    pub theta_raw: BigInt,
    /// Twist applied by the engine.
    pub alpha: BigInt,
    /// Normalized tail degree, in `[-r, 0)`.
    pub theta: BigInt,
    pub slope_gap: SlopeGapCheck,
    pub aligned_head: AlignedHeadCheck,
}

/// Per-stratum Seshadri values of one ample class, with the global
/// extremes over all points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeshadriReport {
    pub on_gamma_s: SeshadriValue,
    pub in_base_locus_off_gamma_s: SeshadriValue,
    pub generic: SeshadriValue,
    /// Supremum of the constant over all points: always `b`.
    pub eps_one: BigRational,
    /// Infimum of the constant over all points: always `min(a, b)`.
    pub eps_inf: BigRational,
    pub criterion: Criterion,
    pub diagnostics: SeshadriDiagnostics,
}

impl SeshadriReport {
    pub fn stratum(&self, stratum: PointStratum) -> &SeshadriValue {
        match stratum {
            PointStratum::OnGammaS => &self.on_gamma_s,
            PointStratum::InBaseLocusOffGammaS => &self.in_base_locus_off_gamma_s,
            PointStratum::Generic => &self.generic,
        }
    }
}

struct Prepared {
    level: LevelSelection,
    theta_raw: BigInt,
    alpha: BigInt,
    slope_gap: SlopeGapCheck,
    aligned_head: AlignedHeadCheck,
    criterion: Criterion,
}

impl Prepared {
    fn diagnostics(&self) -> SeshadriDiagnostics {
        SeshadriDiagnostics {
            theta_raw: self.theta_raw.clone(),
            alpha: self.alpha.clone(),
            theta: self.level.theta().clone(),
            slope_gap: self.slope_gap.clone(),
            aligned_head: self.aligned_head.clone(),
        }
    }
}

/// Normalizes the data, re-selects the level, and evaluates both
/// hypotheses. The slope-gap criterion takes precedence when both hold.
fn prepare(hn: &HNData, r: u64) -> Result<Prepared> {
    let raw = hn.select_level(r)?;
    let theta_raw = raw.theta().clone();
    let (normalized, alpha) = hn.normalize_twist(&raw);
    let level = normalized
        .select_level(r)
        .expect("tail ranks are twist-invariant");
    let slope_gap = normalized
        .slope_gap_check(&level)
        .expect("tail degree normalized by construction");
    let aligned_head = normalized.aligned_head_check(r);
    let criterion = if slope_gap.holds {
        Criterion::SlopeGap
    } else if aligned_head.holds {
        Criterion::AlignedHead
    } else {
        Criterion::BoundsOnly
    };
    Ok(Prepared {
        level,
        theta_raw,
        alpha,
        slope_gap,
        aligned_head,
        criterion,
    })
}

fn ensure_ample(a: &BigRational, b: &BigRational) -> Result<()> {
    if a.is_positive() && b.is_positive() {
        Ok(())
    } else {
        Err(Error::NotAmple {
            a: a.clone(),
            b: b.clone(),
        })
    }
}

fn value_at(
    criterion: Criterion,
    a: &BigRational,
    b: &BigRational,
    stratum: PointStratum,
) -> SeshadriValue {
    match criterion {
        Criterion::SlopeGap => {
            if a < b && stratum == PointStratum::OnGammaS {
                SeshadriValue::exact(a.clone())
            } else {
                // the base-locus case collapses to the off-section case
                SeshadriValue::exact(b.clone())
            }
        }
        Criterion::AlignedHead => {
            if b <= a {
                SeshadriValue::exact(b.clone())
            } else {
                match stratum {
                    PointStratum::Generic => SeshadriValue::exact(b.clone()),
                    PointStratum::OnGammaS => SeshadriValue::exact(a.clone()),
                    PointStratum::InBaseLocusOffGammaS => {
                        SeshadriValue::bounds(a.clone(), b.clone())
                    }
                }
            }
        }
        Criterion::BoundsOnly => SeshadriValue::bounds(a.min(b).clone(), b.clone()),
    }
}

/// Seshadri constant of the ample class `a * L + b * M` at a point of the
/// given stratum. The engine normalizes the data internally; callers may
/// pass un-normalized filtrations.
pub fn seshadri_at(
    hn: &HNData,
    r: u64,
    a: &BigRational,
    b: &BigRational,
    stratum: PointStratum,
) -> Result<(SeshadriValue, Criterion)> {
    ensure_ample(a, b)?;
    let prepared = prepare(hn, r)?;
    Ok((value_at(prepared.criterion, a, b, stratum), prepared.criterion))
}

/// Full per-stratum report with the global extremes `eps_one = b` and
/// `eps_inf = min(a, b)`. When no criterion applies the report degrades
/// to bounds and is tagged [`Criterion::BoundsOnly`].
pub fn seshadri_summary(
    hn: &HNData,
    r: u64,
    a: &BigRational,
    b: &BigRational,
) -> Result<SeshadriReport> {
    ensure_ample(a, b)?;
    let prepared = prepare(hn, r)?;
    Ok(SeshadriReport {
        on_gamma_s: value_at(prepared.criterion, a, b, PointStratum::OnGammaS),
        in_base_locus_off_gamma_s: value_at(
            prepared.criterion,
            a,
            b,
            PointStratum::InBaseLocusOffGammaS,
        ),
        generic: value_at(prepared.criterion, a, b, PointStratum::Generic),
        eps_one: b.clone(),
        eps_inf: a.min(b).clone(),
        criterion: prepared.criterion,
        diagnostics: prepared.diagnostics(),
    })
}

/// Rank-two adapter: a ruled surface with invariant `e >= 1` corresponds
/// to the filtration `[(1, 0), (1, -e)]` with `r = 1`. Normalization
/// twists the tail degree to `-1` while the slope gap stays `-e`, so the
/// slope-gap criterion holds for every `e >= 1` and all values are exact.
pub fn ruled_surface(e: u64, a: &BigRational, b: &BigRational) -> Result<SeshadriReport> {
    if e == 0 {
        return Err(Error::ZeroRuledInvariant);
    }
    let hn = HNData::new(
        vec![
            HNPiece::new(1, 0)?,
            HNPiece::new(1, -BigInt::from(e))?,
        ],
        0,
    )?;
    seshadri_summary(&hn, 1, a, b)
}

/// The curve-class family a ratio witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFamily {
    /// Curves inside a single fiber: `n_s = 0`, degree at least the
    /// multiplicity.
    Fiber,
    /// The distinguished section itself (smooth, multiplicity 1).
    SectionCurve,
    /// Horizontal curves: `n_s >= 1`, multiplicity at most `n_s`, with the
    /// admissible `n_l` range set by the active criterion and stratum.
    Horizontal,
}

impl CurveFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveFamily::Fiber => "fiber",
            CurveFamily::SectionCurve => "gamma-s",
            CurveFamily::Horizontal => "horizontal",
        }
    }
}

/// The curve-class data achieving the oracle minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWitness {
    pub family: CurveFamily,
    pub n_s: u64,
    pub n_l: u64,
    pub mult: u64,
}

/// Result of the brute-force ratio search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min: BigRational,
    pub witness: OracleWitness,
}

/// Minimizes the Seshadri ratio `(a * n_s + b * n_l) / mult` over the
/// admissible curve-class families of the active criterion, enumerated up
/// to `search_box`. This is an independent check of the case analysis,
/// not a geometric enumeration; the families encode the degree and
/// multiplicity constraints the closed forms rest on:
///
/// * fiber curves: `n_s = 0`, `1 <= mult <= n_l <= search_box`;
/// * the section itself, only when the point lies on it;
/// * horizontal curves: `1 <= n_s <= search_box`, `1 <= mult <= n_s`,
///   and `n_l >= n_s * (-theta)` under the slope-gap criterion (every
///   non-tail quotient has nonnegative degree) or under the aligned-head
///   criterion at a generic point (the tautological system is effective);
///   unconstrained `n_l >= 0` otherwise.
///
/// Ties keep the first witness in enumeration order (fiber family first,
/// then the section, then horizontal curves scanned in ascending
/// `(n_s, n_l, mult)`).
pub fn oracle_min_ratio(
    hn: &HNData,
    r: u64,
    a: &BigRational,
    b: &BigRational,
    stratum: PointStratum,
    search_box: u64,
) -> Result<OracleResult> {
    ensure_ample(a, b)?;
    if search_box == 0 {
        return Err(Error::ZeroSearchBox);
    }
    let prepared = prepare(hn, r)?;
    let constrained = match prepared.criterion {
        Criterion::SlopeGap => true,
        Criterion::AlignedHead => stratum == PointStratum::Generic,
        Criterion::BoundsOnly => return Err(Error::HypothesisUnavailable),
    };

    let mut best: Option<OracleResult> = None;
    let mut consider = |ratio: BigRational, witness: OracleWitness| match &best {
        Some(current) if current.min <= ratio => {}
        _ => best = Some(OracleResult { min: ratio, witness }),
    };

    let rat = |n: u64| BigRational::from(BigInt::from(n));

    for n_l in 1..=search_box {
        for mult in 1..=n_l {
            consider(
                b * rat(n_l) / rat(mult),
                OracleWitness {
                    family: CurveFamily::Fiber,
                    n_s: 0,
                    n_l,
                    mult,
                },
            );
        }
    }

    if stratum == PointStratum::OnGammaS {
        consider(
            a.clone(),
            OracleWitness {
                family: CurveFamily::SectionCurve,
                n_s: 1,
                n_l: 0,
                mult: 1,
            },
        );
    }

    let minus_theta = -prepared.level.theta().clone();
    for n_s in 1..=search_box {
        let n_l_from = if constrained {
            match (BigInt::from(n_s) * &minus_theta).to_u64() {
                Some(lb) if lb <= search_box => lb,
                _ => continue, // no admissible n_l inside the box
            }
        } else {
            0
        };
        for n_l in n_l_from..=search_box {
            for mult in 1..=n_s {
                consider(
                    (a * rat(n_s) + b * rat(n_l)) / rat(mult),
                    OracleWitness {
                        family: CurveFamily::Horizontal,
                        n_s,
                        n_l,
                        mult,
                    },
                );
            }
        }
    }

    Ok(best.expect("the fiber family is never empty"))
}
