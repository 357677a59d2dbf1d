//! The rational Neron-Severi lattice of a Grassmann bundle over a curve,
//! its nef / pseudo-effective / curve cones, and the intersection pairing.
//!
//! The lattice has rank two. Divisor classes are written over the basis
//! `([O(1)], L)` where `[O(1)]` is the tautological class and `L` the class
//! of a fiber; the nef cone is spanned by `L` and `M = [O(1)] - theta * L`,
//! and the curve cone by the distinguished section `Gamma_s` and a line in
//! a fiber `Gamma_l`. All coefficients are exact rationals.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hn::{AlignedHead, SplitBundle};

/// A divisor class over the basis `([O(1)], L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    /// Coefficient of the tautological class `[O(1)]`.
    pub e_taut: BigRational,
    /// Coefficient of the fiber class `L`.
    pub e_fib: BigRational,
}

/// The same class over the nef basis `(L, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMCoords {
    /// Coefficient of the fiber class `L`.
    pub a: BigRational,
    /// Coefficient of `M = [O(1)] - theta * L`.
    pub b: BigRational,
}

impl DivisorClass {
    pub fn new(e_taut: BigRational, e_fib: BigRational) -> Self {
        Self { e_taut, e_fib }
    }

    /// The tautological class `[O(1)]`.
    pub fn tautological() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The fiber class `L`.
    pub fn fiber() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// The second nef generator `M = [O(1)] - theta * L`.
    pub fn nef_generator_m(theta: &BigInt) -> Self {
        Self::new(BigRational::one(), BigRational::from(-theta.clone()))
    }

    /// The second pseudo-effective generator `[O(1)] - zeta * L`, defined
    /// when some filtration head has rank exactly r.
    pub fn pseff_generator(zeta: &BigInt) -> Self {
        Self::new(BigRational::one(), BigRational::from(-zeta.clone()))
    }

    /// Change of basis into `(L, M)` coordinates: `b = e_taut`,
    /// `a = e_fib + theta * e_taut`.
    pub fn to_lm(&self, theta: &BigInt) -> LMCoords {
        let theta = BigRational::from(theta.clone());
        LMCoords {
            a: &self.e_fib + &theta * &self.e_taut,
            b: self.e_taut.clone(),
        }
    }

    /// Inverse of [`DivisorClass::to_lm`].
    pub fn from_lm(lm: &LMCoords, theta: &BigInt) -> Self {
        let theta = BigRational::from(theta.clone());
        Self {
            e_taut: lm.b.clone(),
            e_fib: &lm.a - &theta * &lm.b,
        }
    }

    /// Intersection number with a curve class, computed from the pairing
    /// table `[O(1)].Gamma_s = theta`, `[O(1)].Gamma_l = 1`,
    /// `L.Gamma_s = 1`, `L.Gamma_l = 0`.
    pub fn pair(&self, curve: &CurveClass, theta: &BigInt) -> BigRational {
        let theta = BigRational::from(theta.clone());
        &self.e_taut * (&theta * &curve.n_s + &curve.n_l) + &self.e_fib * &curve.n_s
    }

    /// Nef means nonnegative coordinates over the nef basis `(L, M)`.
    pub fn is_nef(&self, theta: &BigInt) -> bool {
        let lm = self.to_lm(theta);
        !lm.a.is_negative() && !lm.b.is_negative()
    }

    /// Ample means interior to the nef cone: strictly positive `(a, b)`.
    pub fn is_ample(&self, theta: &BigInt) -> bool {
        let lm = self.to_lm(theta);
        lm.a.is_positive() && lm.b.is_positive()
    }

    /// Pseudo-effective test against the cone spanned by `L` and
    /// `[O(1)] - zeta * L`. The cone is only known when a filtration head
    /// of rank exactly r exists; pass its degree as `zeta`. With no such
    /// head the answer is unknown and the call fails with
    /// [`Error::ZetaUnavailable`] rather than defaulting to `false`.
    pub fn is_pseff(&self, zeta: Option<&BigInt>) -> Result<bool> {
        let zeta = zeta.ok_or(Error::ZetaUnavailable)?;
        let zeta = BigRational::from(zeta.clone());
        Ok(!self.e_taut.is_negative() && !(&self.e_fib + zeta * &self.e_taut).is_negative())
    }
}

/// A curve class over the generators `(Gamma_s, Gamma_l)` of the cone of
/// curves. Coordinates are nonnegative rationals (integral for actual
/// curves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    n_s: BigRational,
    n_l: BigRational,
}

impl CurveClass {
    pub fn new(n_s: BigRational, n_l: BigRational) -> Result<Self> {
        if n_s.is_negative() || n_l.is_negative() {
            return Err(Error::NegativeCurveCoordinate);
        }
        Ok(Self { n_s, n_l })
    }

    pub fn from_integers(n_s: u64, n_l: u64) -> Self {
        Self {
            n_s: BigRational::from(BigInt::from(n_s)),
            n_l: BigRational::from(BigInt::from(n_l)),
        }
    }

    /// The class of the distinguished section given by the tail quotient.
    pub fn gamma_s() -> Self {
        Self::from_integers(1, 0)
    }

    /// The class of a line in a Grassmannian fiber.
    pub fn gamma_l() -> Self {
        Self::from_integers(0, 1)
    }

    pub fn n_s(&self) -> &BigRational {
        &self.n_s
    }

    pub fn n_l(&self) -> &BigRational {
        &self.n_l
    }
}

/// The generators `(Gamma_s, Gamma_l)` of the cone of curves. Their
/// pairing matrix against `(L, M)` is the 2x2 identity.
pub fn curve_cone_generators() -> (CurveClass, CurveClass) {
    (CurveClass::gamma_s(), CurveClass::gamma_l())
}

/// The class of the section defined by a rank-r quotient of degree
/// `delta`: the unique curve class with `L`-degree 1 and `[O(1)]`-degree
/// `delta`, namely `(n_s, n_l) = (1, delta - theta)`.
///
/// Quotient degrees are bounded below by the tail degree, so `delta <
/// theta` is rejected.
pub fn section_class(delta: &BigInt, theta: &BigInt) -> Result<CurveClass> {
    if delta < theta {
        return Err(Error::BelowThetaBound {
            delta: delta.clone(),
            theta: theta.clone(),
        });
    }
    Ok(CurveClass {
        n_s: BigRational::one(),
        n_l: BigRational::from(delta - theta),
    })
}

/// One isotypic block of an exterior power of a split bundle: the line
/// bundles obtained as products over `r`-subsets of the summands, grouped
/// by (degree, triviality) with their multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorEntry {
    pub degree: BigInt,
    /// True only when every factor is the structure sheaf. A product of
    /// nontrivial degree-zero summands is conservatively flagged
    /// nontrivial.
    pub trivial: bool,
    /// Number of `r`-subsets producing this block.
    pub count: BigUint,
}

/// Expands the r-th exterior power of a split bundle: one block per
/// r-subset of the summands counted with multiplicity, sorted by
/// (degree, triviality).
pub fn exterior_power_degrees(bundle: &SplitBundle, r: u64) -> Result<Vec<ExteriorEntry>> {
    let total = bundle.total_rank();
    if r == 0 || r > total {
        return Err(Error::RhoOutOfRange {
            rho: r,
            total_rank: total,
        });
    }
    let mut acc: BTreeMap<(BigInt, bool), BigUint> = BTreeMap::new();
    collect_subsets(
        bundle.summands(),
        r,
        BigInt::zero(),
        true,
        BigUint::one(),
        &mut acc,
    );
    Ok(acc
        .into_iter()
        .map(|((degree, trivial), count)| ExteriorEntry {
            degree,
            trivial,
            count,
        })
        .collect())
}

fn collect_subsets(
    summands: &[crate::hn::Summand],
    remaining: u64,
    degree: BigInt,
    trivial: bool,
    count: BigUint,
    acc: &mut BTreeMap<(BigInt, bool), BigUint>,
) {
    if remaining == 0 {
        *acc.entry((degree, trivial)).or_insert_with(BigUint::zero) += count;
        return;
    }
    let Some((first, rest)) = summands.split_first() else {
        return;
    };
    let take_max = remaining.min(first.multiplicity());
    for k in 0..=take_max {
        let ways = num_integer::binomial(BigUint::from(first.multiplicity()), BigUint::from(k));
        collect_subsets(
            rest,
            remaining - k,
            &degree + first.degree() * BigInt::from(k),
            trivial && (k == 0 || first.trivial()),
            &count * ways,
            acc,
        );
    }
}

/// A count of independent sections; `exact = false` means the value is
/// only a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCount {
    pub value: BigInt,
    pub exact: bool,
}

impl SectionCount {
    fn exact(value: BigInt) -> Self {
        Self { value, exact: true }
    }
}

/// Section count of a line bundle of the given degree on a curve of the
/// given genus. Negative degree has none; degree zero has exactly one for
/// the structure sheaf and none for a generic nontrivial bundle (which
/// needs genus >= 1 to exist); positive degree follows Riemann-Roch, exact
/// above the canonical degree `2 * genus - 2` and a lower bound at or
/// below it.
pub fn h0_estimate(degree: &BigInt, trivial: bool, genus: u64) -> SectionCount {
    if degree.is_negative() {
        return SectionCount::exact(BigInt::zero());
    }
    if degree.is_zero() {
        return if trivial || genus == 0 {
            SectionCount::exact(BigInt::one())
        } else {
            SectionCount::exact(BigInt::zero())
        };
    }
    if genus == 0 {
        return SectionCount::exact(degree + 1);
    }
    let genus = BigInt::from(genus);
    let riemann_roch: BigInt = degree - &genus + 1;
    if *degree > 2 * genus - 2 {
        SectionCount::exact(riemann_roch.max(BigInt::one()))
    } else {
        SectionCount {
            value: riemann_roch.max(BigInt::zero()),
            exact: false,
        }
    }
}

fn sum_counts(parts: impl Iterator<Item = (SectionCount, BigUint)>) -> SectionCount {
    let mut value = BigInt::zero();
    let mut exact = true;
    for (each, count) in parts {
        value += each.value * BigInt::from(count);
        exact &= each.exact;
    }
    SectionCount { value, exact }
}

/// Section count of the r-th exterior power of a split bundle, summed over
/// its line-bundle blocks.
pub fn h0_exterior_power(bundle: &SplitBundle, r: u64) -> Result<SectionCount> {
    let entries = exterior_power_degrees(bundle, r)?;
    let genus = bundle.genus();
    Ok(sum_counts(entries.into_iter().map(|e| {
        let each = h0_estimate(&e.degree, e.trivial, genus);
        (each, e.count)
    })))
}

/// Effectivity and uniqueness report for the class
/// `[O(1)] - zeta * L`: when a filtration head of rank exactly r exists
/// and r divides its degree, the class carries exactly one effective
/// divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueDivisorReport {
    pub hypothesis_holds: bool,
    pub head: Option<AlignedHead>,
    /// Whether r divides the head degree; absent when no head aligns.
    pub divisible: Option<bool>,
    /// Degree of the normalizing twist, `zeta / r`.
    pub alpha_twist: Option<BigInt>,
    pub class_is_effective: Option<bool>,
    pub unique: Option<bool>,
    /// Section count of the twisted determinant, expected to be exactly 1.
    pub h0: Option<SectionCount>,
}

/// Checks the effectivity and uniqueness of `[O(1)] - zeta * L` on a split
/// bundle and verifies the section count of the twisted exterior power.
///
/// The twist subtracts `zeta / r` from every summand degree, so each
/// r-subset block drops by `zeta`; the head block lands at degree zero and
/// its twisted determinant is trivial by the choice of twist, while every
/// other block lands strictly below zero.
pub fn unique_divisor_check(bundle: &SplitBundle, r: u64) -> Result<UniqueDivisorReport> {
    let hn = bundle.hn_filtration();
    let check = hn.aligned_head_check(r);
    let Some(head) = check.head else {
        // r is validated by the exterior-power expansion even on failure
        exterior_power_degrees(bundle, r)?;
        return Ok(UniqueDivisorReport {
            hypothesis_holds: false,
            head: None,
            divisible: None,
            alpha_twist: None,
            class_is_effective: None,
            unique: None,
            h0: None,
        });
    };
    if !check.holds {
        return Ok(UniqueDivisorReport {
            hypothesis_holds: false,
            head: Some(head),
            divisible: check.divisible,
            alpha_twist: None,
            class_is_effective: None,
            unique: None,
            h0: None,
        });
    }
    let zeta = head.degree.clone();
    let alpha_twist = &zeta / BigInt::from(r);
    let genus = bundle.genus();
    let entries = exterior_power_degrees(bundle, r)?;
    let h0 = sum_counts(entries.into_iter().map(|e| {
        let twisted_degree = &e.degree - &zeta;
        // only the head block reaches degree zeta, and its twisted
        // determinant is trivial by construction
        let each = h0_estimate(&twisted_degree, e.degree == zeta, genus);
        (each, e.count)
    }));
    Ok(UniqueDivisorReport {
        hypothesis_holds: true,
        head: Some(head),
        divisible: Some(true),
        alpha_twist: Some(alpha_twist),
        class_is_effective: Some(true),
        unique: Some(true),
        h0: Some(h0),
    })
}
