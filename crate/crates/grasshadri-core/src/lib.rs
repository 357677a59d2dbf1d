//! Exact positivity invariants of Grassmann bundles over smooth projective
//! curves.
//!
//! Given a non-semistable vector bundle on a curve, presented either by
//! the ranks and degrees of its slope-filtration pieces or as a direct sum
//! of line bundles, this crate computes — in exact rational arithmetic —
//! the nef, pseudo-effective and curve cones of the Grassmann bundle of
//! rank-`r` quotients, intersection numbers against the two curve-cone
//! generators, and Seshadri constants of ample classes, exactly wherever
//! one of the two exactness criteria applies and as certified intervals
//! otherwise.
//!
//! * [`hn`] owns the filtration data: slopes, level selection, twist
//!   normalization, and the quotient-degree bounds.
//! * [`ns`] models the rank-two Neron-Severi lattice, its cones and
//!   pairing, plus section counts of split bundles.
//! * [`seshadri`] applies the exactness criteria per point stratum and
//!   cross-checks them with a brute-force ratio oracle.

// errors carry exact-rational diagnostics and stay on cold paths
#![allow(clippy::result_large_err)]

pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod hn;
pub mod ns;
pub mod seshadri;

pub use error::{Error, Result};
pub use hn::{
    AlignedHead, AlignedHeadCheck, HNData, HNPiece, LevelSelection, SlopeGapCheck, SplitBundle,
    Summand,
};
pub use ns::{
    curve_cone_generators, exterior_power_degrees, h0_estimate, h0_exterior_power, section_class,
    unique_divisor_check, CurveClass, DivisorClass, ExteriorEntry, LMCoords, SectionCount,
    UniqueDivisorReport,
};
pub use seshadri::{
    oracle_min_ratio, ruled_surface, seshadri_at, seshadri_summary, Criterion, CurveFamily,
    OracleResult, OracleWitness, PointStratum, SeshadriDiagnostics, SeshadriReport, SeshadriValue,
};
