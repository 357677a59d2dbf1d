use num_bigint::BigInt;
use num_rational::BigRational;

/// Errors produced by bundle construction and the positivity calculators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A filtration piece or summand with rank zero.
    #[error("rank must be at least 1")]
    ZeroRank,

    /// A summand with multiplicity zero.
    #[error("summand multiplicity must be at least 1")]
    ZeroMultiplicity,

    /// The input bundle is semistable (a single slope), so there is no
    /// nontrivial filtration to work with.
    #[error("bundle is semistable: need at least two distinct slopes")]
    SemistableInput,

    /// Successive filtration slopes must strictly decrease.
    #[error("slopes do not strictly decrease at piece {index}")]
    SlopesNotDecreasing { index: usize },

    /// A summand flagged trivial must have degree zero.
    #[error("trivial summand must have degree 0, got {degree}")]
    TrivialNonzeroDegree { degree: BigInt },

    /// A nontrivial degree-zero line bundle only exists on a curve of
    /// positive genus.
    #[error("nontrivial degree-0 summand requires genus >= 1")]
    NontrivialDegreeZeroNeedsGenus,

    /// The requested quotient rank is not a tail rank of the filtration.
    #[error("rank {r} is not a tail rank of the filtration (available: {available:?})")]
    RankNotAligned { r: u64, available: Vec<u64> },

    /// Quotient rank outside 1..total_rank.
    #[error("rank {rho} out of range (total rank {total_rank})")]
    RhoOutOfRange { rho: u64, total_rank: u64 },

    /// An operation that requires normalized data received a tail degree
    /// outside [-r, 0).
    #[error("tail degree {theta} is not normalized into [-{r}, 0)")]
    NotNormalized { theta: BigInt, r: u64 },

    /// The pseudo-effective cone is only determined when some filtration
    /// head has rank exactly r; without it the answer is unknown.
    #[error("pseudo-effective test undecidable: no filtration head of the selected rank")]
    ZetaUnavailable,

    /// A section class must have tautological degree at least the tail degree.
    #[error("section degree {delta} is below the tail degree bound {theta}")]
    BelowThetaBound { delta: BigInt, theta: BigInt },

    /// Curve classes live in the cone spanned by the two generators.
    #[error("curve class coordinates must be nonnegative")]
    NegativeCurveCoordinate,

    /// An ample class in the nef basis needs both coordinates positive.
    #[error("class is not ample: requires a > 0 and b > 0, got a = {a}, b = {b}")]
    NotAmple { a: BigRational, b: BigRational },

    /// Neither exactness criterion applies, so the requested computation
    /// has no authoritative answer.
    #[error("no exactness criterion applies to this filtration")]
    HypothesisUnavailable,

    /// The ruled-surface invariant must be positive.
    #[error("ruled-surface invariant e must be at least 1")]
    ZeroRuledInvariant,

    /// Oracle search box must be at least 1.
    #[error("oracle search box must be at least 1")]
    ZeroSearchBox,
}

pub type Result<T> = std::result::Result<T, Error>;
