use thiserror::Error;

/// Everything that can go wrong while approximating, snapping or verifying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("enclosure needs more than {cap} bits of precision")]
    PrecisionExhausted { cap: u32 },
    #[error("input precision insufficient: radius exceeds 2^-{needed}")]
    InsufficientPrecision { needed: u32 },
    #[error("iteration cap of {cap} reached")]
    IterationCap { cap: usize },
    #[error("input is the zero vector")]
    ZeroDirection,
    #[error("epsilon must lie in (0, 1/8]")]
    EpsilonOutOfRange,
    #[error("accuracy too coarse: chosen preimage leaves the unit ball")]
    OutsideUnitBall,
    #[error("certified error exceeds the requested epsilon")]
    ErrorBoundViolated,
    #[error("the Jacobi-Perron strategy needs dimension 3, got {dim}")]
    JacobiPerronDimension { dim: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("point is not on the unit sphere")]
    NotOnSphere,
    #[error("point is the projection pole")]
    PoleInput,
    #[error("degenerate point pair (equal or antipodal)")]
    DegeneratePair,
    #[error("degenerate point triple")]
    DegenerateTriple,
    #[error("great circles are identical; no unique intersection")]
    CoplanarGreatCircles,
    #[error("segments do not intersect")]
    NoSegmentIntersection,
    #[error("polynomial is reducible or has no distinct real roots")]
    ReduciblePolynomial,
    #[error("isolation radius does not separate the roots")]
    IsolationRadiusTooLarge,
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("exhaustive scan of {candidates} candidates exceeds the limit")]
    ScanTooLarge { candidates: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
