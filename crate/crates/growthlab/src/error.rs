use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual operations; most are precondition violations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate modulus: {0}")]
    DegenerateModulus(String),
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("empty input set")]
    EmptyInput,
    #[error("pair graph has an edge with right element 0")]
    ZeroDivisorEdge,
    #[error("dilation by zero")]
    ZeroDilation,
    #[error("zero element not allowed here")]
    ZeroElement,
    #[error("set too small: need at least {need}, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("enumeration budget exceeded ({0} elementary steps)")]
    BudgetExceeded(u128),
    #[error("subset scan budget exceeded: |A| = {0} > 20")]
    SubsetBudgetExceeded(usize),
    #[error("graph density below hypothesis threshold")]
    DensityTooLow,
    #[error("no pigeonhole witness found")]
    NoWitness,
    #[error("0 in right-hand set")]
    ZeroInRight,
    #[error("degenerate elements: {0}")]
    DegenerateElements(String),
    #[error("points do not form a frame")]
    NotAFrame,
    #[error("point at infinity has no affine preimage")]
    AtInfinity,
    #[error("projective dimension mismatch")]
    DimMismatch,
    #[error("degenerate triple: points not pairwise distinct")]
    DegenerateTriple,
    #[error("N = {0} is not a perfect cube")]
    NotACube(u64),
    #[error("field too small for the construction")]
    FieldTooSmall,
    #[error("need at least two points")]
    TooFewPoints,
    #[error("instance has no incidences")]
    NoIncidences,
    #[error("focus lies in the point set")]
    FocusInSet,
    #[error("point not in P")]
    NotInP,
    #[error("element not in the left set of the graph")]
    NotInLeftSet,
    #[error("regularity violated: point degrees not within factor {0}")]
    RegularityViolated(u64),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("projective reduction map degenerate")]
    MapDegenerate,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("element not in the set")]
    NotInSet,
    #[error("subset is not an A-chain")]
    NotAChain,
    #[error("set is not separable")]
    NotSeparable,
    #[error("epsilon must be a square of a rational in the open interval {0}")]
    BadEpsilon(&'static str),
    #[error("invalid campaign spec: {0}")]
    SpecInvalid(String),
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
