use thiserror::Error;

/// Failure modes of the constructions.
///
/// The display strings are part of the CLI contract and appear verbatim
/// in JSON reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate ray")]
    DegenerateRay,
    #[error("degenerate line")]
    DegenerateLine,
    #[error("parallel lines")]
    ParallelLines,
    #[error("collinear points")]
    CollinearPoints,
    #[error("coincident circles")]
    CoincidentCircles,
    #[error("angle {0} outside (0, pi)")]
    AngleOutOfRange(f64),
    #[error("side witness collinear with chord")]
    WitnessOnChord,
    #[error("invalid circle radius {0}")]
    InvalidRadius(f64),
    #[error("inversion power must be positive, got {0}")]
    InvalidPower(f64),
    #[error("inversion center")]
    InversionCenter,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("antipedal degenerate")]
    AntipedalDegenerate,
    #[error("isogonal undefined")]
    IsogonalUndefined,
    #[error("conjugate at infinity")]
    ConjugateAtInfinity,
    #[error("not homothetic")]
    NotHomothetic,
    #[error("ratio undefined")]
    RatioUndefined,
    #[error("point not on side line")]
    NotOnSideLine,
    #[error("angles must be positive and sum to pi")]
    InvalidAngles,
    #[error("assignment index {0} outside 1..=6")]
    InvalidAssignment(usize),
    #[error("assignment infeasible (angle sum)")]
    AssignmentInfeasible,
    #[error("no common point")]
    NoCommonPoint,
    #[error("no interior pedal point")]
    NoInteriorPedalPoint,
    #[error("inverse at infinity")]
    InverseAtInfinity,
    #[error("fixed point, pedals degenerate")]
    FixedPoint,
    #[error("point outside circumcircle")]
    OutsideCircumcircle,
    #[error("degenerate pedal triangle")]
    DegeneratePedal,
    #[error("empty family")]
    EmptyFamily,
    #[error("grid must have at least {min} samples, got {got}")]
    GridTooSmall { min: usize, got: usize },
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
