//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; variants name the violated
//! precondition rather than the call site, so callers can match on the cause.

use thiserror::Error;

/// Errors raised by construction, assembly, solving, and experiment orchestration.
#[derive(Debug, Error)]
pub enum Error {
    /// Domain length or parameter outside its admissible range.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// A count (nodes, functions, coefficients) below its minimum.
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// Basis or unknown count below its minimum.
    #[error("invalid count: {0}")]
    InvalidCount(String),

    /// Grid has too few nodes for the requested operation.
    #[error("grid too small: {0}")]
    GridTooSmall(String),

    /// Two fields or a field and a family disagree on their grid.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A value that must be finite is NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// Relative noise is undefined for an identically zero field.
    #[error("zero field: {0}")]
    ZeroField(String),

    /// Relative error is undefined against a zero reference.
    #[error("zero reference: {0}")]
    ZeroReference(String),

    /// Spline construction needs more sample points.
    #[error("too few points: {0}")]
    TooFewPoints(String),

    /// Sample abscissae must be strictly increasing.
    #[error("unsorted points: {0}")]
    UnsortedPoints(String),

    /// Sample points do not span the target domain.
    #[error("domain not covered: {0}")]
    DomainNotCovered(String),

    /// Time interpolation needs at least two slices.
    #[error("too few slices: {0}")]
    TooFewSlices(String),

    /// Time interpolation abscissae must be distinct.
    #[error("duplicate times: {0}")]
    DuplicateTimes(String),

    /// Function index outside 1..=count.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Derivative order not supported by the analytic evaluator.
    #[error("order unsupported: {0}")]
    OrderUnsupported(String),

    /// Vanishing order of the family is below what the assembly needs.
    #[error("order too low: {0}")]
    OrderTooLow(String),

    /// Evaluation point outside [0, L].
    #[error("point outside domain: {0}")]
    PointOutsideDomain(String),

    /// Fewer equations than unknowns.
    #[error("underdetermined shape: {0}")]
    UnderdeterminedShape(String),

    /// Identically zero measurement; the weak-form system degenerates.
    #[error("zero measurement: {0}")]
    ZeroMeasurement(String),

    /// Closed-form ratio has a vanishing denominator.
    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    /// Explicit scheme stability bound violated.
    #[error("cfl violation: {0}")]
    CflViolation(String),

    /// Experiment configuration is inconsistent or unparseable.
    #[error("config invalid: {0}")]
    ConfigInvalid(String),

    /// Factorization backend failed (not expected for finite inputs).
    #[error("solve failure: {0}")]
    SolveFailure(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
