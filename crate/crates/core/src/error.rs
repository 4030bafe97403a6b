use alloc::string::String;

/// Failures raised by the operator algebra and the stability analysis.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is numerically zero")]
    NumericallyZero,
    #[error("operator is not Hyers-Ulam stable (gamma = 0)")]
    NotStable,
    #[error("operator is not positive self-adjoint")]
    NotPositiveSelfAdjoint,
    #[error("no finite relative bound exists")]
    Incomparable,
    #[error("relative bound {0} is not less than one")]
    BoundNotLessThanOne(f64),
    #[error("supports overlap at index {0}")]
    SupportsOverlap(usize),
    #[error("coercivity fails: {0}")]
    CoercivityFails(String),
    #[error("operator t is unbounded")]
    Unbounded,
    #[error("{0} is not boundedly invertible")]
    NotInvertible(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("computation did not converge: {0}")]
    NonConvergent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
