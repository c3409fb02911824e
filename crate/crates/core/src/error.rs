use thiserror::Error;

/// Failures reported by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spectral parameters: {0}")]
    InvalidSpectrum(String),

    #[error("invalid nonlocal condition: {0}")]
    InvalidCondition(String),

    #[error("no sign change of the circumcircle equation within {steps} growth steps")]
    NoBracket { steps: usize },

    #[error("sector with zero half-angle has no circumscribing circle")]
    DegenerateSector,

    #[error("nonlocal coefficient is zero, B(z) has no zeros")]
    ZeroCoefficient,

    #[error("operation applies only to single-point conditions, got {terms} terms")]
    NotApplicable { terms: usize },

    #[error("Newton iteration did not converge after {iterations} steps (|B| = {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("reduced polynomial degree {degree} exceeds cap {cap}")]
    DegreeOverflow { degree: u128, cap: usize },

    #[error("polynomial root solve did not converge (degree {degree})")]
    RootSolveFailure { degree: usize },

    #[error("polynomial is constant")]
    DegreeZero,

    #[error("polynomial degree {degree} is below the required {required}")]
    DegreeTooSmall { degree: usize, required: usize },

    #[error("constant coefficient is zero")]
    ZeroLeadingData,

    #[error("Hölder exponent must exceed 1, got {0}")]
    BadExponent(f64),

    #[error("coefficient {index} has nonzero imaginary part")]
    ComplexCoefficient { index: usize },

    #[error("reduction operator is singular at eigenvalue {index} ({re:e}{im:+e}i), |B| = {modulus:e}")]
    SingularReduction {
        index: usize,
        re: f64,
        im: f64,
        modulus: f64,
    },

    #[error("invalid operator data: {0}")]
    InvalidOperator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
