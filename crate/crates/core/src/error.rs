use thiserror::Error;

/// Errors raised by the algebra engines, the parsers and the CLI front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NonPrimeModulus(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands live in different rings: {0}")]
    ModulusMismatch(String),
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkewSymmetric,
    #[error("wrong arity: expected {expected} variables, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("derivation arity {got} does not match {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("bracket table violates the Jacobi identity on (x{0}, x{1}, x{2})")]
    JacobiViolation(usize, usize, usize),
    #[error("map is not a Poisson derivation")]
    NotPoissonDerivation,
    #[error("map is not a Poisson alpha-derivation")]
    NotAlphaDerivation,
    #[error("structure is not graded (brackets must be homogeneous quadratics)")]
    NotGraded,
    #[error("derivation is not graded of degree zero")]
    NotGradedDegreeZero,
    #[error("operation requires characteristic p > 3, got p = {0}")]
    SmallCharacteristic(u32),
    #[error("degree bound {bound} too large (cap {cap})")]
    DegreeBoundTooLarge { bound: u32, cap: u32 },
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("element is not Poisson normal")]
    NotNormal,
    #[error("search space of {size} candidates exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: String, cap: u64 },
    #[error("structure is already unimodular")]
    AlreadyUnimodular,
    #[error("structure does not carry a potential")]
    NotPotential,
    #[error("{what} exceeds the cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
