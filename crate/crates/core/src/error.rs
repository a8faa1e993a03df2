use thiserror::Error;

/// Failures while reading the textual forms of rationals and root vectors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational {0:?}; expected \"p\" or \"p/q\"")]
    Rational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed integer vector {0:?}; expected comma-separated integers")]
    IntVector(String),
    #[error("malformed grid axis {0:?}; expected start:step:count")]
    GridAxis(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("ell must be at least {min}, got {ell}")]
    EllTooSmall { ell: usize, min: usize },
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error("not a real root: {0}")]
    NotRealRoot(String),
    #[error("parameter has non-rational coordinates in the requested system")]
    NonRational,
    #[error("grid has {size} points, above the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("integer overflow in lattice computation")]
    Overflow,
    /// An invariant guaranteed by the underlying theorem failed; this is a bug.
    #[error("existence guarantee violated: {0}")]
    GuaranteeViolated(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::OrderMismatch { .. } => "order_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::EllTooSmall { .. } => "ell_too_small",
            Error::NTooSmall { .. } => "n_too_small",
            Error::NotRealRoot(_) => "not_real_root",
            Error::NonRational => "non_rational",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Overflow => "overflow",
            Error::GuaranteeViolated(_) => "guarantee_violated",
        }
    }

    /// True for internal invariant failures, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::GuaranteeViolated(_) | Error::Overflow)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
