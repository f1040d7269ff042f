use hyperflex_exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("f is not separable")]
    NotSeparable,
    #[error("point has no rational local coordinates: {0}")]
    NonRationalPoint(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("series truncated at order {0} is not enough")]
    TruncationInsufficient(i64),
    #[error("basis elements are linearly dependent")]
    LinearDependence,
    #[error("basis element exceeds the pole bound at infinity")]
    PoleBound,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("pieces {0} and {1} disagree on their shared coefficient")]
    GluingMismatch(usize, usize),
    #[error("piece {0} is not separable")]
    SeparabilityFailure(usize),
    #[error("subdivision mismatch: {0}")]
    SubdivisionMismatch(String),
    #[error("index {0} out of range")]
    OutOfRange(usize),
    #[error("valuation vector is not on the tropical curve")]
    ValuationOffCurve,
    #[error("point specializes to an edge of the skeleton")]
    ValuationOnEdge,
    #[error("the Wronskian vanishes identically")]
    DegenerateCurve,
    #[error("inconsistent results: {0}")]
    Inconsistency(String),
    #[error("unknown {kind} strategy {name:?}")]
    UnknownStrategy { kind: &'static str, name: String },
    #[error("no library piece realizes s_R = {0}")]
    NoPieceFound(i64),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Validation,
    Computation,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_)
            | Error::InvalidCurve(_)
            | Error::OutOfRange(_)
            | Error::UnknownStrategy { .. }
            | Error::NonRationalPoint(_)
            | Error::NotOnCurve
            | Error::Exact(ExactError::Parse(_)) => ErrorKind::Input,
            Error::NotSeparable
            | Error::GluingMismatch(..)
            | Error::SeparabilityFailure(_)
            | Error::SubdivisionMismatch(_)
            | Error::ValuationOffCurve
            | Error::ValuationOnEdge => ErrorKind::Validation,
            _ => ErrorKind::Computation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
