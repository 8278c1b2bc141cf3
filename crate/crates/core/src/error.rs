use thiserror::Error;

/// Errors raised by constructions and verifiers.
///
/// Variants that signal degenerate input parameters (`SeparationFailure`,
/// `BadParams`, `Parse`, ...) are distinguished from those that signal a
/// failed identity; see [`Error::is_degenerate_input`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("enumeration of {requested} elements exceeds cap {cap}")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("separation failure: {0}")]
    SeparationFailure(String),
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("intertwiner failure on generator T_{generator}, basis vector {column}")]
    IntertwinerFailure { generator: usize, column: usize },
    #[error("element is not invertible: {0}")]
    NonInvertible(String),
    #[error("commutant dimension {found} differs from expected {expected}")]
    CommutantMismatch { expected: usize, found: usize },
    #[error("census mismatch: {0}")]
    CensusMismatch(String),
    #[error("rank deficient: rank {rank} of {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("span mismatch: {0}")]
    SpanMismatch(String),
    #[error("diagram failure on word {0}")]
    DiagramFailure(String),
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("divisibility failure: {0}")]
    DivisibilityFailure(String),
    #[error("character mismatch in degree {degree}: {detail}")]
    CharacterMismatch { degree: usize, detail: String },
    #[error("fake degrees are not related by a monomial shift: {0}")]
    NotAMonomialShift(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NoSolution => "NoSolution",
            Error::BadParams(_) => "BadParams",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::SeparationFailure(_) => "SeparationFailure",
            Error::RelationFailure(_) => "RelationFailure",
            Error::IntertwinerFailure { .. } => "IntertwinerFailure",
            Error::NonInvertible(_) => "NonInvertible",
            Error::CommutantMismatch { .. } => "CommutantMismatch",
            Error::CensusMismatch(_) => "CensusMismatch",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::SpanMismatch(_) => "SpanMismatch",
            Error::DiagramFailure(_) => "DiagramFailure",
            Error::InconsistentData(_) => "InconsistentData",
            Error::DivisibilityFailure(_) => "DivisibilityFailure",
            Error::CharacterMismatch { .. } => "CharacterMismatch",
            Error::NotAMonomialShift(_) => "NotAMonomialShift",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for errors caused by invalid or non-generic input rather than a
    /// violated identity.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            Error::BadParams(_)
                | Error::SeparationFailure(_)
                | Error::CapExceeded { .. }
                | Error::Parse(_)
                | Error::NonInvertible(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
