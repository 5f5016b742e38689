//! CLI error categories, each with its own exit code (documented in
//! `--help`).

use std::fmt;

use crate::format::FormatError;

/// Exit codes: 0 success, 2 usage (clap also uses 2), 3 I/O, 4 file parse,
/// 5 input validation, 6 numerical failure, 7 domain/precondition error,
/// 8 verification failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Validation(String),
    Numeric(String),
    Domain(String),
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
            Self::Parse(_) => 4,
            Self::Validation(_) => 5,
            Self::Numeric(_) => 6,
            Self::Domain(_) => 7,
            Self::VerificationFailed => 8,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage: {m}"),
            Self::Io(m) => write!(f, "io: {m}"),
            Self::Parse(m) => write!(f, "parse: {m}"),
            Self::Validation(m) => write!(f, "validation: {m}"),
            Self::Numeric(m) => write!(f, "numeric: {m}"),
            Self::Domain(m) => write!(f, "domain: {m}"),
            Self::VerificationFailed => write!(f, "verification failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tracecut::Error> for CliError {
    fn from(e: tracecut::Error) -> Self {
        use tracecut::Error as E;
        let message = e.to_string();
        match e {
            E::NoConvergence { .. } | E::DegenerateEmbedding { .. } => Self::Numeric(message),
            E::BadShape { .. }
            | E::NonFiniteEntry { .. }
            | E::NotSquare { .. }
            | E::NotSymmetric { .. }
            | E::NegativeEntry { .. }
            | E::NegativeAffinity { .. } => Self::Validation(message),
            E::KOutOfRange { .. }
            | E::NonPositiveWeight { .. }
            | E::WrongGraphKind { .. }
            | E::ZeroDegreeVertex { .. }
            | E::EmptyCluster { .. }
            | E::ZeroClusterWeight { .. }
            | E::DimensionMismatch { .. }
            | E::InvalidKernel(_)
            | E::TooFewItems { .. }
            | E::CustomPhiMisuse(..)
            | E::ClusterIdOutOfRange { .. }
            | E::AssignmentLength { .. }
            | E::TooLarge { .. } => Self::Domain(message),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let message = e.to_string();
        match e {
            FormatError::Io(_) => Self::Io(message),
            FormatError::Parse { .. } => Self::Parse(message),
            FormatError::SymmetryViolation { .. }
            | FormatError::NegativeEntry { .. }
            | FormatError::DuplicateCoordinate { .. } => Self::Validation(message),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}
