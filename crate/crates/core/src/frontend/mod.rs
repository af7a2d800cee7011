//! Expression parser, text formats, result documents and the command layer
//! behind the `poincare` binary.

mod commands;
mod document;
mod files;
mod parse;

pub use commands::{cmd_classify, cmd_cohomology, cmd_gen, cmd_split, cmd_verify, SplitOptions, VerifyOptions};
pub use document::ResultDocument;
pub use files::{CochainFile, FileKind, ProblemFile, QuadraticsFile};
pub use parse::{parse_poly, ParseError, MAX_EXPONENT};

pub const FORMAT_VERSION: &str = "poincare/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_COCYCLE: i32 = 4;
pub const EXIT_TOLERANCE: i32 = 5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrontendError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("{failing} cocycle condition(s) violated")]
    Cocycle { failing: usize },
    #[error("{label}: max residual {max:e} exceeds tolerance {tolerance:e}")]
    Tolerance { label: String, max: f64, tolerance: f64 },
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Classify(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

impl FrontendError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            FrontendError::Parse { .. } => "E_PARSE",
            FrontendError::Validation(_) => "E_VALIDATION",
            FrontendError::Io(_) => "E_IO",
            FrontendError::Cocycle { .. } => "E_COCYCLE",
            FrontendError::Tolerance { .. } => "E_TOLERANCE",
            FrontendError::Mismatch(_) => "E_MISMATCH",
            FrontendError::Classify(_) => "E_CLASSIFY",
            FrontendError::Solver(_) => "E_SOLVER",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            FrontendError::Parse { .. } => EXIT_PARSE,
            FrontendError::Cocycle { .. } => EXIT_COCYCLE,
            FrontendError::Tolerance { .. } => EXIT_TOLERANCE,
            _ => EXIT_VALIDATION,
        }
    }
}
