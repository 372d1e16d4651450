use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by page/word validation, the homology engine and the
/// file format.
///
/// Two classes matter to callers: `UnsupportedPage` (the operation is only
/// defined for genus-0 pages) and everything else (invalid input). The CLI
/// maps the former to exit code 2 and the latter to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("page must have at least one boundary component")]
    NoBoundary,

    #[error("curve must enclose at least one hole")]
    EmptyCurve,

    #[error("hole {hole} out of range: page with {boundary_count} boundary components has holes {}", hole_range(*boundary_count))]
    HoleOutOfRange { hole: u32, boundary_count: u32 },

    #[error("twist exponent must be non-zero")]
    ZeroExponent,

    #[error("curves are only supported on genus-0 pages (page has genus {genus})")]
    CurveOnPositiveGenus { genus: u32 },

    #[error("unsupported page: operation requires a planar page, got genus {genus}")]
    UnsupportedPage { genus: u32 },

    #[error("linking matrix must be symmetric")]
    AsymmetricMatrix,

    #[error("d3 connected-sum formula requires c1 torsion")]
    D3NotLicensed,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid {what}: {value:?}")]
    InvalidArgument { what: &'static str, value: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

fn hole_range(boundary_count: u32) -> String {
    if boundary_count <= 1 {
        "none".to_owned()
    } else {
        format!("1..={}", boundary_count - 1)
    }
}

impl Error {
    /// Exit code used by the CLI: 2 for unsupported pages, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedPage { .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { .. } => self,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        }
    }
}
