use core::fmt;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A word contained a letter outside `{1..5}`.
    InvalidLetter(u8),
    /// An address used a corner outside `{1..4}`.
    InvalidCorner(u8),
    /// A graph or extension level above the configured cap was requested.
    LevelCap { requested: u32, cap: u32 },
    /// A field was evaluated against a graph of a different level.
    LevelMismatch { field: u32, graph: u32 },
    /// The extension coefficients are singular at this eigenvalue.
    ForbiddenEigenvalue { lambda: f64, root: &'static str },
    /// The requested value lies outside the image of the branch.
    OutOfBranchRange { branch: u8, y: f64 },
    /// An iteration failed to converge within its budget.
    NoConvergence { context: &'static str },
    /// A dense matrix larger than the configured cap was requested.
    DimensionCap { dim: usize, cap: usize },
    /// Doubly computed vertex values disagreed during extension.
    ExtensionMismatch { max_abs: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLetter(l) => write!(f, "invalid word letter {l}, expected 1..=5"),
            Error::InvalidCorner(c) => write!(f, "invalid corner {c}, expected 1..=4"),
            Error::LevelCap { requested, cap } => {
                write!(f, "level {requested} exceeds configured cap {cap}")
            }
            Error::LevelMismatch { field, graph } => {
                write!(f, "field is at level {field} but graph is at level {graph}")
            }
            Error::ForbiddenEigenvalue { lambda, root } => {
                write!(
                    f,
                    "extension coefficients are singular at lambda={lambda} (root {root})"
                )
            }
            Error::OutOfBranchRange { branch, y } => {
                write!(f, "value {y} is outside the image of branch {branch}")
            }
            Error::NoConvergence { context } => write!(f, "no convergence: {context}"),
            Error::DimensionCap { dim, cap } => {
                write!(f, "matrix dimension {dim} exceeds cap {cap}")
            }
            Error::ExtensionMismatch { max_abs } => {
                write!(f, "doubly computed extension values disagree by {max_abs}")
            }
        }
    }
}
