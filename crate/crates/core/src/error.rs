//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the geometry kernel. Input-validation failures
/// carry witnesses naming the offending points or subsets; internal
/// assertion failures indicate a bug or an input outside the supported
/// regime and are reported separately by the CLI.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("duplicate point label {label:?}")]
    DuplicateLabel { label: String },
    #[error("duplicate point {label:?} (same coordinates)")]
    DuplicatePoint { label: String },
    #[error("displacement classification needs distinct points")]
    IdenticalPoints,
    #[error("points {a:?} and {b:?} are not in spacelike position")]
    NotSpacelike { a: String, b: String },
    #[error("points {witness:?} violate generic position ({reason})")]
    NotGeneric { witness: Vec<String>, reason: String },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("simplex is affinely dependent")]
    AffinelyDependent,
    #[error("operation {op:?} requires a non-degenerate form")]
    DegenerateForm { op: &'static str },
    #[error("all points lie on the hyperplane {hyperplane}")]
    DegenerateHull { hyperplane: String },
    #[error("non-generic input: {0}")]
    NonGenericInput(String),
    #[error("size {got} exceeds cap {cap}")]
    CapExceeded { cap: usize, got: usize },
    #[error("singular linear system")]
    SingularSystem,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("Lipschitz bound violated by samples {a:?} and {b:?}")]
    LipschitzViolation { a: String, b: String },
    #[error("point {label:?} is sent to the light cone at infinity")]
    BoundaryEscape { label: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("tie below resolution while comparing sums of square roots")]
    UnresolvedTie,
}

impl Error {
    /// True for failures caused by the input rather than by the kernel.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Assertion(_) | Error::UnresolvedTie)
    }
}
