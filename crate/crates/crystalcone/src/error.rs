//! Crate-wide error type.
//!
//! Domain errors are values, not panics: callers such as the CLI map them to
//! exit code 2, while parse problems map to exit code 3 before any of these
//! are produced.

use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    /// Family/rank outside the supported finite types, or a carrier was
    /// requested for a type that has none bundled.
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    /// An index (simple-reflection letter, coordinate, seed index) is out of
    /// range for the object it was used with.
    #[error("index out of range: {0}")]
    BadIndex(String),
    /// A word that must be reduced is not.
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    /// Gaussian decomposition does not exist (an identically vanishing
    /// leading principal minor).
    #[error("matrix is not Gaussian decomposable: {0}")]
    NotDecomposable(String),
    /// A subtraction-free expression came out with a non-positive
    /// coefficient; this always signals an implementation bug upstream.
    #[error("positivity violation: {0}")]
    PositivityViolation(String),
    /// Mutation was requested at a frozen index.
    #[error("index not mutable: {0}")]
    NotMutable(String),
    /// The requested chart does not support the operation (e.g. a minor is
    /// not a Laurent monomial in the chart's coordinates).
    #[error("chart unsupported: {0}")]
    ChartUnsupported(String),
    /// A dominant weight was required.
    #[error("weight not dominant: {0}")]
    NotDominant(String),
    /// A polytope or linear program is unbounded where boundedness was
    /// promised.
    #[error("unbounded: {0}")]
    Unbounded(String),
    /// Numeric over/underflow at extreme scaling parameters.
    #[error("scale error: {0}")]
    ScaleError(String),
    /// A numeric check had no samples above the noise floor.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// A search finished without finding the requested object (the search is
    /// sound but incomplete, so this is never a refutation).
    #[error("not found: {0}")]
    NotFound(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, CrystalError>;
