use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by what went wrong rather than by module, so that
/// the CLI can map them onto exit codes without knowing who raised them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A jet or series whose leading coefficient vanishes where it must not.
    #[error("singular value: {0}")]
    Singular(String),
    /// Parameters on one of the excluded loci c∞c₀(c∞²−c₀²)(c∞²+c₀²) = 0.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    /// Not enough jet order left to take the derivatives an η-order needs.
    #[error("derivative budget exhausted: {0}")]
    Order(String),
    /// Base point too close to a turning point for jets to be trustworthy.
    #[error("ill-conditioned base point: {0}")]
    Conditioning(String),
    /// Logarithm argument vanished or branch could not be continued.
    #[error("branch error: {0}")]
    Branch(String),
    /// Failure while tracing a Stokes curve or evaluating a contour.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// Quadrature or path continuation failed.
    #[error("integration error: {0}")]
    Integration(String),
    /// A case the underlying theory leaves unresolved.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// A self-check that must never fail did.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
