use std::fmt;

/// Errors produced by the solver pipeline.
#[derive(Debug, Clone)]
pub enum Error {
    /// Invalid argument or configuration value.
    InvalidInput(String),
    /// Argument outside the mathematical domain of a function.
    Domain(String),
    /// A requested point lies outside the grid extent.
    OutOfExtent { point: f64, lo: f64, hi: f64 },
    /// Requested scattering channel is closed at this energy.
    ClosedChannel(String),
    /// Channel labels outside the validated partial-wave set.
    UnsupportedChannel(String),
    /// Dense linear algebra failure (factorization, eigensolve).
    Linalg(String),
    /// The Kronecker pencil of the preconditioner is singular: the shift
    /// energy coincides with a free eigenvalue.
    SingularPencil { min_abs: f64 },
    /// Iterative solve exceeded its iteration cap.
    NonConvergence {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },
    /// Least-squares design matrix is numerically collinear.
    IllConditionedFit { condition: f64 },
    /// Angular quadrature failed to produce a finite kernel value.
    QuadratureFailure { alpha: f64, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::OutOfExtent { point, lo, hi } => {
                write!(f, "point {point} outside grid extent [{lo}, {hi}]")
            }
            Error::ClosedChannel(m) => write!(f, "closed channel: {m}"),
            Error::UnsupportedChannel(m) => write!(f, "unsupported channel: {m}"),
            Error::Linalg(m) => write!(f, "linear algebra failure: {m}"),
            Error::SingularPencil { min_abs } => write!(
                f,
                "singular preconditioner pencil: smallest eigenvalue sum magnitude {min_abs:.3e}"
            ),
            Error::NonConvergence {
                iterations,
                residual,
                ..
            } => write!(
                f,
                "iteration cap reached after {iterations} iterations, residual {residual:.3e}"
            ),
            Error::IllConditionedFit { condition } => {
                write!(f, "ill-conditioned fit design matrix, condition {condition:.3e}")
            }
            Error::QuadratureFailure { alpha, detail } => {
                write!(f, "kernel quadrature failure at alpha = {alpha}: {detail}")
            }
        }
    }
}

impl std::error::Error for Error {}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
