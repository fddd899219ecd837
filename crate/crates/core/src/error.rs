use thiserror::Error;

/// Errors raised across the transform toolkit.
///
/// The variants line up with the CLI exit-code table: region errors exit 2,
/// convergence failures exit 3, everything else is a usage/input problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GftError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("outside the region of convergence: {0}")]
    Region(String),
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    #[error("quadrature did not converge (estimate {estimate_re}{estimate_im:+}j, error {error:e})")]
    Convergence {
        estimate_re: f64,
        estimate_im: f64,
        error: f64,
    },
    #[error("integral diverges: {0}")]
    Divergent(String),
    #[error("limit is distributional: {0}")]
    Distributional(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate equation: {0}")]
    Degenerate(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("wavelet is not admissible: {0}")]
    Admissibility(String),
    #[error("missing argument: {0}")]
    Argument(String),
}

impl GftError {
    pub(crate) fn convergence(estimate: num_complex::Complex64, error: f64) -> Self {
        GftError::Convergence {
            estimate_re: estimate.re,
            estimate_im: estimate.im,
            error,
        }
    }
}

pub type Result<T> = std::result::Result<T, GftError>;
