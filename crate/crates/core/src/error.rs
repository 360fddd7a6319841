use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid {field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("dimension {0} unsupported (1 <= n <= 64)")]
    Dimension(usize),

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    Convergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e} < -{tol:e}")]
    NotPositiveSemidefinite { eigenvalue: f64, tol: f64 },

    #[error("matrix is numerically singular: eigenvalue {eigenvalue:e} below floor {floor:e}")]
    Singular { eigenvalue: f64, floor: f64 },

    #[error("spectral bounds [{m}, {big_m}] do not contain the spectrum [{lo}, {hi}]")]
    Bounds {
        m: f64,
        big_m: f64,
        lo: f64,
        hi: f64,
    },

    #[error("instance {instance}: {source}")]
    Instance {
        instance: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }

    pub(crate) fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Config {
            field,
            reason: reason.into(),
        }
    }

    /// True for errors caused by invalid input rather than numerical failure.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Domain { .. }
            | Error::Config { .. }
            | Error::Shape(_)
            | Error::NotSymmetric { .. }
            | Error::Dimension(_)
            | Error::Bounds { .. } => true,
            Error::Instance { source, .. } => source.is_usage(),
            _ => false,
        }
    }
}
