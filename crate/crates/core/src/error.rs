use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Requested size exceeds the configured dense-matrix or grid budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Malformed or physically invalid input.
    #[error("invalid input: {0}")]
    Validation(String),

    /// An argument outside the domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to meet its accuracy target.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// The reduced (ℝ³ / sphere) functions only exist for operators that
    /// commute with S².
    #[error(
        "operator does not commute with S^2 (max |[rho, S^2]| = {residual:.3e}); \
         only the 4D function is defined, use plane4d slices instead"
    )]
    NotS2Commuting { residual: f64 },

    /// The closed-form spherical function covers single-shell terms only.
    #[error("closed form does not cover {count} cross-shell coherence term(s), largest {largest:.3e}")]
    CrossShell { count: usize, largest: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Validation(_)
            | Error::Domain(_)
            | Error::NotS2Commuting { .. }
            | Error::CrossShell { .. }
            | Error::Io(_) => 1,
            Error::Numeric(_) => 2,
            Error::Capacity(_) => 3,
        }
    }
}
