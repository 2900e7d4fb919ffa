use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Fock dimension {dim}: need at least 2 levels")]
    InvalidDimension { dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),

    #[error("truncation too small: top-level population {leakage:.3e} exceeds budget {budget:.1e} at dim {dim}; raise dim")]
    RaiseDim { dim: usize, leakage: f64, budget: f64 },

    #[error("birth-death evolution needs a number-diagonal state (off-diagonal norm {off_diagonal:.3e})")]
    MethodMismatch { off_diagonal: f64 },

    #[error("population {p:.3e} at level {level} has nonzero temperature derivative {dp:.3e}: Fisher information diverges")]
    SingularSupport { level: usize, p: f64, dp: f64 },

    #[error("negative population {p:.3e} at level {level}")]
    NegativePopulation { level: usize, p: f64 },

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("finite-difference step underflowed at T = {temperature:e}")]
    StepUnderflow { temperature: f64 },

    #[error("need at least 4 positive points for a scaling fit, got {points}")]
    InsufficientData { points: usize },

    #[error("sweep failed: {failed} of {total} points failed")]
    SweepFailed { failed: usize, total: usize },

    #[error("invalid probe '{0}': expected fock:<n>, coherent:<alpha>, squeezed:<r> or thermal:<nbar>")]
    InvalidProbe(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Numerical failures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RaiseDim { .. }
                | Error::SingularSupport { .. }
                | Error::NegativePopulation { .. }
                | Error::StepUnderflow { .. }
                | Error::SweepFailed { .. }
                | Error::MethodMismatch { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
