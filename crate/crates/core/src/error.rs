use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),
    #[error("invalid POVM: {0}")]
    InvalidPovm(String),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("unitaries are not trace-orthogonal: {0}")]
    NonOrthogonalUnitaries(String),
    #[error("degenerate spectrum: eigenvalue gap {gap:.3e} below {threshold:.1e}")]
    DegenerateSpectrum { gap: f64, threshold: f64 },
    #[error("eigenvector tracking failed: overlap {0:.4} below 0.9")]
    EigenTracking(f64),
    #[error("state is rank deficient (min eigenvalue {0:.3e})")]
    RankDeficient(f64),
    #[error("parameter point {0:?} is outside the family domain")]
    DomainBoundary(Vec<f64>),
    #[error("family is not pure")]
    NotPure,
    #[error("Matsumoto condition fails (max |Im| = {0:.3e})")]
    MatsumotoViolated(f64),
    #[error("parallel gauge needs a one-parameter family, got {0} parameters")]
    GaugeUnsupported(usize),
    #[error("matrix is not orthogonal or has a zero in its last column")]
    InvalidOrthogonal,
    #[error("atan2 is undefined at the origin")]
    UndefinedAtan2,
    #[error("total measurement count {0} is odd")]
    OddMeasurementCount(u64),
    #[error("no estimates supplied")]
    EmptyInput,
    #[error("unknown {kind} '{name}', expected one of: {known}")]
    Unknown { kind: &'static str, name: String, known: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures that come from the numerics rather than from bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSpectrum { .. }
                | Error::EigenTracking(_)
                | Error::RankDeficient(_)
                | Error::NotPsd(_)
                | Error::MatsumotoViolated(_)
                | Error::UndefinedAtan2
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
