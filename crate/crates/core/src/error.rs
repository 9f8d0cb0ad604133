use thiserror::Error;

/// Errors raised by the numerical constructions in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is numerically singular (|det| = {det:.3e}, threshold {threshold:.3e})")]
    SingularMatrix { det: f64, threshold: f64 },

    #[error("family parameter outside the invertible domain: {0}")]
    SingularParameter(String),

    #[error("leading matrices do not commute (|AB - BA| = {0:.3e})")]
    NonCommuting(f64),

    #[error("re-factorization matrix Pi^1 is degenerate (|det| = {0:.3e})")]
    DegeneratePi(f64),

    #[error("re-factorization denominator is degenerate (|det| = {0:.3e})")]
    DegenerateDenominator(f64),

    #[error("similarity test undefined: det(U K_b - Y K_a) = {0:.3e}")]
    DegenerateSimilarity(f64),

    #[error("point outside the domain of the leaf embedding: {0}")]
    DomainError(String),

    #[error("map evaluated at a pole: {0}")]
    PoleError(String),

    #[error("pole encountered at transfer step {step}: {reason}")]
    PoleEncountered { step: usize, reason: String },

    #[error("square-root radicand {re:.3e}{im:+.3e}i lies on the branch cut")]
    BranchCut { re: f64, im: f64 },

    #[error("finite-difference residual unstable under step halving ({coarse:.3e} vs {fine:.3e})")]
    StepTooLarge { coarse: f64, fine: f64 },

    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.3e} ({what})")]
    ResidualTooLarge {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("unknown map id '{0}'")]
    UnknownMap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by hitting a degenerate or singular configuration,
    /// as opposed to malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix { .. }
                | Error::SingularParameter(_)
                | Error::DegeneratePi(_)
                | Error::DegenerateDenominator(_)
                | Error::DegenerateSimilarity(_)
                | Error::DomainError(_)
                | Error::PoleError(_)
                | Error::PoleEncountered { .. }
                | Error::BranchCut { .. }
        )
    }

    /// Short machine-readable name, used in JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::SingularParameter(_) => "SingularParameter",
            Error::NonCommuting(_) => "NonCommuting",
            Error::DegeneratePi(_) => "DegeneratePi",
            Error::DegenerateDenominator(_) => "DegenerateDenominator",
            Error::DegenerateSimilarity(_) => "DegenerateSimilarity",
            Error::DomainError(_) => "DomainError",
            Error::PoleError(_) => "PoleError",
            Error::PoleEncountered { .. } => "PoleEncountered",
            Error::BranchCut { .. } => "BranchCut",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::ResidualTooLarge { .. } => "ResidualTooLarge",
            Error::UnknownMap(_) => "UnknownMap",
        }
    }
}
