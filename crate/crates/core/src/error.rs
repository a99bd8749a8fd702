use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by data preparation, estimation, control and simulation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate year {0}")]
    DuplicateYear(i32),
    #[error("years are not contiguous: {prev} is followed by {next}")]
    NonContiguousYears { prev: i32, next: i32 },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("column `{0}` has missing values at the start or end of the sample")]
    EdgeMissing(String),
    #[error("column `{0}` needs at least two observed anchor points")]
    TooFewAnchors(String),
    #[error("reference column `{column}` is missing in {year}")]
    MissingReference { column: String, year: i32 },
    #[error("target column `{column}` is missing in {year}")]
    MissingTarget { column: String, year: i32 },
    #[error("column `{0}` still has missing values")]
    MissingValues(String),
    #[error("insufficient overlap: {found} observations, {needed} needed")]
    InsufficientOverlap { needed: usize, found: usize },
    #[error("regressor cross-product matrix is singular")]
    SingularRegressors,
    #[error("year {0} lies outside the sample")]
    YearOutOfRange(i32),
    #[error("insufficient observations: {available} available, more than {required} required")]
    InsufficientObservations { available: usize, required: usize },
    #[error("moment matrix {0} is not positive definite")]
    NotPositiveDefinite(&'static str),
    #[error("canonical correlation equal to one: the regressors reproduce the dependent variables")]
    DegenerateCorrelation,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("no asymptotic table for these deterministic terms; use the bootstrap")]
    UseBootstrap,
    #[error("normalization block of beta is singular")]
    NormalizationSingular,
    #[error("invalid restrictions: {0}")]
    InvalidRestrictions(String),
    #[error("switching algorithm did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize, loglik_path: Vec<f64> },
    #[error("alpha_perp' Gamma beta_perp is singular: the I(1) condition fails")]
    I1ConditionFails,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not controllable: det(b'Ca)={det}")]
    NotControllable { det: f64 },
    #[error("not controllable: C entries linking targets and controls are insignificant ({0})")]
    InsignificantControl(String),
    #[error("policy does not stabilize: {unit_roots} unit roots, expected {expected}")]
    PolicyDoesNotStabilize { unit_roots: usize, expected: usize },
    #[error("bootstrap failed: {0}")]
    BootstrapFailure(String),
    #[error("residual window has {len} observations, at least 10 required")]
    WindowTooShort { len: usize },
    #[error("residuals have no variation")]
    DegenerateResiduals,
    #[error("max lag {max_lag} must be below the effective sample size {t_eff}")]
    MaxLagTooLarge { max_lag: usize, t_eff: usize },
    #[error("variable map incomplete: {0}")]
    NameMapIncomplete(String),
    #[error("matrix {0} is singular")]
    SingularMatrix(&'static str),
    #[error("eigenvalue computation did not converge")]
    EigenFailure,
}

pub type Result<T> = core::result::Result<T, Error>;
