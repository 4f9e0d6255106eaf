use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("effort must be positive, got {0}")]
    NonPositiveEffort(f64),
    #[error("gross wage rate dw + w0 must be positive, got {0}")]
    NonPositiveWageRate(f64),
    #[error("equilibrium inconsistent with 0 < s1 < s0: denominator 2*w0 - s1 + dw = {0}")]
    InconsistentEquilibrium(f64),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("search interval [{lo}, {hi}] does not contain an interior maximum (found {at})")]
    BracketExcludesMaximum { lo: f64, hi: f64, at: f64 },
    #[error("search did not converge within {0} iterations")]
    IterationLimit(usize),
    #[error("finite-difference step {step} too large for the domain (limit {limit})")]
    StepTooLarge { step: f64, limit: f64 },
    #[error("near-singular instance: s0 - s1 = {gap} is below 10 * step = {limit}")]
    NearSingular { gap: f64, limit: f64 },
    #[error("invalid degrees of freedom {0}")]
    InvalidDegreesOfFreedom(f64),
    #[error("regression needs at least 3 observations, got {0}")]
    TooFewObservations(usize),
    #[error("regressor has zero variance")]
    DegenerateRegressor,
    #[error("length mismatch: {0} x values, {1} y values")]
    LengthMismatch(usize, usize),
    #[error("row {row}: {message}")]
    InvalidRecord { row: usize, message: String },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("unknown {kind} token {token:?}")]
    UnknownToken { kind: &'static str, token: String },
    #[error("{0}")]
    RoleMismatch(String),
    #[error("{transform} transform requires positive dv, got {value} for {host}-{sender}")]
    NonPositiveDv { transform: &'static str, value: f64, host: String, sender: String },
    #[error("incomplete result set: missing {0}")]
    IncompleteResults(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}
