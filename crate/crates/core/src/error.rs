use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An L-series argument at or below the abscissa of absolute convergence.
    #[error("{what}: argument s = {s} must exceed the abscissa of absolute convergence {abscissa} (evaluation requires s > sigma_a; no analytic continuation)")]
    Domain { what: String, s: f64, abscissa: f64 },

    #[error("arithmetic functions are defined for n >= 1, got n = 0")]
    ZeroArgument,

    #[error("normalizer {name}({s}) vanishes")]
    ZeroNormalizer { name: String, s: f64 },

    #[error(
        "distribution '{0}' has negative weights; it is a formal object and cannot be sampled"
    )]
    SignedDistribution(String),

    #[error("no coefficient bound supplied for series '{0}'; cannot bound the truncation tail")]
    UnboundedCoefficients(String),

    #[error("requested range N = {requested} exceeds the available range {available}")]
    Range { requested: usize, available: usize },

    #[error("'{0}' is not completely multiplicative; the inverse n -> mu(n) f(n) does not apply")]
    NotCompletelyMultiplicative(String),

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(String),

    #[error(
        "could not balance stub totals after {attempts} redraws (remaining imbalance {imbalance})"
    )]
    Balance { attempts: usize, imbalance: i64 },

    #[error("scan window lies wholly outside the convergence region of {0}")]
    EmptyWindow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>, s: f64, abscissa: f64) -> Self {
        Error::Domain {
            what: what.into(),
            s,
            abscissa,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Balance { .. } | Error::SignedDistribution(_) => 3,
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => 1,
            _ => 2,
        }
    }
}
