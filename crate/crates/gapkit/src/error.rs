use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("temperature must be positive and finite, got {0} K")]
    InvalidTemperature(f64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    CsvFormat { line: usize, message: String },

    #[error("fewer than 2 rows in input")]
    TooFewRows,

    #[error("non-uniform time grid: step {found} fs at line {line}, expected {expected} fs")]
    NonUniformTimeGrid {
        line: usize,
        found: f64,
        expected: f64,
    },

    #[error("missing temperature: no temperature_K metadata and no override given")]
    MissingTemperature,

    #[error("sample at index {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error("invalid sampling step dt = {0} fs (must be positive and finite)")]
    InvalidDt(f64),

    #[error("max lag {max_lag} out of range for series of length {len} (must be <= len - 2)")]
    LagOutOfRange { max_lag: usize, len: usize },

    #[error("lag budget max_k + max_j = {budget} exceeds series length bound {bound}")]
    LagBudgetExceeded { budget: usize, bound: usize },

    #[error("zero standard deviation: cannot normalize a constant series")]
    ZeroStdDev,

    #[error("empty frequency grid")]
    EmptyFrequencyGrid,

    #[error("frequency grid is not symmetric about zero")]
    AsymmetricGrid,

    #[error("expected spectrum of kind {expected}, got {found}")]
    WrongSpectrumKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("the egelstaff correction is not a pointwise prefactor; use egelstaff_correct")]
    EgelstaffNotPointwise,

    #[error(
        "correlation series extends to {t_max} fs, shorter than the egelstaff shift {shift} fs"
    )]
    SeriesShorterThanShift { t_max: f64, shift: f64 },

    #[error("spectrum is not odd within tolerance (max |J(v) + J(-v)| = {deviation:e})")]
    NonOddSpectrum { deviation: f64 },

    #[error("invalid window parameters: variance_fraction {fraction}, t_max {t_max} fs")]
    InvalidWindow { fraction: f64, t_max: f64 },

    #[error("invalid bath mode {index}: omega {omega} cm^-1, huang_rhys {huang_rhys}")]
    InvalidBathMode {
        index: usize,
        omega: f64,
        huang_rhys: f64,
    },

    #[error("quadratic coupling matrix must be symmetric ({n}x{n}); entry ({i},{j}) differs")]
    AsymmetricCoupling { n: usize, i: usize, j: usize },

    #[error("need at least 2 Monte Carlo samples, got {0}")]
    TooFewSamples(usize),

    #[error("frequency grids of the two spectra do not match")]
    GridMismatch,

    #[error("correction tags do not match or are missing: {a:?} vs {b:?}")]
    MethodMismatch {
        a: Option<String>,
        b: Option<String>,
    },

    #[error("spectra must carry two different temperatures, got {a:?} and {b:?}")]
    TemperatureMismatch { a: Option<f64>, b: Option<f64> },

    #[error("negative frequency {0} cm^-1 in experimental profile")]
    NegativeFrequency(f64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
