use thiserror::Error;

/// Errors produced by the solver and post-processing pipeline.
#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid knot vector: {0}")]
    InvalidKnotVector(String),

    #[error("parameter {value} outside [0,1]")]
    ParameterOutOfRange { value: f64 },

    #[error("point ({0}, {1}) outside the plate domain [0,{2}]x[0,{3}]")]
    PointOutOfDomain(f64, f64, f64, f64),

    #[error("coefficient array is {got_rows}x{got_cols}, space expects {want_rows}x{want_cols}")]
    CoefficientShape {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("invalid lamina: {0}")]
    InvalidLamina(String),

    #[error("material matrix is not positive definite (offending eigenvalue {0:.6e})")]
    NotPositiveDefinite(f64),

    #[error("empty layup")]
    EmptyLayup,

    #[error("space continuity {got} is below the required {want}")]
    InsufficientContinuity { got: usize, want: usize },

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("matrix is rank deficient near column {0}")]
    RankDeficient(usize),

    #[error("collocation row requested at a {0} point where it is not defined")]
    BadRowLocation(&'static str),

    #[error("thickness grid does not match the layup ({0})")]
    GridMismatch(String),

    #[error("normalization requires S > 0, got {0}")]
    BadNormalization(f64),

    #[error("configuration invalid:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
