use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample sequence")]
    EmptySamples,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("phi coefficients must be nonempty with c_1 != 0")]
    DegenerateMap,

    #[error("phi' vanishes at z = {:.6}{:+.6}i (|z| = {:.6}), inside the closed unit disc", z.re, z.im + 0.0, z.norm())]
    DerivativeVanishes { z: Complex64 },

    #[error("boundary self-intersection between check nodes {i} and {j}")]
    SelfIntersection { i: usize, j: usize },

    #[error("non-finite value at theta = {theta}: evaluation hit a pole")]
    NonFinite { theta: f64 },

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("point {point} is not strictly inside the boundary curve")]
    NotInterior { point: Complex64 },

    #[error("test-function pole {pole} is not inside the level curve r = {r}")]
    PoleOutsideLevelCurve { pole: Complex64, r: f64 },

    #[error("density flavor {0} is not supported by this operation")]
    UnsupportedFlavor(&'static str),

    #[error("measure has zero total variation")]
    ZeroVariation,

    #[error("K-norm bracket violated: lower {lower} > upper {upper} + {tol}")]
    BracketViolation { lower: f64, upper: f64, tol: f64 },

    #[error("multiplier inequality violated: lower {lower} > upper {upper} + {tol}")]
    TheoremViolation { lower: f64, upper: f64, tol: f64 },

    #[error("exponent p = {0} is outside the admissible range")]
    InvalidExponent(f64),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
