use thiserror::Error;

/// Errors raised by the coherent-state engines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude |alpha| = {modulus} lies outside the domain radius R = {radius}")]
    Domain { modulus: f64, radius: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("truncation failure: tail mass bound {tail:e} at n_max = {n_max} exceeds tail_tol = {tol:e}")]
    Truncation { n_max: usize, tail: f64, tol: f64 },

    #[error("{0} is not an AN-class family")]
    NotAnClass(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(
        "quadrature did not converge within {subdivisions} subdivisions (error estimate {error:e})"
    )]
    NonConvergence { subdivisions: usize, error: f64 },

    #[error("integral diverges: {0}")]
    Divergence(String),

    #[error("matrix exponential: 1-norm {norm} exceeds the certified range {limit}")]
    ExponentialRange { norm: f64, limit: f64 },

    #[error("series argument u = {u} lies outside the convergence radius {radius}")]
    ConvergenceRadius { u: f64, radius: f64 },

    #[error("polynomial q_{n} takes the negative value {value:e} at xi = {xi}")]
    Negativity { n: usize, xi: f64, value: f64 },

    #[error("Mandel Q is undefined for the vacuum (mean photon number is zero)")]
    Vacuum,

    #[error("special-function domain error: {0}")]
    SpecialDomain(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
