use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("oscillator is not underdamped: Omega = {omega:e} rad/s but rho/2 = {half_rho:e} rad/s")]
    Overdamped { omega: f64, half_rho: f64 },

    #[error("invalid {field}: {reason}")]
    Domain { field: &'static str, reason: String },

    #[error("eigenvalues nearly degenerate: |lambda+ - lambda-| = {gap:e} below guard {guard:e}")]
    DegenerateEigenvalue { gap: f64, guard: f64 },

    #[error("free-mass form needs omega >= 10 Omega, got omega/Omega = {ratio}")]
    FreeMassDomain { ratio: f64 },

    #[error("no bound at omega = {omega:e} rad/s: combined coefficient {coefficient:e} is not positive")]
    Unbounded { omega: f64, coefficient: f64 },

    #[error("every grid point was unbounded")]
    EmptyResult,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("state became non-finite at step {step}")]
    NonFinite { step: u64 },

    #[error("quadrature did not converge at omega = {omega:e}: error estimate {estimate:e} vs value {value:e}")]
    Convergence { omega: f64, estimate: f64, value: f64 },

    #[error("truncation too small: tail weight {tail:e} exceeds {limit:e} at N = {levels}")]
    Truncation { levels: usize, tail: f64, limit: f64 },

    #[error("perturbation check failed: {0}")]
    Perturbation(String),

    #[error("{quantity} should be real but has imaginary part {imag:e} (real part {real:e})")]
    ImaginaryResidue { quantity: &'static str, real: f64, imag: f64 },

    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { field, reason: reason.into() }
    }
}
