use thiserror::Error;

/// Errors raised by the numeric routines.
///
/// Absence of a relation or of a modulus candidate is not always an error;
/// see [`crate::quintic::Candidates`] for the underdetermined sentinel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain { name: &'static str, value: f64, domain: &'static str },
    #[error("{what} did not converge within {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },
    #[error("singular denominator in {what} (|denominator| = {magnitude:e})")]
    SingularDenominator { what: &'static str, magnitude: f64 },
    #[error("no admissible root for {what}")]
    NoAdmissibleRoot { what: &'static str },
    #[error("{value:e} is not a root of the polynomial (normalized residual {residual:e})")]
    NotARoot { value: f64, residual: f64 },
    #[error("branch failure in {what}: {detail}")]
    BranchFailure { what: &'static str, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Error {
    Error::Domain { name, value, domain }
}
