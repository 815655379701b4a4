use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument lies outside the domain of the operation.
    #[error("{name} = {value} is outside the domain: {constraint}")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// The integrand produced a NaN or infinity at a grid node. With a valid
    /// endpoint policy this should never happen for the shipped loss models.
    #[error("non-finite integrand at node {index} (p = {p}): {what} = {value}")]
    NonFinite {
        index: usize,
        p: f64,
        what: &'static str,
        value: f64,
    },

    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            constraint,
        }
    }
}
