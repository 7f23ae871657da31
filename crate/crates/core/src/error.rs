use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason} (got {value})")]
    InvalidArgument {
        name: &'static str,
        reason: &'static str,
        value: f64,
    },

    #[error("argument {arg} is below the branch point -1/e of the principal Lambert W branch")]
    Domain { arg: f64 },

    #[error("no convergence after {iterations} iterations (last iterate {last})")]
    Convergence { last: f64, iterations: usize },

    /// The efficiency has no finite maximizer; `supremum` is approached as P/B -> 0.
    #[error("degenerate optimum: no finite maximizer, supremum {supremum} bit/J reached only as P/B -> 0")]
    DegenerateOptimum { supremum: f64 },

    #[error("evaluation at lattice point P = {power} W, B = {bandwidth} Hz is not finite")]
    NonFiniteEvaluation { power: f64, bandwidth: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: &'static str, value: f64) -> Self {
        Error::InvalidArgument {
            name,
            reason,
            value,
        }
    }
}
