use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Argument outside the domain of a special function (zero, non-finite, too large).
    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    /// Invalid argument to a constructor or operation.
    #[error("invalid argument `{name}`: {reason}")]
    Argument { name: &'static str, reason: String },

    /// Two distinct boundaries touch or overlap.
    #[error("boundaries overlap: minimum node distance {min_distance:e}")]
    Overlap { min_distance: f64 },

    /// Field evaluation point too close to the boundary for plain quadrature.
    #[error("evaluation point {point:?} is {distance:e} from the boundary (minimum {required:e})")]
    Proximity { point: [f64; 2], distance: f64, required: f64 },

    /// The discrete null space has the wrong dimension.
    #[error("numerical rank error: expected a one-dimensional kernel, singular values {smallest:e}, {second:e}")]
    NumericalRank { smallest: f64, second: f64 },

    /// Pivot below threshold in a dense solve.
    #[error("singular matrix: pivot {pivot:e} below threshold {threshold:e}")]
    Singular { pivot: f64, threshold: f64 },

    /// A dense eigen/singular value iteration failed.
    #[error("{routine} did not converge")]
    Convergence { routine: &'static str },

    /// An iterative root search ran out of iterations.
    #[error("no convergence after {iterations} iterations (last iterate {last}, |f| = {residual:e})")]
    NoConvergence { iterations: usize, last: C64, residual: f64 },

    /// Muller's parabola collapsed (coincident iterates or vanishing denominator).
    #[error("degenerate parabola at iterate {at}")]
    DegenerateParabola { at: C64 },

    /// A root was found on the wrong branch (outside quadrant IV).
    #[error("root {root} lies outside quadrant IV")]
    Branch { root: C64 },

    /// An initial guess outside quadrant IV without the override.
    #[error("initial guess {guess} lies outside quadrant IV")]
    GuessDomain { guess: C64 },

    /// Two mode searches converged to the same characteristic value.
    #[error("mode collapse: both searches converged to {omega}")]
    ModeCollapse { omega: C64 },

    /// Scattering solve requested too close to a characteristic value.
    #[error("frequency {omega} is within {distance:e} of a characteristic value")]
    NearResonance { omega: C64, distance: f64 },
}

impl Error {
    pub(crate) fn argument(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Argument { name, reason: reason.into() }
    }

    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { function, reason: reason.into() }
    }
}
