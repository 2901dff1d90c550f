use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs failed (bad degree, repeated roots, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A truncated series could not reach the requested tolerance within the
    /// available coefficient depth.
    #[error("truncation error {bound:.3e} above tolerance {tolerance:.3e}")]
    Truncation { bound: f64, tolerance: f64 },

    /// An iterative scheme ran out of iterations.
    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    /// Quadrature did not stabilize under node doubling.
    #[error("quadrature non-convergence: doubling nodes changed the result by {delta:.3e}")]
    QuadratureNonConvergence { delta: f64 },

    /// Evaluation at (or too close to) a singular time of a closed-form solution.
    #[error("singular time: t = {t} is within {dist:.3e} of the singularity at {singularity}")]
    SingularTime { t: crate::C64, singularity: crate::C64, dist: f64 },

    /// A zero-locus branch produced a point that does not lie on the zero set.
    #[error("branch {branch} gives |F| = {residual:.3e} at the candidate zero; wrong sheet")]
    BranchSheet { branch: i64, residual: f64 },

    /// The z-derivative vanishes: the trajectory is at (or near) a ramification point.
    #[error("|∂_z F| = {magnitude:.3e} below threshold; near a ramification point")]
    VanishingDerivative { magnitude: f64 },

    /// Two trajectories approached within the declared collision threshold.
    #[error("trajectories {first} and {second} collided near t = {t}")]
    Collision { first: usize, second: usize, t: crate::C64 },

    /// Nearest-neighbour trajectory matching was ambiguous.
    #[error("trajectory pairing ambiguous at sample {sample}: two candidates within radius")]
    PairingAmbiguous { sample: usize },

    /// Numeric overflow while evaluating.
    #[error("overflow: {0}")]
    Overflow(String),
}
