use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The truncated Mathieu matrix kept changing its eigenvalue up to the
    /// row cap.
    #[error(
        "characteristic value did not converge at truncation {truncation}: \
         last estimates {previous} and {last}"
    )]
    NoConvergence {
        truncation: usize,
        previous: f64,
        last: f64,
    },

    #[error(
        "no bound state for m = {m} at D = {dipole}: angular eigenvalue {e_theta} is positive"
    )]
    NoBoundState { m: u32, dipole: f64, e_theta: f64 },

    #[error("invalid quantum numbers n = {n}, m = {m}: need n >= |m|")]
    InvalidQuantumNumbers { n: u32, m: i64 },

    #[error("could not bracket a root: {0}")]
    BracketNotFound(String),

    #[error("evaluation point {point:?} coincides with a charge")]
    SingularPoint { point: [f64; 2] },

    #[error("charge cluster is empty")]
    EmptyCluster,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shooting failed: {0}")]
    Shooting(String),
}
