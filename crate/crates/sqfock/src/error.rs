use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the library.
///
/// The variants separate physically meaningful failure modes (an infeasible
/// protocol target, a heralding outcome that cannot occur) from numerical
/// ones (truncation, non-convergence) so callers can react differently.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter triple violates the normalizability constraints
    /// Re a > 0, Re d > 0, Re a Re d − (Re b)² > 0.
    #[error("invalid two-mode Gaussian parameters: {reason}")]
    InvalidTmeg { reason: String },

    /// Fock index exceeds the configured cap.
    #[error("Fock index {n} exceeds capacity cap {cap}")]
    Capacity { n: usize, cap: usize },

    /// Quadrature order outside the supported range.
    #[error("quadrature order {order} outside supported range [{min}, {max}]")]
    InvalidOrder { order: usize, min: usize, max: usize },

    /// A configuration where the evaluated expression is singular
    /// (for example a² = 1 in the second universal condition).
    #[error("singular configuration: {reason}")]
    SingularConfiguration { reason: String },

    /// Heralding outcome has vanishing probability; the conditional state
    /// is undefined. This is a legitimate physical outcome (for example an
    /// odd photon-number projection of a product state), not a numerical
    /// failure.
    #[error("unheraldable outcome: probability {probability:.3e} below threshold")]
    Unheraldable { probability: f64 },

    /// A wavefunction that must be normalized is not.
    #[error("wavefunction not normalized: |norm - 1| = {deviation:.3e}")]
    Unnormalized { deviation: f64 },

    /// Two tabulated wavefunctions live on different grids.
    #[error("tabulated wavefunctions use incompatible grids")]
    GridMismatch,

    /// Fock-basis truncation leaves too much probability outside the kept block.
    #[error("Fock truncation insufficient: tail mass {tail_mass:.3e} above threshold {threshold:.1e}")]
    TruncationInsufficient { tail_mass: f64, threshold: f64 },

    /// No input squeezing satisfies the generation conditions for the
    /// requested entangler and target.
    #[error("no solution: {detail}")]
    NoSolution { detail: String },

    /// An iterative or quadrature computation failed to converge.
    #[error("convergence failure: {what}")]
    Convergence { what: String },

    /// An argument outside its documented domain.
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}
