use thiserror::Error;

/// Errors raised by the kernel, the inversion engine and the verifiers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RdiError {
    /// A caller passed an index or name outside the accepted set.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A spec violates a mathematical precondition (superluminal velocity,
    /// non-positive density, sign condition, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The matrix spinor is not invertible at the evaluation point; carries
    /// the magnitude of `Psi * tilde(Psi)`.
    #[error("singular matrix spinor: |Psi tilde(Psi)| = {magnitude:.3e}")]
    SingularSpinor { magnitude: f64 },

    /// Integrator or solver configuration is unusable (e.g. step too large).
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A named scenario is not registered.
    #[error("unknown scenario: {0}")]
    UnknownScenario(String),
}
