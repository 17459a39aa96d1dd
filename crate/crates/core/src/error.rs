//! Error type shared by all modules.

/// Errors reported by closed-form and oracle computations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A scalar argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a band edge z = ±1 where the formula is singular.
    #[error("singular energy: {0}")]
    SingularEnergy(String),

    /// Evaluation at (or too near) a pole of a resolvent quantity.
    #[error("pole: {0}")]
    Pole(String),

    /// Near-edge refusal of the closed form; use the recurrence or edge formula.
    #[error("near band edge: {0}")]
    NearEdge(String),

    /// Coefficient recovery rejected an inadmissible determinant polynomial.
    #[error("inadmissible: {0}")]
    Inadmissible(String),

    /// Moment sequence is not strictly positive definite.
    #[error("singular moment sequence: {0}")]
    SingularMoments(String),

    /// Adaptive quadrature exhausted its panel budget.
    #[error("quadrature budget exceeded: {0}")]
    QuadBudget(String),

    /// Phase tracking could not keep the step jump under pi/2.
    #[error("phase step failure: {0}")]
    PhaseStep(String),

    /// Linear solve hit a (near-)singular pivot.
    #[error("near-singular solve: {0}")]
    NearSingular(String),

    /// Iterative eigensolver failed to converge.
    #[error("eigensolver convergence failure: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
