//! Error type shared by every fallible operation in the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, split by origin: invalid caller input,
/// rejected external data, or a numerical routine that failed to converge.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A sampling grid is too coarse to resolve the requested bandwidth.
    #[error("grid of {got} points cannot resolve bandwidth {bandwidth}; need at least {needed}")]
    GridTooSmall {
        bandwidth: u32,
        needed: usize,
        got: usize,
    },

    /// A scalar or structural argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A potential description read from JSON failed validation.
    #[error("potential file rejected: {0}")]
    BadPotentialFile(String),

    /// The adaptive integrator drove the step size below the representable
    /// floor, typically because `|lambda|` is outside the supported range.
    #[error("integrator step size underflow at x = {x:.6e}")]
    StepSizeUnderflow { x: f64 },

    /// The adaptive integrator hit its step budget before reaching the end.
    #[error("integrator exceeded {0} steps")]
    StepLimitExceeded(usize),

    /// The discriminant root search could not locate two roots (counted with
    /// multiplicity) inside the search disk after the full retry schedule.
    #[error("root search failed for bc case {bc_case}, pair {n}: located {found} of 2 roots")]
    SearchFailure { bc_case: u8, n: u32, found: usize },

    /// A value of `lambda` passed to an eigenfunction routine leaves the
    /// boundary-condition matrix without an approximate kernel.
    #[error("lambda is not an eigenvalue: kernel residual {residual:.3e} exceeds {tol:.3e}")]
    NotAnEigenvalue { residual: f64, tol: f64 },

    /// An associated function was requested for a pair whose classification
    /// does not admit one.
    #[error("pair classified as {class} admits no associated function")]
    NoAssociatedFunction { class: &'static str },

    /// The chain equation for an associated function has no solution meeting
    /// the boundary conditions to tolerance.
    #[error("chain equation unsolvable: boundary defect {residual:.3e} exceeds {tol:.3e}")]
    ChainUnsolvable { residual: f64, tol: f64 },

    /// The QR or Jacobi eigenvalue iteration stalled.
    #[error("eigenvalue iteration failed to converge")]
    EigNonConvergence,

    /// A root-system member for one pair of a Gram window could not be
    /// constructed; carries the failing pair index and the underlying cause.
    #[error("root system construction failed at pair {n} (bc case {bc_case}): {cause}")]
    RootSystem {
        bc_case: u8,
        n: u32,
        cause: Box<Error>,
    },

    /// A perturbation direction could not be made disjoint from the original
    /// potential's coefficient support.
    #[error("perturbation direction collides with existing coefficients at index {index}")]
    DirectionCollision { index: u32 },

    /// Underlying JSON (de)serialization failure.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// Underlying I/O failure (reading or writing potential files).
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
