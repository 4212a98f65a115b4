use alloc::string::String;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("matrix is singular to tolerance (pivot {pivot:e}, threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("iteration did not converge after {iterations} steps")]
    ConvergenceFailure { iterations: usize },
    #[error("spectrum is clustered: minimal gap {gap:e} below {threshold:e}")]
    ClusteredSpectrum { gap: f64, threshold: f64 },
    #[error("sampling failed after {attempts} attempts")]
    SamplingFailure { attempts: usize },
    #[error("problem too large: {size} exceeds cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("gauged point left the diagonal slice (residual {residual:e})")]
    StabilityViolation { residual: f64 },
    #[error("rational reconstruction failed at degree {degree} (deviation {deviation:e})")]
    ReconstructionFailure { degree: usize, deviation: f64 },
    #[error("path does not close: r = {r}, s = {s} are not congruent mod {m}")]
    PathClosureError { r: usize, s: usize, m: usize },
    #[error("point is not generic (|λ| margin {abs_margin:e}, gap margin {gap_margin:e})")]
    NotGeneric { abs_margin: f64, gap_margin: f64 },
    #[error("point is not on the moment-map zero set (residual {residual:e})")]
    NotInZ1 { residual: f64 },
    #[error("cycle product vanishes (|x_1...x_m| = {magnitude:e})")]
    VanishingProduct { magnitude: f64 },
    #[error("moment residual {residual:e} exceeds tolerance {threshold:e}")]
    ResidualTooLarge { residual: f64, threshold: f64 },
    #[error("structural invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
