//! Central tolerance table.
//!
//! Every numerical threshold in the crate is relative to a Frobenius norm (or
//! another stated scale) and lives here, so a single value can be tightened
//! or loosened for an experiment.

/// Tolerances used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// LU pivots below `inverse_pivot * ||a||_F` are treated as zero.
    pub inverse_pivot: f64,
    /// Residual factor for `||a a^-1 - I||_F <= inverse_residual * n * ||a||_F`.
    pub inverse_residual: f64,
    /// Root acceptance: `|p(z)| <= root_residual * max|c_k| * max(1,|z|)^deg`.
    pub root_residual: f64,
    /// Iteration cap for the simultaneous root finder.
    pub root_max_iter: usize,
    /// Minimal eigenvalue gap, relative to `||a||_F`, for diagonalization.
    pub eigen_gap: f64,
    /// Reconstruction bound `||v diag(l) v^-1 - a||_F <= eigen_reconstruction * ||a||_F`.
    pub eigen_reconstruction: f64,
    /// Membership threshold for the moment-map zero set.
    pub moment: f64,
    /// Genericity margin for the cycle product, relative to its Frobenius norm.
    pub generic: f64,
    /// Allowed defect when reading W_n-gauged points back off the diagonal slice.
    pub stability: f64,
    /// Guard for rational reconstruction of Molien coefficients.
    pub molien_guard: f64,
    /// Off-diagonal threshold when reading off y after canonical gauge fixing.
    pub diagonal_residue: f64,
    /// Condition-number cap for sampled gauge components.
    pub gauge_condition: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        inverse_pivot: 1e-12,
        inverse_residual: 1e-9,
        root_residual: 1e-10,
        root_max_iter: 200,
        eigen_gap: 1e-8,
        eigen_reconstruction: 1e-8,
        moment: 1e-10,
        generic: 1e-6,
        stability: 1e-12,
        molien_guard: 1e-6,
        diagonal_residue: 1e-7,
        gauge_condition: 1e6,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
