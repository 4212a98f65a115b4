use alloc::vec::Vec;

use num_traits::Zero;

use super::{Complex, Lu, SquareMatrix};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// `a = vectors * diag(values) * vectors^-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigendecomposition {
    pub vectors: SquareMatrix,
    pub values: Vec<Complex>,
}

impl SquareMatrix {
    /// Eigenvalues as roots of the characteristic polynomial, sorted by
    /// `(re, im)`.
    pub fn eigenvalues(&self) -> Result<Vec<Complex>> {
        self.eigenvalues_with(&Tolerances::DEFAULT)
    }

    pub fn eigenvalues_with(&self, tol: &Tolerances) -> Result<Vec<Complex>> {
        let mut values = if self.n() == 1 {
            alloc::vec![self[(0, 0)]]
        } else {
            self.charpoly().roots_with(tol)?.roots
        };
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(values)
    }

    pub fn eigen_diagonalize(&self) -> Result<Eigendecomposition> {
        self.eigen_diagonalize_with(&Tolerances::DEFAULT)
    }

    /// Diagonalizes a matrix with pairwise distinct eigenvalues.
    ///
    /// Eigenvectors come from two steps of inverse iteration on `a - lambda I`.
    /// Each column has unit 2-norm and its largest-magnitude entry is real
    /// positive.
    pub fn eigen_diagonalize_with(&self, tol: &Tolerances) -> Result<Eigendecomposition> {
        let n = self.n();
        let norm = self.frobenius_norm();
        let values = self.eigenvalues_with(tol)?;
        let gap = min_gap(&values);
        let threshold = tol.eigen_gap * norm;
        if n > 1 && !(gap > threshold) {
            return Err(Error::ClusteredSpectrum { gap, threshold });
        }

        let floor = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut vectors = SquareMatrix::zeros(n);
        for (col, &lambda) in values.iter().enumerate() {
            let shifted = SquareMatrix::from_fn(n, |i, j| {
                if i == j {
                    self[(i, j)] - lambda
                } else {
                    self[(i, j)]
                }
            });
            let lu = Lu::factor_regularized(&shifted, floor);
            let mut v: Vec<Complex> = (0..n)
                .map(|i| Complex::new(1.0, 0.25 * i as f64) / (1.0 + i as f64))
                .collect();
            for _ in 0..2 {
                v = lu.solve(&v);
                normalize(&mut v);
            }
            for (row, &entry) in v.iter().enumerate() {
                vectors[(row, col)] = entry;
            }
        }

        let inv = vectors.inverse_with(tol)?;
        let rebuilt = &(&vectors * &SquareMatrix::from_diagonal(&values)) * &inv;
        let residual = rebuilt.distance(self);
        if !(residual <= tol.eigen_reconstruction * norm.max(f64::MIN_POSITIVE)) {
            return Err(Error::ConvergenceFailure { iterations: 2 });
        }
        Ok(Eigendecomposition { vectors, values })
    }
}

/// Smallest pairwise distance; infinity for fewer than two values.
pub(crate) fn min_gap(values: &[Complex]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

fn normalize(v: &mut [Complex]) {
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let mut pivot = Complex::zero();
    let mut best = -1.0;
    for &z in v.iter() {
        if z.norm() > best {
            best = z.norm();
            pivot = z;
        }
    }
    if norm == 0.0 || best == 0.0 {
        return;
    }
    // unit norm, largest entry rotated onto the positive real axis
    let phase = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
}
