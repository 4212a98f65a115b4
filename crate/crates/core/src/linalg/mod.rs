//! Dense complex linear algebra for small square matrices.
//!
//! Products use a fixed `i, j, k` loop order with left-to-right accumulation
//! over `k`, so results are bit-reproducible for identical inputs.

mod charpoly;
mod eigen;
mod poly;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

pub use charpoly::{faddeev_leverrier, CharpolyScalar};
pub(crate) use eigen::min_gap;
pub use eigen::Eigendecomposition;
pub use poly::{RootReport, UniPoly};

/// The ground field scalar.
pub type Complex = Complex64;

/// A square `n x n` complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Complex>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self {
            n,
            entries: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            a[(i, i)] = Complex::new(1.0, 0.0);
        }
        a
    }

    pub fn from_diagonal(diag: &[Complex]) -> Self {
        let mut a = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            a[(i, i)] = d;
        }
        a
    }

    /// Builds a matrix from `n*n` row-major entries.
    pub fn from_row_major(n: usize, entries: Vec<Complex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be positive".into(),
            ));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { n, entries })
    }

    /// Real convenience constructor, mostly for tests and examples.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&v| Complex::new(v, 0.0)));
        }
        Self::from_row_major(n, entries)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut a = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = f(i, j);
            }
        }
        a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Complex> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex {
        (0..self.n).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        libm::sqrt(acc)
    }

    pub fn is_diagonal(&self) -> bool {
        self.off_diagonal_norm() == 0.0
    }

    /// Matrix product; fails when the dimensions differ.
    pub fn mat_mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::zero();
                for k in 0..n {
                    acc += self.entries[i * n + k] * other.entries[k * n + j];
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &SquareMatrix,
        f: impl Fn(Complex, Complex) -> Complex,
    ) -> Result<SquareMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(SquareMatrix { n: self.n, entries })
    }

    pub fn scale(&self, c: Complex) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&z| z * c).collect(),
        }
    }

    /// `||self - other||_F`, or infinity on a dimension mismatch.
    pub fn distance(&self, other: &SquareMatrix) -> f64 {
        self.sub(other)
            .map(|d| d.frobenius_norm())
            .unwrap_or(f64::INFINITY)
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        self.inverse_with(&Tolerances::DEFAULT)
    }

    /// Inverse by LU with partial pivoting.
    pub fn inverse_with(&self, tol: &Tolerances) -> Result<SquareMatrix> {
        let lu = Lu::factor(self, tol.inverse_pivot)?;
        let n = self.n;
        let mut inv = SquareMatrix::zeros(n);
        let mut e = vec![Complex::zero(); n];
        for col in 0..n {
            e.iter_mut().for_each(|z| *z = Complex::zero());
            e[col] = Complex::new(1.0, 0.0);
            let x = lu.solve(&e);
            for row in 0..n {
                inv[(row, col)] = x[row];
            }
        }
        let norm = self.frobenius_norm();
        let residual = self.mat_mul(&inv)?.distance(&SquareMatrix::identity(n));
        let bound = tol.inverse_residual * n as f64 * norm;
        if !(residual <= bound) {
            return Err(Error::SingularMatrix {
                pivot: lu.min_pivot,
                threshold: lu.threshold,
            });
        }
        Ok(inv)
    }

    /// Determinant by LU; returns zero for exactly singular input.
    pub fn determinant(&self) -> Complex {
        match Lu::factor(self, 0.0) {
            Ok(lu) => lu.determinant(),
            Err(_) => Complex::zero(),
        }
    }

    /// `det(tI - self)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> UniPoly {
        UniPoly::new(faddeev_leverrier(self.n, &self.entries))
    }

    /// Spectral condition estimate `||a||_F ||a^-1||_F`; infinite when singular.
    pub fn condition_estimate(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.frobenius_norm() * inv.frobenius_norm(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn apply(&self, v: &[Complex]) -> Vec<Complex> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n).fold(Complex::zero(), |acc, k| {
                    acc + self.entries[i * n + k] * v[k]
                })
            })
            .collect()
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i * self.n + j]
    }
}

/// Panics on dimension mismatch; use [`SquareMatrix::mat_mul`] for a fallible product.
impl Mul for &SquareMatrix {
    type Output = SquareMatrix;
    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        self.mat_mul(rhs).expect("matrix dimensions must agree")
    }
}

/// Packed LU factors with row permutation.
pub(crate) struct Lu {
    n: usize,
    lu: Vec<Complex>,
    perm: Vec<usize>,
    odd: bool,
    min_pivot: f64,
    threshold: f64,
}

impl Lu {
    /// Fails when a pivot falls below `rel * ||a||_F`.
    pub(crate) fn factor(a: &SquareMatrix, rel: f64) -> Result<Self> {
        let threshold = rel * a.frobenius_norm();
        Self::factor_impl(a, threshold, None)
    }

    /// Never fails: tiny pivots are replaced by `floor` (inverse iteration).
    pub(crate) fn factor_regularized(a: &SquareMatrix, floor: f64) -> Self {
        Self::factor_impl(a, 0.0, Some(floor)).expect("regularized LU cannot fail")
    }

    fn factor_impl(a: &SquareMatrix, threshold: f64, floor: Option<f64>) -> Result<Self> {
        let n = a.n;
        let mut lu = a.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd = false;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut p = k;
            let mut best = lu[k * n + k].norm();
            for i in (k + 1)..n {
                let v = lu[i * n + k].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                odd = !odd;
            }
            min_pivot = min_pivot.min(best);
            match floor {
                Some(f) if best < f => lu[k * n + k] = Complex::new(f, 0.0),
                None if best <= threshold || best == 0.0 => {
                    return Err(Error::SingularMatrix {
                        pivot: best,
                        threshold,
                    });
                }
                _ => {}
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(Self {
            n,
            lu,
            perm,
            odd,
            min_pivot,
            threshold,
        })
    }

    pub(crate) fn solve(&self, b: &[Complex]) -> Vec<Complex> {
        let n = self.n;
        let mut x: Vec<Complex> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= l * xj;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.lu[i * n + j];
                let xj = x[j];
                x[i] -= u * xj;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    fn determinant(&self) -> Complex {
        let n = self.n;
        let mut det = (0..n).fold(Complex::new(1.0, 0.0), |acc, i| acc * self.lu[i * n + i]);
        if self.odd {
            det = -det;
        }
        det
    }
}
