use alloc::vec;
use alloc::vec::Vec;
use core::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Complex;

/// Scalars the Faddeev-LeVerrier recurrence can run over: a commutative ring
/// in which division by the positive integers `1..=n` is exact.
pub trait CharpolyScalar: Clone + Zero + One + Neg<Output = Self> {
    fn div_count(&self, k: usize) -> Self;
}

impl CharpolyScalar for Complex {
    fn div_count(&self, k: usize) -> Self {
        self / k as f64
    }
}

impl CharpolyScalar for BigRational {
    fn div_count(&self, k: usize) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
}

/// Coefficients of `det(tI - A)` in ascending degree, for the row-major
/// `n x n` matrix `a`.
///
/// `M_0 = 0`, `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
pub fn faddeev_leverrier<T: CharpolyScalar>(n: usize, a: &[T]) -> Vec<T> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // holds A M_{k-1}; M_0 = 0
    let mut m = vec![T::zero(); n * n];
    for k in 1..=n {
        for i in 0..n {
            m[i * n + i] = m[i * n + i].clone() + coeffs[n - k + 1].clone();
        }
        let am = mul_row_major(n, a, &m);
        let tr = (0..n).fold(T::zero(), |acc, i| acc + am[i * n + i].clone());
        coeffs[n - k] = (-tr).div_count(k);
        m = am;
    }
    coeffs
}

fn mul_row_major<T: CharpolyScalar>(n: usize, a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = T::zero();
            for k in 0..n {
                acc = acc + a[i * n + k].clone() * b[k * n + j].clone();
            }
            out[i * n + j] = acc;
        }
    }
    out
}
