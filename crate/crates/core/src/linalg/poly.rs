use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Zero;

use super::Complex;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Univariate complex polynomial, coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is zero (stored as `[0]`).
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex>,
}

/// Roots together with how the iteration ended.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub roots: Vec<Complex>,
    pub iterations: usize,
    /// Largest `|p(z)| / (max|c_k| max(1,|z|)^deg)` over the returned roots.
    pub max_scaled_residual: f64,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex]) -> Self {
        let mut coeffs = alloc::vec![Complex::new(1.0, 0.0)];
        for &r in roots {
            let mut next = alloc::vec![Complex::zero(); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by a single Horner pass.
    fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.degree() == 0 {
            return UniPoly::new(Vec::new());
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `|p(z)|` relative to `max|c_k| * max(1,|z|)^deg`.
    pub fn scaled_residual(&self, z: Complex) -> f64 {
        let scale = self.max_coeff() * libm::pow(z.norm().max(1.0), self.degree() as f64);
        self.eval(z).norm() / scale
    }

    /// All roots, with multiplicity.
    pub fn roots(&self) -> Result<Vec<Complex>> {
        self.roots_with(&Tolerances::DEFAULT).map(|r| r.roots)
    }

    /// Aberth-Ehrlich simultaneous iteration started from a perturbed circle.
    ///
    /// Every root must satisfy the `root_residual` bound at exit, otherwise
    /// the call fails with `ConvergenceFailure`.
    pub fn roots_with(&self, tol: &Tolerances) -> Result<RootReport> {
        let deg = self.degree();
        if deg == 0 {
            return Err(Error::InvalidInput("root finding needs degree >= 1".into()));
        }
        let lead = self.coeffs[deg];
        if deg == 1 {
            let root = -self.coeffs[0] / lead;
            return Ok(RootReport {
                roots: alloc::vec![root],
                iterations: 0,
                max_scaled_residual: self.scaled_residual(root),
            });
        }

        let mut z = self.initial_guesses();
        let mut iterations = 0;
        while iterations < tol.root_max_iter {
            iterations += 1;
            let mut max_step = 0.0f64;
            for k in 0..deg {
                let (p, dp) = self.eval_with_derivative(z[k]);
                if p.is_zero() {
                    continue;
                }
                let ratio = p / dp;
                let mut repulsion = Complex::zero();
                for j in 0..deg {
                    if j != k {
                        repulsion += (z[k] - z[j]).inv();
                    }
                }
                let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
                if !step.re.is_finite() || !step.im.is_finite() {
                    continue;
                }
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
            if max_step <= 4.0 * f64::EPSILON {
                break;
            }
        }

        let max_scaled_residual = z
            .iter()
            .map(|&r| self.scaled_residual(r))
            .fold(0.0, f64::max);
        if !(max_scaled_residual <= tol.root_residual) {
            return Err(Error::ConvergenceFailure { iterations });
        }
        Ok(RootReport {
            roots: z,
            iterations,
            max_scaled_residual,
        })
    }

    fn initial_guesses(&self) -> Vec<Complex> {
        let deg = self.degree();
        let lead = self.coeffs[deg];
        let center = -self.coeffs[deg - 1] / (lead * deg as f64);
        // Fujiwara-style radius about the origin, halved so the circle sits
        // inside the root annulus on typical inputs.
        let mut radius = 0.0f64;
        for k in 0..deg {
            let ratio = (self.coeffs[k] / lead).norm();
            if ratio > 0.0 {
                radius = radius.max(libm::pow(ratio, 1.0 / (deg - k) as f64));
            }
        }
        if radius == 0.0 {
            radius = 1.0;
        }
        let offset = 0.4;
        (0..deg)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / deg as f64 + offset;
                center + Complex::from_polar(radius, theta)
            })
            .collect()
    }
}
