//! Representations of the cyclic quiver with dimension vector `n(1,...,1)`.
//!
//! Vertices are `0..m` (read mod `m`). Arrow `x[i]` goes `i -> i+1` and the
//! reversed arrow `y[i]` goes `i+1 -> i`. A gauge element `g` acts by
//! `x[i] -> g[i+1]^-1 x[i] g[i]` and `y[i] -> g[i]^-1 y[i] g[i+1]`, which is
//! a right action: `act(g, act(h, p)) = act(hg, p)` with `(hg)[i] = h[i] g[i]`.

mod sample;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Complex, SquareMatrix};
use crate::tolerance::Tolerances;

pub use sample::{random_gauge, random_l_point, random_ll_point, random_rep, random_z_point};

/// Number of vertices `m` and the common dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiverShape {
    m: usize,
    n: usize,
}

impl QuiverShape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInput(
                "quiver shape needs m >= 1 and n >= 1".into(),
            ));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Successor vertex `i + 1 mod m`.
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.m
    }

    /// Predecessor vertex `i - 1 mod m`.
    pub fn prev(&self, i: usize) -> usize {
        (i + self.m - 1) % self.m
    }
}

fn check_matrices(shape: QuiverShape, mats: &[SquareMatrix]) -> Result<()> {
    if mats.len() != shape.m {
        return Err(Error::DimensionMismatch {
            expected: shape.m,
            found: mats.len(),
        });
    }
    for a in mats {
        if a.n() != shape.n {
            return Err(Error::DimensionMismatch {
                expected: shape.n,
                found: a.n(),
            });
        }
    }
    Ok(())
}

/// A point `(x_1, ..., x_m)` of the representation space.
#[derive(Debug, Clone, PartialEq)]
pub struct RepPoint {
    shape: QuiverShape,
    x: Vec<SquareMatrix>,
}

impl RepPoint {
    pub fn new(shape: QuiverShape, x: Vec<SquareMatrix>) -> Result<Self> {
        check_matrices(shape, &x)?;
        Ok(Self { shape, x })
    }

    pub fn shape(&self) -> QuiverShape {
        self.shape
    }

    pub fn x(&self) -> &[SquareMatrix] {
        &self.x
    }

    /// `x_m x_{m-1} ... x_1`, the loop at the first vertex.
    pub fn cycle_product(&self) -> SquareMatrix {
        let mut acc = self.x[0].clone();
        for xi in &self.x[1..] {
            acc = xi * &acc;
        }
        acc
    }

    pub fn distance(&self, other: &RepPoint) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    /// Largest Frobenius norm among the components.
    pub fn scale(&self) -> f64 {
        self.x
            .iter()
            .map(SquareMatrix::frobenius_norm)
            .fold(0.0, f64::max)
    }

    pub fn act(&self, g: &GaugeElement) -> Result<RepPoint> {
        act_gauge(g, self)
    }

    pub fn is_generic(&self, tol: f64) -> Result<Genericity> {
        is_generic(self, tol)
    }
}

/// A point `(x_1, ..., x_m, y_1, ..., y_m)` of the doubled representation space.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleRepPoint {
    shape: QuiverShape,
    x: Vec<SquareMatrix>,
    y: Vec<SquareMatrix>,
}

impl DoubleRepPoint {
    pub fn new(shape: QuiverShape, x: Vec<SquareMatrix>, y: Vec<SquareMatrix>) -> Result<Self> {
        check_matrices(shape, &x)?;
        check_matrices(shape, &y)?;
        Ok(Self { shape, x, y })
    }

    pub fn shape(&self) -> QuiverShape {
        self.shape
    }

    pub fn x(&self) -> &[SquareMatrix] {
        &self.x
    }

    pub fn y(&self) -> &[SquareMatrix] {
        &self.y
    }

    /// The `x` half as a point of the single representation space.
    pub fn x_part(&self) -> RepPoint {
        RepPoint {
            shape: self.shape,
            x: self.x.clone(),
        }
    }

    pub fn distance(&self, other: &DoubleRepPoint) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.x
            .iter()
            .zip(&other.x)
            .chain(self.y.iter().zip(&other.y))
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn act(&self, g: &GaugeElement) -> Result<DoubleRepPoint> {
        act_gauge_double(g, self)
    }

    /// Residuals of the moment map equations, one per vertex.
    pub fn moment_residual(&self) -> Vec<SquareMatrix> {
        moment_residual(self)
    }

    /// Natural size of a moment residual: `max(1, max_i ||x_i||_F ||y_i||_F)`.
    pub fn moment_scale(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.y)
            .map(|(a, b)| a.frobenius_norm() * b.frobenius_norm())
            .fold(1.0, f64::max)
    }

    /// Largest residual norm relative to [`Self::moment_scale`].
    pub fn relative_moment_residual(&self) -> f64 {
        let worst = self
            .moment_residual()
            .iter()
            .map(SquareMatrix::frobenius_norm)
            .fold(0.0, f64::max);
        worst / self.moment_scale()
    }

    /// Membership in the moment-map zero set at tolerance `tol.moment`.
    pub fn in_zero_set(&self, tol: &Tolerances) -> bool {
        self.relative_moment_residual() <= tol.moment
    }
}

/// An element `(g_1, ..., g_m)` of the gauge group.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement {
    shape: QuiverShape,
    g: Vec<SquareMatrix>,
}

impl GaugeElement {
    /// Components must be invertible; this is checked when the element acts.
    pub fn new(shape: QuiverShape, g: Vec<SquareMatrix>) -> Result<Self> {
        check_matrices(shape, &g)?;
        Ok(Self { shape, g })
    }

    pub fn identity(shape: QuiverShape) -> Self {
        Self {
            shape,
            g: (0..shape.m)
                .map(|_| SquareMatrix::identity(shape.n))
                .collect(),
        }
    }

    /// The same matrix at every vertex.
    pub fn constant(shape: QuiverShape, a: SquareMatrix) -> Result<Self> {
        Self::new(shape, (0..shape.m).map(|_| a.clone()).collect())
    }

    pub fn shape(&self) -> QuiverShape {
        self.shape
    }

    pub fn components(&self) -> &[SquareMatrix] {
        &self.g
    }

    /// Componentwise product `self[i] * other[i]`.
    pub fn compose(&self, other: &GaugeElement) -> Result<GaugeElement> {
        if self.shape != other.shape {
            return Err(Error::InvalidInput(
                "gauge elements of different shapes".into(),
            ));
        }
        let g = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| a.mat_mul(b))
            .collect::<Result<_>>()?;
        Ok(GaugeElement {
            shape: self.shape,
            g,
        })
    }

    pub fn inverse(&self) -> Result<GaugeElement> {
        let g = self
            .g
            .iter()
            .map(SquareMatrix::inverse)
            .collect::<Result<_>>()?;
        Ok(GaugeElement {
            shape: self.shape,
            g,
        })
    }

    pub fn distance(&self, other: &GaugeElement) -> f64 {
        self.g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }
}

/// A diagonal point `(diag z, ..., diag z)`, stored as the coordinates `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LPoint {
    pub z: Vec<Complex>,
}

impl LPoint {
    pub fn new(z: Vec<Complex>) -> Self {
        Self { z }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }
}

/// A pair of diagonal points: `x`-coordinates `z` and `y`-coordinates `zp`.
#[derive(Debug, Clone, PartialEq)]
pub struct LLPoint {
    pub z: Vec<Complex>,
    pub zp: Vec<Complex>,
}

impl LLPoint {
    pub fn new(z: Vec<Complex>, zp: Vec<Complex>) -> Result<Self> {
        if z.len() != zp.len() {
            return Err(Error::DimensionMismatch {
                expected: z.len(),
                found: zp.len(),
            });
        }
        Ok(Self { z, zp })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }
}

fn shapes_agree(a: QuiverShape, b: QuiverShape) -> Result<()> {
    if a != b {
        return Err(Error::InvalidInput(
            "gauge element and point have different shapes".into(),
        ));
    }
    Ok(())
}

/// `x[i] -> g[i+1]^-1 x[i] g[i]`.
pub fn act_gauge(g: &GaugeElement, p: &RepPoint) -> Result<RepPoint> {
    shapes_agree(g.shape, p.shape)?;
    let inv =
        g.g.iter()
            .map(SquareMatrix::inverse)
            .collect::<Result<Vec<_>>>()?;
    let shape = p.shape;
    let x = (0..shape.m)
        .map(|i| &(&inv[shape.next(i)] * &p.x[i]) * &g.g[i])
        .collect();
    Ok(RepPoint { shape, x })
}

/// `x[i] -> g[i+1]^-1 x[i] g[i]`, `y[i] -> g[i]^-1 y[i] g[i+1]`.
pub fn act_gauge_double(g: &GaugeElement, p: &DoubleRepPoint) -> Result<DoubleRepPoint> {
    shapes_agree(g.shape, p.shape)?;
    let inv =
        g.g.iter()
            .map(SquareMatrix::inverse)
            .collect::<Result<Vec<_>>>()?;
    let shape = p.shape;
    let x = (0..shape.m)
        .map(|i| &(&inv[shape.next(i)] * &p.x[i]) * &g.g[i])
        .collect();
    let y = (0..shape.m)
        .map(|i| &(&inv[i] * &p.y[i]) * &g.g[shape.next(i)])
        .collect();
    Ok(DoubleRepPoint { shape, x, y })
}

/// `r[i] = y[i] x[i] - x[i-1] y[i-1]`, an endomorphism of vertex `i`.
pub fn moment_residual(p: &DoubleRepPoint) -> Vec<SquareMatrix> {
    let shape = p.shape;
    (0..shape.m)
        .map(|i| {
            let j = shape.prev(i);
            (&p.y[i] * &p.x[i])
                .sub(&(&p.x[j] * &p.y[j]))
                .expect("shape checked at construction")
        })
        .collect()
}

pub fn embed_l(l: &LPoint, m: usize) -> Result<RepPoint> {
    let shape = QuiverShape::new(m, l.n())?;
    let d = SquareMatrix::from_diagonal(&l.z);
    Ok(RepPoint {
        shape,
        x: (0..m).map(|_| d.clone()).collect(),
    })
}

pub fn embed_ll(l: &LLPoint, m: usize) -> Result<DoubleRepPoint> {
    let shape = QuiverShape::new(m, l.n())?;
    let dx = SquareMatrix::from_diagonal(&l.z);
    let dy = SquareMatrix::from_diagonal(&l.zp);
    Ok(DoubleRepPoint {
        shape,
        x: (0..m).map(|_| dx.clone()).collect(),
        y: (0..m).map(|_| dy.clone()).collect(),
    })
}

/// Outcome of a genericity test on the cycle product.
#[derive(Debug, Clone, PartialEq)]
pub struct Genericity {
    pub generic: bool,
    /// `min |lambda_i| / ||C||_F`.
    pub abs_margin: f64,
    /// `min |lambda_i - lambda_j| / ||C||_F`; infinite for `n = 1`.
    pub gap_margin: f64,
    pub eigenvalues: Vec<Complex>,
}

impl Genericity {
    pub fn min_margin(&self) -> f64 {
        self.abs_margin.min(self.gap_margin)
    }
}

/// Generic means the cycle product has pairwise distinct nonzero eigenvalues,
/// both margins exceeding `tol` relative to its Frobenius norm.
pub fn is_generic(p: &RepPoint, tol: f64) -> Result<Genericity> {
    let c = p.cycle_product();
    let norm = c.frobenius_norm();
    if norm == 0.0 {
        return Ok(Genericity {
            generic: false,
            abs_margin: 0.0,
            gap_margin: if p.shape.n == 1 { f64::INFINITY } else { 0.0 },
            eigenvalues: alloc::vec![Complex::new(0.0, 0.0); p.shape.n],
        });
    }
    let eigenvalues = c.eigenvalues()?;
    let abs_margin = eigenvalues
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min)
        / norm;
    let gap_margin = crate::linalg::min_gap(&eigenvalues) / norm;
    Ok(Genericity {
        generic: abs_margin > tol && gap_margin > tol,
        abs_margin,
        gap_margin,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests;
