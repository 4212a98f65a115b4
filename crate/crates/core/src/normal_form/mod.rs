//! Normal forms for generic orbits.
//!
//! A generic point `(x_1, ..., x_m)` is gauged to `(I, ..., I, D)` with `D`
//! the diagonalized cycle product, then to the diagonal slice by taking
//! principal `m`-th roots of `D`. Sorting the coordinates fixes the residual
//! `S_n`, and the principal branch fixes the `(Z/m)^n` ambiguity, so the
//! result is a representative of the wreath-group orbit.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Complex, SquareMatrix};
use crate::quiver::{
    act_gauge, act_gauge_double, embed_l, is_generic, DoubleRepPoint, GaugeElement, Genericity,
    LLPoint, LPoint, QuiverShape, RepPoint,
};
use crate::tolerance::Tolerances;

/// Arguments within this many radians below `2 pi` are read as `0`, so
/// positive reals carrying rounding noise keep their real root.
pub const BRANCH_SNAP: f64 = 1e-9;

/// The `m`-th root with argument in `[0, 2 pi / m)`.
pub fn principal_root(w: Complex, m: usize) -> Complex {
    if w.norm() == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    let theta = principal_argument(w);
    Complex::from_polar(libm::pow(w.norm(), 1.0 / m as f64), theta / m as f64)
}

/// `arg w` in `[0, 2 pi)`, with the [`BRANCH_SNAP`] rule applied.
pub fn principal_argument(w: Complex) -> f64 {
    let mut theta = libm::atan2(w.im, w.re);
    if theta < 0.0 {
        theta += 2.0 * PI;
    }
    if theta >= 2.0 * PI - BRANCH_SNAP {
        theta = 0.0;
    }
    theta
}

/// True when `w` lies within `margin` radians of the positive real axis,
/// where principal roots jump.
pub fn near_branch_cut(w: Complex, margin: f64) -> bool {
    let theta = libm::atan2(w.im, w.re);
    theta.abs() < margin && w.re > 0.0
}

/// `(I, ..., I, D)` form of a generic point.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonalization {
    pub gauge: GaugeElement,
    pub d: SquareMatrix,
}

/// Canonical representative on the diagonal slice with its conjugator.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalL {
    pub z: Vec<Complex>,
    pub witness: GaugeElement,
}

impl CanonicalL {
    /// `max_i ||(witness . p)_i - diag z||_F / max(1, ||diag z||_F)`.
    pub fn witness_residual(&self, p: &RepPoint) -> Result<f64> {
        let moved = act_gauge(&self.witness, p)?;
        let target = embed_l(&LPoint::new(self.z.clone()), p.shape().m())?;
        let scale = SquareMatrix::from_diagonal(&self.z)
            .frobenius_norm()
            .max(1.0);
        Ok(moved.distance(&target) / scale)
    }
}

/// Normal form `(d, ..., d, e, ..., e)` of a rank-one point of the zero set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Z1NormalForm {
    pub d: Complex,
    pub e: Complex,
}

/// Canonical pair `(z, z')` for a point on the saturation of the diagonal pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalLL {
    pub z: Vec<Complex>,
    pub zp: Vec<Complex>,
    pub witness: GaugeElement,
}

impl CanonicalLL {
    pub fn pair(&self) -> LLPoint {
        LLPoint {
            z: self.z.clone(),
            zp: self.zp.clone(),
        }
    }
}

/// Outcome of [`canonicalize_double`].
#[derive(Debug, Clone, PartialEq)]
pub enum DoubleCanonical {
    Diagonal(CanonicalLL),
    /// The transported `y` is not diagonal: the point lies in the zero set but
    /// not detectably on the saturation of the diagonal pairs.
    NonDiagonalResidue {
        residue: f64,
        x: CanonicalL,
    },
}

fn require_generic(p: &RepPoint, tol: &Tolerances) -> Result<Genericity> {
    let report = is_generic(p, tol.generic)?;
    if !report.generic {
        return Err(Error::NotGeneric {
            abs_margin: report.abs_margin,
            gap_margin: report.gap_margin,
        });
    }
    Ok(report)
}

/// Gauges a generic point to `(I, ..., I, D)` using
/// `(g, x_1 g, x_2 x_1 g, ..., x_{m-1} ... x_1 g)`, where `g` diagonalizes the
/// cycle product.
pub fn diagonalize_generic(p: &RepPoint, tol: &Tolerances) -> Result<Diagonalization> {
    require_generic(p, tol)?;
    let eig = p.cycle_product().eigen_diagonalize_with(tol)?;
    let shape = p.shape();
    let mut components = Vec::with_capacity(shape.m());
    let mut acc = eig.vectors.clone();
    components.push(acc.clone());
    for xi in &p.x()[..shape.m() - 1] {
        acc = xi * &acc;
        components.push(acc.clone());
    }
    Ok(Diagonalization {
        gauge: GaugeElement::new(shape, components)?,
        d: SquareMatrix::from_diagonal(&eig.values),
    })
}

/// Orders by `(Re w, Im w)` of the cycle eigenvalue, then `(Re z, Im z)`.
fn canonical_order(w: &[Complex], z: &[Complex]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| {
        w[a].re
            .total_cmp(&w[b].re)
            .then(w[a].im.total_cmp(&w[b].im))
            .then(z[a].re.total_cmp(&z[b].re))
            .then(z[a].im.total_cmp(&z[b].im))
    });
    order
}

/// Constant gauge moving coordinate `order[j]` to position `j`.
fn permutation_gauge(shape: QuiverShape, order: &[usize]) -> Result<GaugeElement> {
    let mut p = SquareMatrix::zeros(shape.n());
    for (j, &src) in order.iter().enumerate() {
        p[(src, j)] = Complex::new(1.0, 0.0);
    }
    GaugeElement::constant(shape, p)
}

pub fn to_canonical_l(p: &RepPoint, tol: &Tolerances) -> Result<CanonicalL> {
    let shape = p.shape();
    let m = shape.m();
    let diag = diagonalize_generic(p, tol)?;
    let w = diag.d.diagonal();
    let z: Vec<Complex> = w.iter().map(|&v| principal_root(v, m)).collect();

    // (I, Z^-1, ..., Z^-(m-1)) takes (I, ..., I, Z^m) to (Z, ..., Z)
    let z_inv: Vec<Complex> = z.iter().map(|v| v.inv()).collect();
    let lift = (0..m)
        .map(|k| {
            SquareMatrix::from_diagonal(&z_inv.iter().map(|v| v.powu(k as u32)).collect::<Vec<_>>())
        })
        .collect();
    let lift = GaugeElement::new(shape, lift)?;

    let order = canonical_order(&w, &z);
    let sorted = order.iter().map(|&i| z[i]).collect();
    let witness = diag
        .gauge
        .compose(&lift)?
        .compose(&permutation_gauge(shape, &order)?)?;
    Ok(CanonicalL { z: sorted, witness })
}

/// Normal form of a rank-one point, via the gauge `g_i = x_1 ... x_{i-1} / d^{i-1}`.
pub fn z1_normal_form(p: &DoubleRepPoint, tol: &Tolerances) -> Result<Z1NormalForm> {
    let shape = p.shape();
    if shape.n() != 1 {
        return Err(Error::InvalidInput(
            "rank-one normal form needs n = 1".into(),
        ));
    }
    let residual = p.relative_moment_residual();
    if residual > tol.moment {
        return Err(Error::NotInZ1 { residual });
    }
    let x: Vec<Complex> = p.x().iter().map(|a| a[(0, 0)]).collect();
    let y: Vec<Complex> = p.y().iter().map(|a| a[(0, 0)]).collect();
    let product = x.iter().fold(Complex::new(1.0, 0.0), |acc, v| acc * v);
    let scale: f64 = x.iter().map(|v| v.norm().max(1.0)).product();
    if product.norm() <= tol.generic * scale {
        return Err(Error::VanishingProduct {
            magnitude: product.norm(),
        });
    }
    let m = shape.m();
    let d = principal_root(product, m);
    let e = x[0] * y[0] / d;

    let mut g = Vec::with_capacity(m);
    let mut partial = Complex::new(1.0, 0.0);
    for i in 0..m {
        g.push(SquareMatrix::from_diagonal(&[partial / d.powu(i as u32)]));
        partial *= x[i];
    }
    let moved = act_gauge_double(&GaugeElement::new(shape, g)?, p)?;
    let defect = moved
        .x()
        .iter()
        .map(|a| (a[(0, 0)] - d).norm())
        .chain(moved.y().iter().map(|a| (a[(0, 0)] - e).norm()))
        .fold(0.0, f64::max);
    let bound = tol.diagonal_residue * d.norm().max(e.norm()).max(1.0);
    if !(defect <= bound) {
        return Err(Error::NotInZ1 { residual: defect });
    }
    Ok(Z1NormalForm { d, e })
}

/// Gauge-fixes the `x`-part canonically and reads `z'` off the transported `y`.
pub fn canonicalize_double(p: &DoubleRepPoint, tol: &Tolerances) -> Result<DoubleCanonical> {
    let residual = p.relative_moment_residual();
    if residual > tol.moment {
        return Err(Error::ResidualTooLarge {
            residual,
            threshold: tol.moment,
        });
    }
    let x = to_canonical_l(&p.x_part(), tol)?;
    let moved = act_gauge_double(&x.witness, p)?;
    let zp = moved.y()[0].diagonal();
    let target = SquareMatrix::from_diagonal(&zp);
    let scale = moved
        .y()
        .iter()
        .map(SquareMatrix::frobenius_norm)
        .fold(1.0, f64::max);
    let residue = moved
        .y()
        .iter()
        .map(|a| a.distance(&target))
        .fold(0.0, f64::max)
        / scale;
    if residue > tol.diagonal_residue {
        return Ok(DoubleCanonical::NonDiagonalResidue { residue, x });
    }
    Ok(DoubleCanonical::Diagonal(CanonicalLL {
        z: x.z,
        zp,
        witness: x.witness,
    }))
}

/// Canonical representative of the wreath-group orbit of a diagonal pair,
/// computed coordinatewise without any gauge: rotate each `z_i` onto the
/// principal root of `z_i^m` (moving `z'_i` oppositely) and sort.
pub fn canonical_diagonal_pair(l: &LLPoint, m: usize) -> LLPoint {
    let mut z = Vec::with_capacity(l.n());
    let mut zp = Vec::with_capacity(l.n());
    let mut w = Vec::with_capacity(l.n());
    for (&zi, &zpi) in l.z.iter().zip(&l.zp) {
        let power = zi.powu(m as u32);
        let root = principal_root(power, m);
        let rotation = if zi.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            root / zi
        };
        z.push(root);
        zp.push(zpi / rotation);
        w.push(power);
    }
    let order = canonical_order(&w, &z);
    LLPoint {
        z: order.iter().map(|&i| z[i]).collect(),
        zp: order.iter().map(|&i| zp[i]).collect(),
    }
}

/// Largest coordinate distance relative to `max(1, max |z|)`.
pub fn canonical_distance(a: &[Complex], b: &[Complex]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let scale = a.iter().chain(b).map(|v| v.norm()).fold(1.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Same orbit iff the canonical coordinates agree to `1e-6` relative.
pub fn orbit_equal(p: &RepPoint, q: &RepPoint, tol: &Tolerances) -> Result<bool> {
    if p.shape() != q.shape() {
        return Ok(false);
    }
    let a = to_canonical_l(p, tol)?;
    let b = to_canonical_l(q, tol)?;
    Ok(canonical_distance(&a.z, &b.z) <= ORBIT_TOLERANCE)
}

pub const ORBIT_TOLERANCE: f64 = 1e-6;

#[cfg(test)]
mod tests;
