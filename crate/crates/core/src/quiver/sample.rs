use alloc::vec::Vec;

use rand_core::RngCore;

use super::{
    act_gauge_double, embed_ll, DoubleRepPoint, GaugeElement, LLPoint, LPoint, QuiverShape,
    RepPoint,
};
use crate::error::{Error, Result};
use crate::linalg::SquareMatrix;
use crate::rng::complex_gaussian;
use crate::tolerance::Tolerances;

const MAX_ATTEMPTS: usize = 100;

fn gaussian_matrix<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| complex_gaussian(rng))
}

/// Entries i.i.d. standard complex Gaussian, drawn row-major, vertex by vertex.
pub fn random_rep<R: RngCore + ?Sized>(shape: QuiverShape, rng: &mut R) -> RepPoint {
    let x = (0..shape.m())
        .map(|_| gaussian_matrix(shape.n(), rng))
        .collect();
    RepPoint { shape, x }
}

/// Gaussian gauge element; each component is redrawn until its condition
/// estimate is below `tol.gauge_condition`.
pub fn random_gauge<R: RngCore + ?Sized>(
    shape: QuiverShape,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<GaugeElement> {
    let mut g = Vec::with_capacity(shape.m());
    for _ in 0..shape.m() {
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS {
            let a = gaussian_matrix(shape.n(), rng);
            if a.condition_estimate() < tol.gauge_condition {
                accepted = Some(a);
                break;
            }
        }
        g.push(accepted.ok_or(Error::SamplingFailure {
            attempts: MAX_ATTEMPTS,
        })?);
    }
    Ok(GaugeElement { shape, g })
}

pub fn random_l_point<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> LPoint {
    LPoint::new((0..n).map(|_| complex_gaussian(rng)).collect())
}

pub fn random_ll_point<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> LLPoint {
    let z = (0..n).map(|_| complex_gaussian(rng)).collect();
    let zp = (0..n).map(|_| complex_gaussian(rng)).collect();
    LLPoint { z, zp }
}

/// A point on the gauge saturation of the diagonal pairs, returned with the
/// planted diagonal pair it was built from.
pub fn random_z_point<R: RngCore + ?Sized>(
    shape: QuiverShape,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<(DoubleRepPoint, LLPoint)> {
    let planted = random_ll_point(shape.n(), rng);
    let g = random_gauge(shape, rng, tol)?;
    let p = act_gauge_double(&g, &embed_ll(&planted, shape.m())?)?;
    Ok((p, planted))
}
