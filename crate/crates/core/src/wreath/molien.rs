use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Representation, WreathElement, ENUMERATION_CAP};
use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::tolerance::Tolerances;

/// Hilbert series of an invariant ring, truncated at `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienSeries {
    /// Coefficient of `t^d` at index `d`.
    pub coefficients: Vec<BigRational>,
}

impl MolienSeries {
    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, d: usize) -> Option<&BigRational> {
        self.coefficients.get(d)
    }

    /// Coefficients as integers, if every one is integral.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self {
            coefficients: values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    /// Constant term one and no negative coefficients.
    pub fn is_well_formed(&self) -> bool {
        self.coefficients
            .first()
            .is_some_and(|c| *c == BigRational::from_integer(1.into()))
            && self.coefficients.iter().all(|c| !c.is_negative())
    }
}

/// `(1/|G|) sum_g 1/det(I - t M_g)` expanded to `max_degree`.
///
/// Each `M_g` is the monomial matrix of the action read off by conjugation.
/// The group average is accumulated in complex floating point and each
/// coefficient is then reconstructed as a rational with denominator dividing
/// `|G|`; the reconstruction must match the float sum to `molien_guard`.
pub fn molien(
    elements: &[WreathElement],
    rep: Representation,
    max_degree: usize,
) -> Result<MolienSeries> {
    molien_with(elements, rep, max_degree, &Tolerances::DEFAULT)
}

pub fn molien_with(
    elements: &[WreathElement],
    rep: Representation,
    max_degree: usize,
    tol: &Tolerances,
) -> Result<MolienSeries> {
    let order = elements.len();
    if order == 0 {
        return Err(Error::InvalidInput("empty group".into()));
    }
    if order as u128 > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            size: order as u128,
            cap: ENUMERATION_CAP,
        });
    }
    let mut sum = alloc::vec![Complex::new(0.0, 0.0); max_degree + 1];
    for w in elements {
        let mat = w.monomial_map(rep)?.to_matrix();
        // det(I - tM) = t^N charpoly(1/t): reversed characteristic coefficients
        let mut den: Vec<Complex> = mat.charpoly().coeffs().to_vec();
        den.reverse();
        let series = invert_series(&den, max_degree);
        for (acc, s) in sum.iter_mut().zip(series) {
            *acc += s;
        }
    }
    let order_f = order as f64;
    let mut coefficients = Vec::with_capacity(max_degree + 1);
    for (degree, total) in sum.into_iter().enumerate() {
        let numerator = libm::round(total.re);
        let deviation = (total - Complex::new(numerator, 0.0)).norm() / order_f;
        if !(deviation < tol.molien_guard) {
            return Err(Error::ReconstructionFailure { degree, deviation });
        }
        coefficients.push(BigRational::new(
            BigInt::from(numerator as i64),
            BigInt::from(order),
        ));
    }
    Ok(MolienSeries { coefficients })
}

/// Power series of `1 / den` to `max_degree`, for `den[0] = 1`.
fn invert_series(den: &[Complex], max_degree: usize) -> Vec<Complex> {
    let mut out = alloc::vec![Complex::zero(); max_degree + 1];
    out[0] = Complex::new(1.0, 0.0) / den[0];
    for d in 1..=max_degree {
        let mut acc = Complex::zero();
        for j in 1..den.len().min(d + 1) {
            acc += den[j] * out[d - j];
        }
        out[d] = -acc / den[0];
    }
    out
}
