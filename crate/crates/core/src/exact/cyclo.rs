//! The cyclotomic field `Q(omega)`, `omega = exp(2 pi i / m)`, as residues
//! modulo the `m`-th cyclotomic polynomial.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::wreath::root_of_unity;

/// `Phi_m`, ascending integer coefficients, from `x^m - 1 = prod_{d | m} Phi_d`.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    assert!(m > 0, "cyclotomic polynomial of order 0");
    let mut num = vec![BigInt::zero(); m + 1];
    num[0] = -BigInt::one();
    num[m] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

/// Quotient by a monic divisor that is known to divide exactly.
fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    q
}

pub fn euler_phi(m: usize) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

fn rational_modulus(m: usize) -> Vec<BigRational> {
    cyclotomic_polynomial(m)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// `(quotient, remainder)` of `a / b` over `Q`, `b` nonzero and trimmed.
fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    (q, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(&mut out);
    out
}

/// An element of `Q(omega)`: coefficients of `1, omega, ..., omega^{phi(m)-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    m: usize,
    coeffs: Vec<BigRational>,
}

impl CycloScalar {
    pub fn zero(m: usize) -> Self {
        Self {
            m,
            coeffs: vec![BigRational::zero(); euler_phi(m)],
        }
    }

    pub fn one(m: usize) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: usize, q: BigRational) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[0] = q;
        out
    }

    pub fn from_integer(m: usize, k: i64) -> Self {
        Self::from_rational(m, BigRational::from_integer(k.into()))
    }

    /// `omega^k`.
    pub fn omega_pow(m: usize, k: usize) -> Self {
        let mut p = vec![BigRational::zero(); k % m + 1];
        p[k % m] = BigRational::one();
        Self::reduce(m, p)
    }

    /// Reduces an arbitrary polynomial in `omega`.
    pub fn reduce(m: usize, poly: Vec<BigRational>) -> Self {
        let (_, mut rem) = divrem(&poly, &rational_modulus(m));
        rem.resize(euler_phi(m), BigRational::zero());
        Self { m, coeffs: rem }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn to_complex(&self) -> Complex {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| root_of_unity(self.m, k) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Inverse by the extended Euclidean algorithm against `Phi_m`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "inverse of zero in the cyclotomic field".into(),
            ));
        }
        let mut a = self.coeffs.clone();
        trim(&mut a);
        // invariant: s * self = r (mod Phi_m)
        let (mut r0, mut r1) = (rational_modulus(self.m), a);
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        // Phi_m is irreducible, so the last nonzero remainder is a constant
        let c = r1[0].clone();
        let s: Vec<BigRational> = s1.iter().map(|v| v / &c).collect();
        Ok(Self::reduce(self.m, s))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.m, other.m, "cyclotomic scalars over different fields");
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            m: self.m,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        if self.coeffs.len() == 1 {
            return CycloScalar {
                m: self.m,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        CycloScalar::reduce(self.m, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for CycloScalar {
            type Output = CycloScalar;
            fn $f(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
