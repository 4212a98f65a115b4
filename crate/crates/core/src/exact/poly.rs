//! Sparse multivariate polynomials over `Q(omega)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cyclo::CycloScalar;
use crate::error::{Error, Result};
use crate::linalg::Complex;
use crate::wreath::MonomialMap;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Image under `v_j -> omega^{phase_j} v_{source_j}`, as
    /// `(omega exponent, monomial)`.
    pub fn substitute(&self, map: &MonomialMap) -> (usize, Monomial) {
        let mut out = vec![0u32; self.0.len()];
        let mut phase = 0usize;
        for (j, &e) in self.0.iter().enumerate() {
            out[map.source[j]] += e;
            phase = (phase + map.phase[j] * e as usize) % map.m;
        }
        (phase, Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, ascending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            fill(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    fill(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
    out.sort();
    out
}

/// Number of monomials of degree `d` in `nvars` variables, saturating.
pub fn monomial_count(nvars: usize, d: usize) -> u128 {
    // C(d + nvars - 1, nvars - 1)
    if nvars == 0 {
        return u128::from(d == 0);
    }
    let k = (nvars - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul(d as u128 + i) / i;
    }
    acc
}

/// Polynomial in `nvars` variables over `Q(omega_m)`; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    m: usize,
    nvars: usize,
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl MultiPoly {
    pub fn zero(m: usize, nvars: usize) -> Self {
        Self {
            m,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CycloScalar, nvars: usize) -> Self {
        let mut p = Self::zero(c.m(), nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(m: usize, nvars: usize) -> Self {
        Self::constant(CycloScalar::one(m), nvars)
    }

    /// The variable `v_i`.
    pub fn variable(m: usize, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(m, Monomial(e), CycloScalar::one(m))
    }

    pub fn monomial(m: usize, mono: Monomial, c: CycloScalar) -> Self {
        let mut p = Self::zero(m, mono.0.len());
        p.add_term(mono, c);
        p
    }

    /// `p_{r,s} = sum_i v_i^r v_{n+i}^s` in the `2n` coordinates of `L x L`.
    pub fn power_sum_pair(m: usize, n: usize, r: u32, s: u32) -> Self {
        let mut p = Self::zero(m, 2 * n);
        for i in 0..n {
            let mut e = vec![0; 2 * n];
            e[i] = r;
            e[n + i] += s;
            p.add_term(Monomial(e), CycloScalar::one(m));
        }
        p
    }

    /// `e_k(v_0^pow, ..., v_{n-1}^pow)` in `n` variables.
    pub fn elementary_in_powers(m: usize, n: usize, k: usize, pow: u32) -> Self {
        let mut p = Self::zero(m, n);
        for subset in k_subsets(n, k) {
            let mut e = vec![0; n];
            for i in subset {
                e[i] = pow;
            }
            p.add_term(Monomial(e), CycloScalar::one(m));
        }
        p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&CycloScalar> {
        self.terms.get(mono)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &CycloScalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(mono, _)| mono.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, mono: Monomial, c: CycloScalar) {
        assert_eq!(mono.0.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        self.map_coefficients(|c| -c)
    }

    pub fn scale(&self, c: &CycloScalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.m, self.nvars);
        }
        self.map_coefficients(|v| v * c)
    }

    pub fn scale_rational(&self, q: &BigRational) -> MultiPoly {
        let mut out = Self::zero(self.m, self.nvars);
        for (mono, c) in &self.terms {
            out.add_term(mono.clone(), c.scale(q));
        }
        out
    }

    fn map_coefficients(&self, f: impl Fn(&CycloScalar) -> CycloScalar) -> MultiPoly {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), f(v))).collect();
        MultiPoly {
            m: self.m,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check(other);
        let mut out = Self::zero(self.m, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = Self::one(self.m, self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `d/dv_i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.m, self.nvars);
        for (mono, c) in &self.terms {
            let e = mono.0[i];
            if e == 0 {
                continue;
            }
            let mut lowered = mono.clone();
            lowered.0[i] -= 1;
            out.add_term(
                lowered,
                c.scale(&BigRational::from_integer(BigInt::from(e))),
            );
        }
        out
    }

    /// `p(v)` with `v_j` replaced by `omega^{phase_j} v_{source_j}`.
    pub fn substitute(&self, map: &MonomialMap) -> Result<MultiPoly> {
        if map.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: map.dim(),
            });
        }
        if map.m != self.m {
            return Err(Error::InvalidInput(
                "monomial map over a different root of unity".into(),
            ));
        }
        let mut out = Self::zero(self.m, self.nvars);
        for (mono, c) in &self.terms {
            let (phase, image) = mono.substitute(map);
            out.add_term(image, c * &CycloScalar::omega_pow(self.m, phase));
        }
        Ok(out)
    }

    pub fn eval(&self, v: &[Complex]) -> Result<Complex> {
        if v.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: v.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(mono, c)| {
                mono.0
                    .iter()
                    .zip(v)
                    .fold(c.to_complex(), |acc, (&e, &x)| acc * x.powu(e))
            })
            .sum())
    }

    fn check(&self, other: &MultiPoly) {
        assert!(
            self.m == other.m && self.nvars == other.nvars,
            "polynomials over different rings"
        );
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            match c.as_rational() {
                Some(q) => write!(f, "{q}")?,
                None => {
                    f.write_str("(")?;
                    for (k, a) in c.coeffs().iter().enumerate() {
                        if k > 0 {
                            write!(f, " + {a}*w^{k}")?;
                        } else {
                            write!(f, "{a}")?;
                        }
                    }
                    f.write_str(")")?;
                }
            }
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*v{i}")?,
                    _ => write!(f, "*v{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
