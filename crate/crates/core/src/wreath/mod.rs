//! The wreath product `S_n ⋉ (Z/m)^n`, its embedding into the gauge group and
//! its action on the diagonal slices.
//!
//! An element is a permutation `sigma` of `0..n` together with phase
//! exponents `a`, where `zeta_j = omega^{a_j}` and `omega = exp(2 pi i / m)`.
//! Its gauge image has component `k` (for `k = 0..m`) equal to the monomial
//! matrix `P_sigma diag(zeta_1^k, ..., zeta_n^k)`, with `P_sigma e_j = e_{sigma(j)}`.
//!
//! Multiplication is chosen so that [`WreathElement::to_gauge`] is a
//! homomorphism for the componentwise product of gauge elements:
//! `(u v).sigma = u.sigma ∘ v.sigma` and `(u v).a[j] = u.a[v.sigma[j]] + v.a[j]`.

mod molien;

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Complex, SquareMatrix};
use crate::quiver::{
    act_gauge, act_gauge_double, embed_l, embed_ll, GaugeElement, LLPoint, LPoint, QuiverShape,
};
use crate::tolerance::Tolerances;

pub use molien::{molien, molien_with, MolienSeries};

/// Largest group the enumerator will produce.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Which diagonal slice a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `z` only: the reflection representation.
    L,
    /// `(z, z')`: two copies, the second twisted oppositely.
    LL,
}

impl Representation {
    /// Number of coordinates for a given `n`.
    pub fn dim(self, n: usize) -> usize {
        match self {
            Representation::L => n,
            Representation::LL => 2 * n,
        }
    }
}

/// `omega^k` for `omega = exp(2 pi i / m)`, evaluated directly from the angle.
pub fn root_of_unity(m: usize, k: usize) -> Complex {
    let k = k % m;
    // exact values at quarter turns
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => Complex::new(1.0, 0.0),
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    Complex::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    m: usize,
    sigma: Vec<usize>,
    a: Vec<usize>,
}

impl WreathElement {
    /// `sigma` is 0-based; phases are reduced mod `m`.
    pub fn new(m: usize, sigma: Vec<usize>, a: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let n = sigma.len();
        if n == 0 || a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        let mut seen = alloc::vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(Error::InvalidInput("sigma is not a permutation".into()));
            }
            seen[s] = true;
        }
        let a = a.into_iter().map(|v| v % m).collect();
        Ok(Self { m, sigma, a })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Self {
            m,
            sigma: (0..n).collect(),
            a: alloc::vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn phases(&self) -> &[usize] {
        &self.a
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s) && self.a.iter().all(|&v| v == 0)
    }

    pub fn compose(&self, other: &WreathElement) -> Result<WreathElement> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::InvalidInput(
                "wreath elements of different groups".into(),
            ));
        }
        let sigma = other.sigma.iter().map(|&j| self.sigma[j]).collect();
        let a = (0..self.n())
            .map(|j| (self.a[other.sigma[j]] + other.a[j]) % self.m)
            .collect();
        Ok(WreathElement {
            m: self.m,
            sigma,
            a,
        })
    }

    pub fn inverse(&self) -> WreathElement {
        let n = self.n();
        let mut sigma = alloc::vec![0; n];
        for (j, &s) in self.sigma.iter().enumerate() {
            sigma[s] = j;
        }
        let a = (0..n)
            .map(|j| (self.m - self.a[sigma[j]]) % self.m)
            .collect();
        WreathElement {
            m: self.m,
            sigma,
            a,
        }
    }

    /// The gauge element `(P D^0, P D^1, ..., P D^{m-1})` with `D = diag(zeta)`.
    pub fn to_gauge(&self) -> GaugeElement {
        let n = self.n();
        let shape = QuiverShape::new(self.m, n).expect("validated at construction");
        let g = (0..self.m)
            .map(|k| {
                let mut mat = SquareMatrix::zeros(n);
                for j in 0..n {
                    mat[(self.sigma[j], j)] = root_of_unity(self.m, self.a[j] * k);
                }
                mat
            })
            .collect();
        GaugeElement::new(shape, g).expect("shape matches by construction")
    }

    /// Acts on `L` by gauging the embedded point and reading the diagonal back.
    pub fn act_on_l(&self, l: &LPoint) -> Result<LPoint> {
        self.act_on_l_with(l, &Tolerances::DEFAULT)
    }

    pub fn act_on_l_with(&self, l: &LPoint, tol: &Tolerances) -> Result<LPoint> {
        self.check_n(l.n())?;
        let q = act_gauge(&self.to_gauge(), &embed_l(l, self.m)?)?;
        let scale = l.z.iter().map(|z| z.norm()).fold(1.0, f64::max);
        Ok(LPoint::new(read_diagonal(q.x(), scale, tol)?))
    }

    pub fn act_on_ll(&self, l: &LLPoint) -> Result<LLPoint> {
        self.act_on_ll_with(l, &Tolerances::DEFAULT)
    }

    pub fn act_on_ll_with(&self, l: &LLPoint, tol: &Tolerances) -> Result<LLPoint> {
        self.check_n(l.n())?;
        let q = act_gauge_double(&self.to_gauge(), &embed_ll(l, self.m)?)?;
        let scale =
            l.z.iter()
                .chain(&l.zp)
                .map(|z| z.norm())
                .fold(1.0, f64::max);
        let z = read_diagonal(q.x(), scale, tol)?;
        let zp = read_diagonal(q.y(), scale, tol)?;
        LLPoint::new(z, zp)
    }

    /// The coordinate map of the action, read off basis vectors.
    pub fn monomial_map(&self, rep: Representation) -> Result<MonomialMap> {
        let n = self.n();
        let dim = rep.dim(n);
        let mut columns = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut e = alloc::vec![Complex::new(0.0, 0.0); dim];
            e[k] = Complex::new(1.0, 0.0);
            let image = match rep {
                Representation::L => self.act_on_l(&LPoint::new(e))?.z,
                Representation::LL => {
                    let zp = e.split_off(n);
                    let out = self.act_on_ll(&LLPoint::new(e, zp)?)?;
                    out.z.into_iter().chain(out.zp).collect()
                }
            };
            columns.push(image);
        }
        MonomialMap::from_columns(self.m, &columns)
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: n,
            });
        }
        Ok(())
    }
}

/// Diagonal of the first component, after checking that every component
/// equals that same diagonal matrix.
fn read_diagonal(mats: &[SquareMatrix], scale: f64, tol: &Tolerances) -> Result<Vec<Complex>> {
    let d = mats[0].diagonal();
    let target = SquareMatrix::from_diagonal(&d);
    let residual = mats.iter().map(|a| a.distance(&target)).fold(0.0, f64::max);
    if residual > tol.stability * scale {
        return Err(Error::StabilityViolation { residual });
    }
    Ok(d)
}

/// A linear map `out[j] = omega^{phase[j]} * in[source[j]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    pub m: usize,
    pub source: Vec<usize>,
    pub phase: Vec<usize>,
}

impl MonomialMap {
    /// Reads a monomial matrix given by columns, requiring one unit-modulus
    /// root of unity per row and column.
    pub fn from_columns(m: usize, columns: &[Vec<Complex>]) -> Result<Self> {
        let dim = columns.len();
        const EPS: f64 = 1e-9;
        let mut source = alloc::vec![usize::MAX; dim];
        let mut phase = alloc::vec![0; dim];
        for (k, col) in columns.iter().enumerate() {
            let mut hits = 0;
            for (j, &v) in col.iter().enumerate() {
                if v.norm() <= EPS {
                    continue;
                }
                hits += 1;
                let turns = v.arg() * m as f64 / (2.0 * PI);
                let e = (libm::round(turns) as i64).rem_euclid(m as i64) as usize;
                let residual = (v - root_of_unity(m, e)).norm();
                if residual > EPS || source[j] != usize::MAX {
                    return Err(Error::StabilityViolation { residual });
                }
                source[j] = k;
                phase[j] = e;
            }
            if hits != 1 {
                return Err(Error::StabilityViolation {
                    residual: hits as f64,
                });
            }
        }
        Ok(Self { m, source, phase })
    }

    pub fn dim(&self) -> usize {
        self.source.len()
    }

    pub fn apply(&self, v: &[Complex]) -> Vec<Complex> {
        (0..self.dim())
            .map(|j| root_of_unity(self.m, self.phase[j]) * v[self.source[j]])
            .collect()
    }

    pub fn to_matrix(&self) -> SquareMatrix {
        let mut mat = SquareMatrix::zeros(self.dim());
        for j in 0..self.dim() {
            mat[(j, self.source[j])] = root_of_unity(self.m, self.phase[j]);
        }
        mat
    }
}

/// `n! * m^n`.
pub fn group_order(n: usize, m: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    fact.saturating_mul((m as u128).saturating_pow(n as u32))
}

/// Every element, permutations in lexicographic order and phases as base-`m`
/// counters within each permutation.
pub fn enumerate(n: usize, m: usize) -> Result<Vec<WreathElement>> {
    enumerate_capped(n, m, ENUMERATION_CAP)
}

pub fn enumerate_capped(n: usize, m: usize, cap: u128) -> Result<Vec<WreathElement>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput(
            "wreath group needs n >= 1 and m >= 1".into(),
        ));
    }
    let size = group_order(n, m);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let mut a = alloc::vec![0usize; n];
        loop {
            out.push(WreathElement {
                m,
                sigma: sigma.clone(),
                a: a.clone(),
            });
            if !increment(&mut a, m) {
                break;
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(out)
}

fn increment(a: &mut [usize], m: usize) -> bool {
    for v in a.iter_mut().rev() {
        *v += 1;
        if *v < m {
            return true;
        }
        *v = 0;
    }
    false
}

pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
