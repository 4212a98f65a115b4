//! Invariant functions on both sides of the restriction maps.
//!
//! On the quiver side: coefficients of the characteristic polynomial of the
//! cycle product, and traces of closed paths in the doubled quiver. On the
//! diagonal side: `e_k(z_1^m, ..., z_n^m)` and `p_{r,s} = sum_i z_i^r z'_i^s`.
//! Restricting a quiver invariant to the diagonal slice must reproduce the
//! matching diagonal invariant; the `*_identity_check` functions measure
//! that.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Complex, SquareMatrix};
use crate::quiver::{embed_l, embed_ll, DoubleRepPoint, LLPoint, LPoint, QuiverShape, RepPoint};
use crate::tolerance::Tolerances;

/// Coefficient index `k` in `1..=n` of the cycle-product characteristic polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharPolyInvariant {
    k: usize,
}

impl CharPolyInvariant {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidInput(alloc::format!(
                "charpoly index {k} outside 1..={n}"
            )));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, p: &RepPoint) -> Result<Complex> {
        eval_charpoly_invariant(self.k, p)
    }
}

/// A closed path with `r` forward and `s` backward steps based at the first vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceWord {
    r: usize,
    s: usize,
    m: usize,
}

impl TraceWord {
    pub fn new(r: usize, s: usize, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if r + s == 0 {
            return Err(Error::InvalidInput("trace word must be nonempty".into()));
        }
        if r % m != s % m {
            return Err(Error::PathClosureError { r, s, m });
        }
        Ok(Self { r, s, m })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.r + self.s
    }

    pub fn eval(&self, p: &DoubleRepPoint) -> Result<Complex> {
        eval_trace_word(self, p)
    }
}

/// All words with `1 <= r + s <= max_len` and `r ≡ s (mod m)`, by degree then `r`.
pub fn trace_word_panel(m: usize, max_len: usize) -> Vec<TraceWord> {
    let mut out = Vec::new();
    for d in 1..=max_len {
        for r in 0..=d {
            if let Ok(w) = TraceWord::new(r, d - r, m) {
                out.push(w);
            }
        }
    }
    out
}

/// Coefficient of `t^{n-k}` in `det(tI - x_m ... x_1)`, i.e. `(-1)^k e_k(spectrum)`.
pub fn eval_charpoly_invariant(k: usize, p: &RepPoint) -> Result<Complex> {
    let n = p.shape().n();
    CharPolyInvariant::new(k, n)?;
    Ok(p.cycle_product().charpoly().coeffs()[n - k])
}

/// All char-poly invariants `k = 1..=n`.
pub fn char_fingerprint(p: &RepPoint) -> Vec<Complex> {
    let n = p.shape().n();
    let coeffs = p.cycle_product().charpoly().coeffs().to_vec();
    (1..=n).map(|k| coeffs[n - k]).collect()
}

/// Product along the path `x`-steps first, then `y`-steps, starting at the
/// first vertex; returns the matrix and the vertex where the path ends.
///
/// An `x`-step at vertex `v` uses `x[v]` and moves to `v + 1`; a `y`-step at
/// vertex `v` uses `y[v - 1]` and moves to `v - 1`.
fn walk(r: usize, s: usize, p: &DoubleRepPoint) -> (SquareMatrix, usize) {
    let shape = p.shape();
    let mut acc = SquareMatrix::identity(shape.n());
    let mut v = 0;
    for _ in 0..r {
        acc = &p.x()[v] * &acc;
        v = shape.next(v);
    }
    for _ in 0..s {
        let arrow = shape.prev(v);
        acc = &p.y()[arrow] * &acc;
        v = arrow;
    }
    (acc, v)
}

/// `Tr(y_1 ... y_j  x_j ... x_1)` with `r` x-factors and `s` y-factors.
pub fn eval_trace_word(w: &TraceWord, p: &DoubleRepPoint) -> Result<Complex> {
    if w.m != p.shape().m() {
        return Err(Error::InvalidInput(
            "trace word and point disagree on m".into(),
        ));
    }
    let (acc, end) = walk(w.r, w.s, p);
    if end != 0 {
        return Err(Error::PathClosureError {
            r: w.r,
            s: w.s,
            m: w.m,
        });
    }
    Ok(acc.trace())
}

/// Trace-word values over [`trace_word_panel`].
pub fn double_fingerprint(p: &DoubleRepPoint, max_len: usize) -> Result<Vec<Complex>> {
    trace_word_panel(p.shape().m(), max_len)
        .iter()
        .map(|w| eval_trace_word(w, p))
        .collect()
}

/// Default panel length `2m + 2`.
pub fn default_panel_len(m: usize) -> usize {
    2 * m + 2
}

fn elementary_symmetric(values: &[Complex], k: usize) -> Complex {
    let mut e = alloc::vec![Complex::zero(); k + 1];
    e[0] = Complex::new(1.0, 0.0);
    for &v in values {
        for j in (1..=k).rev() {
            let prev = e[j - 1];
            e[j] += prev * v;
        }
    }
    e[k]
}

fn real_elementary_symmetric(values: &[f64], k: usize) -> f64 {
    let mut e = alloc::vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[k]
}

/// `e_k(z_1^m, ..., z_n^m)`.
pub fn eval_e_zm(k: usize, l: &LPoint, m: usize) -> Result<Complex> {
    CharPolyInvariant::new(k, l.n())?;
    let powers: Vec<Complex> = l.z.iter().map(|z| z.powu(m as u32)).collect();
    Ok(elementary_symmetric(&powers, k))
}

/// `sum_i z_i^r z'_i^s`.
pub fn eval_p_rs(r: usize, s: usize, l: &LLPoint) -> Complex {
    l.z.iter().zip(&l.zp).fold(Complex::zero(), |acc, (z, zp)| {
        acc + z.powu(r as u32) * zp.powu(s as u32)
    })
}

/// An absolute residual and the scale it should be compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub residual: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        self.residual / self.scale
    }

    pub fn within(&self, factor: f64) -> bool {
        self.residual <= factor * self.scale
    }
}

/// `|charpoly coefficient - (-1)^k e_k(z^m)|` at `embed_l(l)`, with scale
/// `max(1, e_k(|z|^m))`.
pub fn rho_identity_check(l: &LPoint, m: usize, k: usize) -> Result<Residual> {
    let lhs = eval_charpoly_invariant(k, &embed_l(l, m)?)?;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = eval_e_zm(k, l, m)? * sign;
    let abs: Vec<f64> = l.z.iter().map(|z| libm::pow(z.norm(), m as f64)).collect();
    Ok(Residual {
        residual: (lhs - rhs).norm(),
        scale: real_elementary_symmetric(&abs, k).max(1.0),
    })
}

/// `|Tr(word) - p_{r,s}|` at `embed_ll(l)`, with scale `max(1, sum |z|^r |z'|^s)`.
pub fn phi_identity_check(l: &LLPoint, m: usize, r: usize, s: usize) -> Result<Residual> {
    let word = TraceWord::new(r, s, m)?;
    let lhs = eval_trace_word(&word, &embed_ll(l, m)?)?;
    let rhs = eval_p_rs(r, s, l);
    let scale =
        l.z.iter()
            .zip(&l.zp)
            .map(|(z, zp)| libm::pow(z.norm(), r as f64) * libm::pow(zp.norm(), s as f64))
            .sum::<f64>()
            .max(1.0);
    Ok(Residual {
        residual: (lhs - rhs).norm(),
        scale,
    })
}

/// Assembles `n` points of the rank-one zero set into one diagonal point:
/// the `k`-th input supplies the `(k, k)` entries of all `2m` matrices.
pub fn restrict_to_product(points: &[DoubleRepPoint], tol: &Tolerances) -> Result<DoubleRepPoint> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("no points to assemble".into()))?;
    let m = first.shape().m();
    for p in points {
        if p.shape().n() != 1 || p.shape().m() != m {
            return Err(Error::InvalidInput(
                "inputs must be rank-one points sharing m".into(),
            ));
        }
        let residual = p.relative_moment_residual();
        if residual > tol.moment {
            return Err(Error::ResidualTooLarge {
                residual,
                threshold: tol.moment,
            });
        }
    }
    let shape = QuiverShape::new(m, points.len())?;
    let diag = |pick: &dyn Fn(&DoubleRepPoint) -> Complex| -> SquareMatrix {
        SquareMatrix::from_diagonal(&points.iter().map(pick).collect::<Vec<_>>())
    };
    let x = (0..m)
        .map(|i| diag(&|p: &DoubleRepPoint| p.x()[i][(0, 0)]))
        .collect();
    let y = (0..m)
        .map(|i| diag(&|p: &DoubleRepPoint| p.y()[i][(0, 0)]))
        .collect();
    DoubleRepPoint::new(shape, x, y)
}

/// `|word(assembled) - sum_k word(points[k])|`, scale `max(1, sum_k |word(points[k])|)`.
pub fn diagram_check(
    points: &[DoubleRepPoint],
    word: &TraceWord,
    tol: &Tolerances,
) -> Result<Residual> {
    let assembled = restrict_to_product(points, tol)?;
    let lhs = eval_trace_word(word, &assembled)?;
    let mut rhs = Complex::zero();
    let mut scale = 0.0;
    for p in points {
        let v = eval_trace_word(word, p)?;
        rhs += v;
        scale += v.norm();
    }
    Ok(Residual {
        residual: (lhs - rhs).norm(),
        scale: scale.max(1.0),
    })
}
