use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::CycloScalar;
use super::poly::{monomial_count, monomials_of_degree, Monomial, MultiPoly};
use super::rank::polynomial_rank;
use crate::error::{Error, Result};
use crate::linalg::{Complex, SquareMatrix};
use crate::rng::{complex_gaussian, trial_rng};
use crate::wreath::{
    enumerate_capped, group_order, molien, next_permutation, MolienSeries, MonomialMap,
    Representation,
};

/// Largest group averaged by [`reynolds`].
pub const REYNOLDS_CAP: u128 = 100_000;
/// Largest monomial basis or generator-product set built at one degree.
pub const MONOMIAL_CAP: u128 = 100_000;

/// Averaging projector onto the invariants of a representation of `W_n`.
#[derive(Debug, Clone)]
pub struct Reynolds {
    n: usize,
    m: usize,
    rep: Representation,
    maps: Vec<MonomialMap>,
}

impl Reynolds {
    pub fn new(n: usize, m: usize, rep: Representation) -> Result<Self> {
        let order = group_order(n, m);
        if order > REYNOLDS_CAP {
            return Err(Error::TooLarge {
                size: order,
                cap: REYNOLDS_CAP,
            });
        }
        let maps = enumerate_capped(n, m, REYNOLDS_CAP)?
            .iter()
            .map(|w| w.monomial_map(rep))
            .collect::<Result<_>>()?;
        Ok(Self { n, m, rep, maps })
    }

    pub fn nvars(&self) -> usize {
        self.rep.dim(self.n)
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        if p.m() != self.m {
            return Err(Error::InvalidInput(
                "polynomial over a different cyclotomic field".into(),
            ));
        }
        let order = BigRational::new(BigInt::one(), BigInt::from(self.maps.len()));
        let mut out = MultiPoly::zero(self.m, self.nvars());
        for (mono, c) in p.terms() {
            // how often each image occurs with each power of omega
            let mut hits: BTreeMap<Monomial, Vec<u64>> = BTreeMap::new();
            for map in &self.maps {
                let (phase, image) = mono.substitute(map);
                hits.entry(image).or_insert_with(|| vec![0; self.m])[phase] += 1;
            }
            for (image, counts) in hits {
                let sum = counts
                    .iter()
                    .map(|&k| BigRational::from_integer(BigInt::from(k)))
                    .collect();
                let weight = CycloScalar::reduce(self.m, sum);
                if !weight.is_zero() {
                    out.add_term(image, (c * &weight).scale(&order));
                }
            }
        }
        Ok(out)
    }
}

/// `(1/|W_n|) sum_w w . p`.
pub fn reynolds(p: &MultiPoly, n: usize, m: usize, rep: Representation) -> Result<MultiPoly> {
    Reynolds::new(n, m, rep)?.apply(p)
}

fn check_monomials(nvars: usize, d: usize) -> Result<()> {
    let count = monomial_count(nvars, d);
    if count > MONOMIAL_CAP {
        return Err(Error::TooLarge {
            size: count,
            cap: MONOMIAL_CAP,
        });
    }
    Ok(())
}

/// Dimension of the degree-`d` invariants, as the exact rank of the
/// Reynolds images of all degree-`d` monomials.
pub fn invariant_dim_bruteforce(
    n: usize,
    m: usize,
    rep: Representation,
    d: usize,
) -> Result<usize> {
    let op = Reynolds::new(n, m, rep)?;
    check_monomials(op.nvars(), d)?;
    let images = monomials_of_degree(op.nvars(), d as u32)
        .into_iter()
        .map(|mono| op.apply(&MultiPoly::monomial(m, mono, CycloScalar::one(m))))
        .collect::<Result<Vec<_>>>()?;
    Ok(polynomial_rank(&images))
}

/// A generator of the invariant ring with its degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: GeneratorLabel,
    pub poly: MultiPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorLabel {
    /// `e_k(z_1^m, ..., z_n^m)`.
    Elementary { k: usize },
    /// `p_{r,s} = sum_i z_i^r z'_i^s`.
    PowerSum { r: u32, s: u32 },
}

impl Generator {
    pub fn degree(&self) -> usize {
        match self.label {
            GeneratorLabel::Elementary { .. } => self.poly.total_degree().unwrap_or(0) as usize,
            GeneratorLabel::PowerSum { r, s } => (r + s) as usize,
        }
    }
}

/// The classical generators of degree at most `cutoff`: `e_k(z^m)` for `L`,
/// `p_{r,s}` with `r = s mod m` for `L x L`.
pub fn generators(n: usize, m: usize, rep: Representation, cutoff: usize) -> Vec<Generator> {
    match rep {
        Representation::L => (1..=n)
            .filter(|k| k * m <= cutoff)
            .map(|k| Generator {
                label: GeneratorLabel::Elementary { k },
                poly: MultiPoly::elementary_in_powers(m, n, k, m as u32),
            })
            .collect(),
        Representation::LL => {
            let mut out = Vec::new();
            for total in 1..=cutoff as u32 {
                for r in (0..=total).rev() {
                    let s = total - r;
                    if (r as i64 - s as i64).rem_euclid(m as i64) == 0 {
                        out.push(Generator {
                            label: GeneratorLabel::PowerSum { r, s },
                            poly: MultiPoly::power_sum_pair(m, n, r, s),
                        });
                    }
                }
            }
            out
        }
    }
}

/// All products of generators (with repetition) of total degree exactly `d`.
pub fn generator_products(
    gens: &[Generator],
    d: usize,
    nvars: usize,
    m: usize,
) -> Result<Vec<MultiPoly>> {
    fn go(
        gens: &[Generator],
        start: usize,
        left: usize,
        acc: &MultiPoly,
        out: &mut Vec<MultiPoly>,
    ) -> Result<()> {
        if left == 0 {
            if out.len() as u128 >= MONOMIAL_CAP {
                return Err(Error::TooLarge {
                    size: out.len() as u128 + 1,
                    cap: MONOMIAL_CAP,
                });
            }
            out.push(acc.clone());
            return Ok(());
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            let deg = g.degree();
            if deg == 0 || deg > left {
                continue;
            }
            go(gens, i, left - deg, &acc.mul(&g.poly), out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(gens, 0, d, &MultiPoly::one(m, nvars), &mut out)?;
    Ok(out)
}

/// Degree-by-degree comparison of the span of generator products against
/// the Molien count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub cutoff: usize,
    pub rep: Representation,
    pub molien_dim: usize,
    pub span_dim: usize,
    pub verdict: bool,
}

/// Molien series of `rep` up to `max_degree`, by the group average.
pub fn molien_series(
    n: usize,
    m: usize,
    rep: Representation,
    max_degree: usize,
) -> Result<MolienSeries> {
    let elements = enumerate_capped(n, m, REYNOLDS_CAP)?;
    molien(&elements, rep, max_degree)
}

fn coefficient_as_usize(series: &MolienSeries, d: usize) -> Result<usize> {
    series
        .coefficient(d)
        .filter(|c| c.is_integer() && !c.is_negative())
        .and_then(|c| c.to_integer().to_usize())
        .ok_or(Error::ReconstructionFailure {
            degree: d,
            deviation: f64::NAN,
        })
}

pub fn generation_check(
    n: usize,
    m: usize,
    d: usize,
    cutoff: usize,
    rep: Representation,
) -> Result<GenerationReport> {
    let series = molien_series(n, m, rep, d)?;
    generation_check_against(n, m, d, cutoff, rep, coefficient_as_usize(&series, d)?)
}

fn generation_check_against(
    n: usize,
    m: usize,
    d: usize,
    cutoff: usize,
    rep: Representation,
    molien_dim: usize,
) -> Result<GenerationReport> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    let nvars = rep.dim(n);
    check_monomials(nvars, d)?;
    let products = generator_products(&generators(n, m, rep, cutoff), d, nvars, m)?;
    let span_dim = polynomial_rank(&products);
    if span_dim > molien_dim {
        return Err(Error::InvariantViolation(alloc::format!(
            "span of generator products ({span_dim}) exceeds the invariant dimension ({molien_dim}) at degree {d}"
        )));
    }
    Ok(GenerationReport {
        n,
        m,
        d,
        cutoff,
        rep,
        molien_dim,
        span_dim,
        verdict: span_dim == molien_dim,
    })
}

/// Smallest cutoff `R <= d` whose generator products span the degree-`d`
/// invariants, or `None`.
pub fn minimal_generator_cutoff(
    n: usize,
    m: usize,
    d: usize,
    rep: Representation,
) -> Result<Option<usize>> {
    let series = molien_series(n, m, rep, d)?;
    let molien_dim = coefficient_as_usize(&series, d)?;
    for cutoff in 0..=d {
        if generation_check_against(n, m, d, cutoff, rep, molien_dim)?.verdict {
            return Ok(Some(cutoff));
        }
    }
    Ok(None)
}

/// Coefficients of `prod_{k=1..n} 1/(1 - t^{mk})`.
pub fn molien_closed_form_l(n: usize, m: usize, max_degree: usize) -> MolienSeries {
    let mut c = vec![BigInt::zero(); max_degree + 1];
    c[0] = BigInt::one();
    for k in 1..=n {
        let step = m * k;
        for d in step..=max_degree {
            let prev = c[d - step].clone();
            c[d] += prev;
        }
    }
    MolienSeries {
        coefficients: c.into_iter().map(BigRational::from_integer).collect(),
    }
}

/// Ratio of the Jacobian determinant of `z -> (e_k(z^m))_k` to
/// `(z_1 ... z_n)^{m-1} prod_{i<j} (z_i^m - z_j^m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianReport {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub constant: Complex,
    pub spread: f64,
    pub resampled: usize,
    /// Exact constant from the symbolic expansion, for `n <= EXACT_JACOBIAN_MAX_N`.
    pub exact: Option<BigRational>,
}

impl JacobianReport {
    /// Whether the exact constant has magnitude `m^n`, the value predicted by
    /// factoring the Jacobian through `w_i = z_i^m`.
    pub fn exact_matches_chain_rule(&self) -> Option<bool> {
        let expected = BigRational::from_integer(BigInt::from(self.m).pow(self.n as u32));
        self.exact.as_ref().map(|c| c.abs() == expected)
    }
}

pub const EXACT_JACOBIAN_MAX_N: usize = 3;

/// Relative gap below which a sample point is treated as degenerate.
const DEGENERATE: f64 = 1e-6;

fn elementary(values: &[Complex], k: usize) -> Complex {
    let mut e = vec![Complex::new(0.0, 0.0); k + 1];
    e[0] = Complex::new(1.0, 0.0);
    for &v in values {
        for j in (1..=k).rev() {
            let lower = e[j - 1];
            e[j] += lower * v;
        }
    }
    e[k]
}

/// `(det J, formula)` at `z`, with `J[k][j] = e_k(w without w_j) m z_j^{m-1}`.
fn jacobian_at(z: &[Complex], m: usize) -> (Complex, Complex) {
    let n = z.len();
    let w: Vec<Complex> = z.iter().map(|v| v.powu(m as u32)).collect();
    let mut j = SquareMatrix::zeros(n);
    for col in 0..n {
        let others: Vec<Complex> = w
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != col)
            .map(|(_, v)| *v)
            .collect();
        let chain = z[col].powu(m as u32 - 1) * m as f64;
        for row in 0..n {
            j[(row, col)] = elementary(&others, row) * chain;
        }
    }
    let mut formula = z.iter().product::<Complex>().powu(m as u32 - 1);
    for a in 0..n {
        for b in a + 1..n {
            formula *= w[a] - w[b];
        }
    }
    (j.determinant(), formula)
}

fn degenerate(z: &[Complex], m: usize) -> bool {
    let w: Vec<Complex> = z.iter().map(|v| v.powu(m as u32)).collect();
    let scale = w.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let tiny = z.iter().any(|v| v.norm() < DEGENERATE);
    let close =
        (0..w.len()).any(|a| (a + 1..w.len()).any(|b| (w[a] - w[b]).norm() < DEGENERATE * scale));
    tiny || close
}

/// Mean ratio, relative spread and resample count over `trials` random points.
pub fn jacobian_numeric(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<(Complex, f64, usize)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    if trials < 2 {
        return Err(Error::InvalidInput(
            "jacobian check needs at least two trials".into(),
        ));
    }
    const ATTEMPTS: usize = 100;
    let mut ratios = Vec::with_capacity(trials);
    let mut resampled = 0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let z: Vec<Complex> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
            if degenerate(&z, m) {
                resampled += 1;
                continue;
            }
            found = Some(z);
            break;
        }
        let z = found.ok_or(Error::SamplingFailure { attempts: ATTEMPTS })?;
        let (det, formula) = jacobian_at(&z, m);
        ratios.push(det / formula);
    }
    let mean = ratios.iter().sum::<Complex>() / trials as f64;
    let spread = ratios.iter().map(|c| (c - mean).norm()).fold(0.0, f64::max) / mean.norm();
    Ok((mean, spread, resampled))
}

/// Exact constant `c` with `det J = c * formula`, by symbolic expansion.
pub fn jacobian_exact(n: usize, m: usize) -> Result<BigRational> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("n and m must be positive".into()));
    }
    if n > EXACT_JACOBIAN_MAX_N {
        return Err(Error::TooLarge {
            size: n as u128,
            cap: EXACT_JACOBIAN_MAX_N as u128,
        });
    }
    // coefficients are rational, so the trivial field Q(omega_1) = Q suffices
    let entries: Vec<Vec<MultiPoly>> = (1..=n)
        .map(|k| {
            let e = MultiPoly::elementary_in_powers(1, n, k, m as u32);
            (0..n).map(|j| e.derivative(j)).collect()
        })
        .collect();
    let det = leibniz(&entries, n);

    let mut formula = MultiPoly::one(1, n);
    for i in 0..n {
        formula = formula.mul(&MultiPoly::variable(1, n, i).pow(m as u32 - 1));
    }
    for a in 0..n {
        for b in a + 1..n {
            let za = MultiPoly::variable(1, n, a).pow(m as u32);
            let zb = MultiPoly::variable(1, n, b).pow(m as u32);
            formula = formula.mul(&za.sub(&zb));
        }
    }

    let (lead, f_lead) = formula.leading_term().expect("formula is nonzero");
    let j_lead = det
        .coefficient(lead)
        .cloned()
        .unwrap_or_else(|| CycloScalar::zero(1));
    let c = &j_lead * &f_lead.inverse()?;
    if det != formula.scale(&c) {
        return Err(Error::InvariantViolation(
            "Jacobian is not proportional to the product formula".into(),
        ));
    }
    Ok(c.as_rational().cloned().expect("rational field"))
}

fn leibniz(a: &[Vec<MultiPoly>], n: usize) -> MultiPoly {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = MultiPoly::zero(1, n);
    loop {
        let inversions = (0..n)
            .map(|i| (i + 1..n).filter(|&j| perm[i] > perm[j]).count())
            .sum::<usize>();
        let mut term = MultiPoly::one(1, n);
        for (row, &col) in perm.iter().enumerate() {
            term = term.mul(&a[row][col]);
        }
        det = if inversions % 2 == 0 {
            det.add(&term)
        } else {
            det.sub(&term)
        };
        if !next_permutation(&mut perm) {
            break;
        }
    }
    det
}

pub fn jacobian_check(n: usize, m: usize, trials: usize, seed: u64) -> Result<JacobianReport> {
    let (constant, spread, resampled) = jacobian_numeric(n, m, trials, seed)?;
    let exact = if n <= EXACT_JACOBIAN_MAX_N {
        Some(jacobian_exact(n, m)?)
    } else {
        None
    };
    Ok(JacobianReport {
        n,
        m,
        trials,
        constant,
        spread,
        resampled,
        exact,
    })
}
