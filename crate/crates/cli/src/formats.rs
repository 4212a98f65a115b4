//! JSON encodings of points, group elements and results.
//!
//! Complex numbers are `[re, im]` pairs and matrices are
//! `{"n": n, "entries": [[re, im], ...]}` in row-major order.

use cyclic_quiver::exact::GenerationReport;
use cyclic_quiver::invariants::{CharPolyInvariant, TraceWord};
use cyclic_quiver::linalg::{Complex, SquareMatrix};
use cyclic_quiver::normal_form::{CanonicalL, CanonicalLL, Z1NormalForm};
use cyclic_quiver::quiver::{DoubleRepPoint, GaugeElement, LLPoint, LPoint, QuiverShape, RepPoint};
use cyclic_quiver::wreath::{MolienSeries, WreathElement};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] cyclic_quiver::Error),
}

pub type Pair = [f64; 2];

pub fn complex_to_pair(c: Complex) -> Pair {
    [c.re, c.im]
}

pub fn pair_to_complex(p: Pair) -> Complex {
    Complex::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Pair>,
}

impl From<&SquareMatrix> for MatrixJson {
    fn from(a: &SquareMatrix) -> Self {
        Self {
            n: a.n(),
            entries: a.entries().iter().copied().map(complex_to_pair).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for SquareMatrix {
    type Error = FormatError;
    fn try_from(j: &MatrixJson) -> Result<Self, FormatError> {
        if j.entries.len() != j.n * j.n {
            return Err(FormatError::Invalid(format!(
                "matrix of size {} needs {} entries, found {}",
                j.n,
                j.n * j.n,
                j.entries.len()
            )));
        }
        Ok(SquareMatrix::from_row_major(
            j.n,
            j.entries.iter().copied().map(pair_to_complex).collect(),
        )?)
    }
}

fn matrices(list: &[MatrixJson]) -> Result<Vec<SquareMatrix>, FormatError> {
    list.iter().map(SquareMatrix::try_from).collect()
}

fn matrix_list(list: &[SquareMatrix]) -> Vec<MatrixJson> {
    list.iter().map(MatrixJson::from).collect()
}

/// A point of `R_n` (no `y`) or of the doubled space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub m: usize,
    pub n: usize,
    pub x: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<MatrixJson>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Single(RepPoint),
    Double(DoubleRepPoint),
}

impl PointJson {
    pub fn decode(&self) -> Result<Point, FormatError> {
        let shape = QuiverShape::new(self.m, self.n)?;
        let x = matrices(&self.x)?;
        check_sizes(&x, shape)?;
        match &self.y {
            None => Ok(Point::Single(RepPoint::new(shape, x)?)),
            Some(y) => {
                let y = matrices(y)?;
                check_sizes(&y, shape)?;
                Ok(Point::Double(DoubleRepPoint::new(shape, x, y)?))
            }
        }
    }
}

fn check_sizes(list: &[SquareMatrix], shape: QuiverShape) -> Result<(), FormatError> {
    if list.len() != shape.m() {
        return Err(FormatError::Invalid(format!(
            "expected {} matrices, found {}",
            shape.m(),
            list.len()
        )));
    }
    if let Some(a) = list.iter().find(|a| a.n() != shape.n()) {
        return Err(FormatError::Invalid(format!(
            "expected {0}x{0} matrices, found size {1}",
            shape.n(),
            a.n()
        )));
    }
    Ok(())
}

impl From<&RepPoint> for PointJson {
    fn from(p: &RepPoint) -> Self {
        Self {
            m: p.shape().m(),
            n: p.shape().n(),
            x: matrix_list(p.x()),
            y: None,
        }
    }
}

impl From<&DoubleRepPoint> for PointJson {
    fn from(p: &DoubleRepPoint) -> Self {
        Self {
            m: p.shape().m(),
            n: p.shape().n(),
            x: matrix_list(p.x()),
            y: Some(matrix_list(p.y())),
        }
    }
}

pub fn parse_point(text: &str) -> Result<Point, FormatError> {
    serde_json::from_str::<PointJson>(text)?.decode()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathJson {
    pub n: usize,
    pub m: usize,
    /// One-based images.
    pub sigma: Vec<usize>,
    pub a: Vec<usize>,
}

impl From<&WreathElement> for WreathJson {
    fn from(w: &WreathElement) -> Self {
        Self {
            n: w.n(),
            m: w.m(),
            sigma: w.sigma().iter().map(|s| s + 1).collect(),
            a: w.phases().to_vec(),
        }
    }
}

impl TryFrom<&WreathJson> for WreathElement {
    type Error = FormatError;
    fn try_from(j: &WreathJson) -> Result<Self, FormatError> {
        if j.sigma.len() != j.n || j.a.len() != j.n {
            return Err(FormatError::Invalid(
                "sigma and a must have n entries".into(),
            ));
        }
        if j.sigma.contains(&0) {
            return Err(FormatError::Invalid("sigma is one-based".into()));
        }
        Ok(WreathElement::new(
            j.m,
            j.sigma.iter().map(|s| s - 1).collect(),
            j.a.clone(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalLJson {
    pub z: Vec<Pair>,
    pub witness: Vec<MatrixJson>,
}

impl From<&CanonicalL> for CanonicalLJson {
    fn from(c: &CanonicalL) -> Self {
        Self {
            z: c.z.iter().copied().map(complex_to_pair).collect(),
            witness: matrix_list(c.witness.components()),
        }
    }
}

impl CanonicalLJson {
    pub fn decode(&self, m: usize) -> Result<CanonicalL, FormatError> {
        let shape = QuiverShape::new(m, self.z.len())?;
        let witness = matrices(&self.witness)?;
        check_sizes(&witness, shape)?;
        Ok(CanonicalL {
            z: self.z.iter().copied().map(pair_to_complex).collect(),
            witness: GaugeElement::new(shape, witness)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanonicalLLJson {
    pub z: Vec<Pair>,
    pub zp: Vec<Pair>,
    pub witness: Vec<MatrixJson>,
}

impl From<&CanonicalLL> for CanonicalLLJson {
    fn from(c: &CanonicalLL) -> Self {
        Self {
            z: c.z.iter().copied().map(complex_to_pair).collect(),
            zp: c.zp.iter().copied().map(complex_to_pair).collect(),
            witness: matrix_list(c.witness.components()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Z1Json {
    pub d: Pair,
    pub e: Pair,
}

impl From<&Z1NormalForm> for Z1Json {
    fn from(z: &Z1NormalForm) -> Self {
        Self {
            d: complex_to_pair(z.d),
            e: complex_to_pair(z.e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LPointJson {
    pub z: Vec<Pair>,
}

impl From<&LPoint> for LPointJson {
    fn from(l: &LPoint) -> Self {
        Self {
            z: l.z.iter().copied().map(complex_to_pair).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LLPointJson {
    pub z: Vec<Pair>,
    pub zp: Vec<Pair>,
}

impl From<&LLPoint> for LLPointJson {
    fn from(l: &LLPoint) -> Self {
        Self {
            z: l.z.iter().copied().map(complex_to_pair).collect(),
            zp: l.zp.iter().copied().map(complex_to_pair).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReportJson {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    #[serde(rename = "R")]
    pub r: usize,
    pub molien_dim: usize,
    pub span_dim: usize,
    pub verdict: bool,
}

impl From<&GenerationReport> for GenerationReportJson {
    fn from(g: &GenerationReport) -> Self {
        Self {
            n: g.n,
            m: g.m,
            d: g.d,
            r: g.cutoff,
            molien_dim: g.molien_dim,
            span_dim: g.span_dim,
            verdict: g.verdict,
        }
    }
}

/// Series coefficients as exact rationals, e.g. `"1"` or `"3/8"`.
pub fn molien_coefficients(series: &MolienSeries) -> Vec<String> {
    series
        .coefficients
        .iter()
        .map(ToString::to_string)
        .collect()
}

/// Invariant descriptor: `{"type": "charpoly", "k": 1}` or
/// `{"type": "traceword", "r": 2, "s": 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InvariantJson {
    Charpoly { k: usize },
    Traceword { r: usize, s: usize },
}

impl From<&CharPolyInvariant> for InvariantJson {
    fn from(c: &CharPolyInvariant) -> Self {
        InvariantJson::Charpoly { k: c.k() }
    }
}

impl From<&TraceWord> for InvariantJson {
    fn from(w: &TraceWord) -> Self {
        InvariantJson::Traceword { r: w.r(), s: w.s() }
    }
}
