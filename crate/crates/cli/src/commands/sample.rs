use clap::ValueEnum;
use cyclic_quiver::quiver::{
    random_l_point, random_ll_point, random_rep, random_z_point, DoubleRepPoint, QuiverShape,
};
use serde_json::{json, Value};

use super::{stream_rng, InputError, Stream, TOL};
use crate::config::RunConfig;
use crate::formats::{LLPointJson, LPointJson, PointJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    /// Gaussian point of the single quiver.
    Rep,
    /// Gaussian point of the doubled quiver, not on the zero set.
    Double,
    /// Diagonal point `z`.
    L,
    /// Diagonal pair `(z, z')`.
    Ll,
    /// Gauge transform of an embedded diagonal pair, with the pair.
    Z,
}

impl SampleKind {
    pub fn name(self) -> &'static str {
        match self {
            SampleKind::Rep => "rep",
            SampleKind::Double => "double",
            SampleKind::L => "l",
            SampleKind::Ll => "ll",
            SampleKind::Z => "z",
        }
    }
}

/// `trials` seeded points of the given kind.
pub fn sample(cfg: &RunConfig, kind: SampleKind) -> Result<Value, InputError> {
    cfg.validate()?;
    let shape = QuiverShape::new(cfg.m, cfg.n)?;
    let mut points = Vec::with_capacity(cfg.trials);
    for i in 0..cfg.trials {
        let mut rng = stream_rng(cfg.seed, Stream::Sample, i);
        let point = match kind {
            SampleKind::Rep => json!(PointJson::from(&random_rep(shape, &mut rng))),
            SampleKind::Double => {
                let x = random_rep(shape, &mut rng).x().to_vec();
                let y = random_rep(shape, &mut rng).x().to_vec();
                json!(PointJson::from(&DoubleRepPoint::new(shape, x, y)?))
            }
            SampleKind::L => json!(LPointJson::from(&random_l_point(cfg.n, &mut rng))),
            SampleKind::Ll => json!(LLPointJson::from(&random_ll_point(cfg.n, &mut rng))),
            SampleKind::Z => {
                let (p, planted) = random_z_point(shape, &mut rng, &TOL)?;
                json!({ "point": PointJson::from(&p), "planted": LLPointJson::from(&planted) })
            }
        };
        points.push(point);
    }
    Ok(json!({ "kind": kind.name(), "config": cfg, "points": points }))
}
