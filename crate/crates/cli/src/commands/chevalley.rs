use cyclic_quiver::exact::molien_closed_form_l;
use cyclic_quiver::invariants::{
    char_fingerprint, eval_charpoly_invariant, eval_e_zm, rho_identity_check,
};
use cyclic_quiver::linalg::Complex;
use cyclic_quiver::normal_form::{canonical_distance, to_canonical_l};
use cyclic_quiver::quiver::{
    act_gauge, is_generic, random_gauge, random_l_point, random_rep, LPoint, QuiverShape, RepPoint,
};
use cyclic_quiver::wreath::{enumerate, group_order, molien, Representation, ENUMERATION_CAP};
use serde_json::json;

use super::{near_degenerate, stream_rng, usable, InputError, Stream, Tally, TOL};
use crate::config::RunConfig;
use crate::formats::{molien_coefficients, parse_point, Point};
use crate::report::{Check, Report};

pub const GAUGES_PER_POINT: usize = 10;
/// Canonical forms further apart than this must be told apart by invariants.
pub const SEPARATION_DISTANCE: f64 = 1e-4;
pub const SEPARATION_MARGIN: f64 = 1e-6;

/// With `input`, the supplied point is also put through the canonical-form checks.
pub fn verify_chevalley(cfg: &RunConfig, input: Option<&str>) -> Result<Report, InputError> {
    cfg.validate()?;
    let supplied = match input.map(parse_point).transpose()? {
        None => None,
        Some(Point::Single(p)) => Some(p),
        Some(Point::Double(_)) => {
            return Err(InputError(
                "verify-chevalley takes a point without y".into(),
            ))
        }
    };
    let (n, m) = (cfg.n, cfg.m);
    let shape = QuiverShape::new(m, n)?;
    let mut report = Report::for_config("verify-chevalley", cfg);

    let mut rho = Tally::default();
    for i in 0..cfg.trials {
        let l = random_l_point(n, &mut stream_rng(cfg.seed, Stream::Rho, i));
        for k in 1..=n {
            match rho_identity_check(&l, m, k) {
                Ok(r) => rho.record(r.relative()),
                Err(_) => rho.error(),
            }
        }
    }
    report.push(rho.check("rho_identity", cfg.threshold(1e-9)));

    let mut witness = Tally::default();
    let mut invariance = Tally::default();
    let mut consistency = Tally::default();
    let mut degenerate = 0;
    let mut samples: Vec<(Vec<Complex>, Vec<Complex>)> = Vec::new();
    for i in 0..cfg.trials {
        let mut rng = stream_rng(cfg.seed, Stream::Canonical, i);
        let p = random_rep(shape, &mut rng);
        let Ok(genericity) = is_generic(&p, TOL.generic) else {
            witness.error();
            continue;
        };
        if !usable(&genericity) {
            witness.skipped += 1;
            continue;
        }
        degenerate += usize::from(near_degenerate(&genericity));
        let cf = match to_canonical_l(&p, &TOL) {
            Ok(cf) => cf,
            Err(_) => {
                witness.error();
                continue;
            }
        };
        match cf.witness_residual(&p) {
            Ok(r) => witness.record(r),
            Err(_) => witness.error(),
        }
        let l = LPoint::new(cf.z.clone());
        for k in 1..=n {
            let lhs = eval_charpoly_invariant(k, &p)?;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = eval_e_zm(k, &l, m)? * sign;
            consistency.record((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
        for _ in 0..GAUGES_PER_POINT {
            let moved = random_gauge(shape, &mut rng, &TOL).and_then(|g| act_gauge(&g, &p));
            match moved.and_then(|q| to_canonical_l(&q, &TOL)) {
                Ok(other) => invariance.record(canonical_distance(&cf.z, &other.z)),
                Err(_) => invariance.error(),
            }
        }
        samples.push((cf.z, char_fingerprint(&p)));
    }
    invariance.skipped = witness.skipped;
    report.push(witness.check("witness_soundness", cfg.threshold(1e-7)));
    report.push(invariance.check("orbit_invariance", cfg.threshold(1e-6)));
    report.push(consistency.check("canonical_matches_charpoly", cfg.threshold(1e-7)));
    if witness.skipped > 0 {
        report.warn(format!(
            "{} samples skipped as non-generic or on the principal-root branch cut",
            witness.skipped
        ));
    }
    if degenerate > 0 {
        report.warn(format!(
            "{degenerate} samples have genericity margins within 10x of tolerance"
        ));
    }

    let mut pairs = 0;
    let mut violations = 0;
    for (a, (za, fa)) in samples.iter().enumerate() {
        for (zb, fb) in &samples[a + 1..] {
            if canonical_distance(za, zb) <= SEPARATION_DISTANCE {
                continue;
            }
            pairs += 1;
            let scale = fa.iter().chain(fb).map(|v| v.norm()).fold(1.0, f64::max);
            let gap = fa
                .iter()
                .zip(fb)
                .map(|(u, v)| (u - v).norm())
                .fold(0.0, f64::max);
            if gap <= SEPARATION_MARGIN * scale {
                violations += 1;
            }
        }
    }
    report.push(Check::flag(
        "separation",
        violations == 0,
        format!(
            "{pairs} pairs with distinct canonical forms, {violations} not separated by invariants"
        ),
    ));

    if let Some(p) = &supplied {
        supplied_point(p, cfg, &mut report)?;
    }

    let mut result = json!({});
    if group_order(n, m) <= ENUMERATION_CAP {
        let series = molien(&enumerate(n, m)?, Representation::L, cfg.max_degree)?;
        let closed = molien_closed_form_l(n, m, cfg.max_degree);
        report.push(Check::flag(
            "hilbert_series",
            series == closed,
            format!(
                "Molien series against prod 1/(1 - t^(mk)) through degree {}",
                cfg.max_degree
            ),
        ));
        result["hilbert_series"] = json!(molien_coefficients(&series));
    } else {
        report.warn("group too large to enumerate; Hilbert series check skipped");
    }
    report.result = Some(result);
    Ok(report)
}

fn supplied_point(p: &RepPoint, cfg: &RunConfig, report: &mut Report) -> Result<(), InputError> {
    let g = is_generic(p, TOL.generic)?;
    if !g.generic {
        report.push(Check::flag(
            "input_generic",
            false,
            "supplied point is not generic",
        ));
        return Ok(());
    }
    let cf = to_canonical_l(p, &TOL)?;
    report.push(Check::bound(
        "input_witness_soundness",
        cf.witness_residual(p)?,
        cfg.threshold(1e-7),
    ));
    let mut invariance = Tally::default();
    for i in 0..GAUGES_PER_POINT {
        let mut rng = stream_rng(cfg.seed, Stream::Input, i);
        match random_gauge(p.shape(), &mut rng, &TOL)
            .and_then(|g| act_gauge(&g, p))
            .and_then(|q| to_canonical_l(&q, &TOL))
        {
            Ok(other) => invariance.record(canonical_distance(&cf.z, &other.z)),
            Err(_) => invariance.error(),
        }
    }
    report.push(invariance.check("input_orbit_invariance", cfg.threshold(1e-6)));
    Ok(())
}
