use cyclic_quiver::exact::{
    generation_check, minimal_generator_cutoff, monomial_count, MONOMIAL_CAP, REYNOLDS_CAP,
};
use cyclic_quiver::invariants::{
    default_panel_len, diagram_check, phi_identity_check, trace_word_panel,
};
use cyclic_quiver::normal_form::{
    canonical_diagonal_pair, canonical_distance, canonicalize_double, DoubleCanonical,
};
use cyclic_quiver::quiver::{is_generic, random_ll_point, random_z_point, QuiverShape};
use cyclic_quiver::wreath::{group_order, Representation};
use serde_json::json;

use super::{near_degenerate, stream_rng, usable, InputError, Stream, Tally, TOL};
use crate::config::RunConfig;
use crate::formats::{parse_point, GenerationReportJson, Point};
use crate::report::{Check, Report};

/// Longest trace word in the identity sweeps.
pub fn word_length(m: usize) -> usize {
    default_panel_len(m).max(6)
}

/// Fraction of generic samples allowed to miss plant-and-recover.
pub const RECOVERY_SLACK: f64 = 0.01;

/// With `input`, the supplied point is also checked for the moment equations
/// and canonicalized.
pub fn verify_double(cfg: &RunConfig, input: Option<&str>) -> Result<Report, InputError> {
    cfg.validate()?;
    let supplied = match input.map(parse_point).transpose()? {
        None => None,
        Some(Point::Double(p)) => Some(p),
        Some(Point::Single(_)) => {
            return Err(InputError("verify-double takes a point with y".into()))
        }
    };
    let (n, m) = (cfg.n, cfg.m);
    let shape = QuiverShape::new(m, n)?;
    let mut report = Report::for_config("verify-double", cfg);
    let words = trace_word_panel(m, word_length(m));

    let mut phi = Tally::default();
    for i in 0..cfg.trials {
        let l = random_ll_point(n, &mut stream_rng(cfg.seed, Stream::Phi, i));
        for w in &words {
            match phi_identity_check(&l, m, w.r(), w.s()) {
                Ok(r) => phi.record(r.relative()),
                Err(_) => phi.error(),
            }
        }
    }
    report.push(phi.check("phi_identity", cfg.threshold(1e-9)));

    let mut moment = Tally::default();
    let mut recovery = Tally::default();
    let mut generic = 0usize;
    let mut missed = 0usize;
    let mut degenerate = 0usize;
    for i in 0..cfg.trials {
        let mut rng = stream_rng(cfg.seed, Stream::Saturation, i);
        let Ok((p, planted)) = random_z_point(shape, &mut rng, &TOL) else {
            moment.error();
            continue;
        };
        moment.record(p.relative_moment_residual());
        match is_generic(&p.x_part(), TOL.generic) {
            Ok(g) if usable(&g) => degenerate += usize::from(near_degenerate(&g)),
            _ => {
                recovery.skipped += 1;
                continue;
            }
        }
        generic += 1;
        let expected = canonical_diagonal_pair(&planted, m);
        match canonicalize_double(&p, &TOL) {
            Ok(DoubleCanonical::Diagonal(cf)) => {
                let d = canonical_distance(&cf.z, &expected.z)
                    .max(canonical_distance(&cf.zp, &expected.zp));
                if d <= cfg.threshold(1e-6) {
                    recovery.record(d);
                } else {
                    missed += 1;
                }
            }
            _ => missed += 1,
        }
    }
    report.push(moment.check("moment_residual", cfg.threshold(1e-10)));
    let rate = if generic == 0 {
        1.0
    } else {
        missed as f64 / generic as f64
    };
    report.push(
        Check::bound("plant_and_recover_misses", rate, RECOVERY_SLACK).with_detail(format!(
            "{missed} of {generic} generic samples not recovered to tolerance, {} skipped",
            recovery.skipped
        )),
    );
    if degenerate > 0 {
        report.warn(format!(
            "{degenerate} samples have genericity margins within 10x of tolerance"
        ));
    }

    let mut diagram = Tally::default();
    let rank_one = QuiverShape::new(m, 1)?;
    for i in 0..cfg.trials {
        let mut rng = stream_rng(cfg.seed, Stream::Diagram, i);
        let points: Result<Vec<_>, _> = (0..n)
            .map(|_| random_z_point(rank_one, &mut rng, &TOL).map(|(p, _)| p))
            .collect();
        let Ok(points) = points else {
            diagram.error();
            continue;
        };
        for w in &words {
            match diagram_check(&points, w, &TOL) {
                Ok(r) => diagram.record(r.relative()),
                Err(_) => diagram.error(),
            }
        }
    }
    report.push(diagram.check("diagram_identity", cfg.threshold(1e-10)));

    if let Some(p) = &supplied {
        let residual = p.relative_moment_residual();
        report.push(Check::bound(
            "input_moment_residual",
            residual,
            cfg.threshold(1e-10),
        ));
        if residual <= TOL.moment && p.shape().n() > 1 {
            match canonicalize_double(p, &TOL) {
                Ok(DoubleCanonical::Diagonal(_)) => {}
                Ok(DoubleCanonical::NonDiagonalResidue { residue, .. }) => report.warn(format!(
                    "supplied point is off the saturation of L x L (residue {residue:.3e})"
                )),
                Err(e) => report.warn(format!("supplied point not canonicalized: {e}")),
            }
        }
    }

    let mut generation = Vec::new();
    let mut minimal = Vec::new();
    if group_order(n, m) <= REYNOLDS_CAP && monomial_count(2 * n, cfg.max_degree) <= MONOMIAL_CAP {
        for d in 0..=cfg.max_degree {
            let g = generation_check(n, m, d, d, Representation::LL)?;
            report.push(Check::flag(
                format!("generation_d{d}"),
                g.verdict,
                format!("span {} of {} invariants", g.span_dim, g.molien_dim),
            ));
            generation.push(GenerationReportJson::from(&g));
            minimal.push(minimal_generator_cutoff(n, m, d, Representation::LL)?);
        }
    } else {
        report.warn("exact generation check skipped: group or monomial basis over the cap");
    }
    report.result = Some(json!({ "generation": generation, "minimal_cutoff": minimal }));
    Ok(report)
}
