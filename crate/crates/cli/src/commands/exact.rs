use cyclic_quiver::exact::{
    generation_check, jacobian_check, minimal_generator_cutoff, molien_closed_form_l,
};
use cyclic_quiver::wreath::{enumerate, molien as molien_series, Representation};
use serde_json::json;

use super::InputError;
use crate::config::RunConfig;
use crate::formats::{complex_to_pair, molien_coefficients, GenerationReportJson};
use crate::report::{Check, Report};

fn rep_name(rep: Representation) -> &'static str {
    match rep {
        Representation::L => "L",
        Representation::LL => "LL",
    }
}

fn echo(command: &str, cfg: &RunConfig, extra: serde_json::Value) -> Report {
    let mut config = serde_json::to_value(cfg).expect("config serializes");
    if let (Some(obj), Some(more)) = (config.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    Report::new(command, config)
}

pub fn molien(cfg: &RunConfig, rep: Representation) -> Result<Report, InputError> {
    cfg.validate()?;
    let mut report = echo("molien", cfg, json!({ "rep": rep_name(rep) }));
    let series = molien_series(&enumerate(cfg.n, cfg.m)?, rep, cfg.max_degree)?;
    report.push(Check::flag(
        "well_formed",
        series.is_well_formed(),
        "constant term 1, no negative coefficients",
    ));
    if rep == Representation::L {
        let closed = molien_closed_form_l(cfg.n, cfg.m, cfg.max_degree);
        report.push(Check::flag(
            "closed_form",
            series == closed,
            "equals prod 1/(1 - t^(mk))",
        ));
    }
    report.result =
        Some(json!({ "rep": rep_name(rep), "coefficients": molien_coefficients(&series) }));
    Ok(report)
}

pub fn generation(
    cfg: &RunConfig,
    rep: Representation,
    cutoff: Option<usize>,
) -> Result<Report, InputError> {
    cfg.validate()?;
    let mut report = echo(
        "generation",
        cfg,
        json!({ "rep": rep_name(rep), "cutoff": cutoff }),
    );
    let mut reports = Vec::new();
    let mut minimal = Vec::new();
    for d in 0..=cfg.max_degree {
        let g = generation_check(cfg.n, cfg.m, d, cutoff.unwrap_or(d), rep)?;
        report.push(Check::flag(
            format!("generation_d{d}"),
            g.verdict,
            format!(
                "span {} of {} invariants with generators of degree <= {}",
                g.span_dim, g.molien_dim, g.cutoff
            ),
        ));
        reports.push(GenerationReportJson::from(&g));
        minimal.push(minimal_generator_cutoff(cfg.n, cfg.m, d, rep)?);
    }
    report.result = Some(json!({ "reports": reports, "minimal_cutoff": minimal }));
    Ok(report)
}

/// Numeric relative spread bound at the default tolerance.
pub const JACOBIAN_SPREAD: f64 = 1e-6;

pub fn jacobian(cfg: &RunConfig) -> Result<Report, InputError> {
    cfg.validate()?;
    let mut report = Report::for_config("jacobian", cfg);
    let j = jacobian_check(cfg.n, cfg.m, cfg.trials, cfg.seed)?;
    report.push(
        Check::bound("numeric_spread", j.spread, cfg.threshold(JACOBIAN_SPREAD)).with_detail(
            format!(
                "{} trials, {} degenerate samples redrawn",
                j.trials, j.resampled
            ),
        ),
    );
    match (&j.exact, j.exact_matches_chain_rule()) {
        (Some(c), Some(ok)) => report.push(Check::flag(
            "exact_constant",
            ok,
            format!("det J = {c} * (z_1...z_n)^(m-1) prod (z_i^m - z_j^m), expected magnitude m^n"),
        )),
        _ => report.warn("exact expansion only runs for n <= 3"),
    }
    report.result = Some(json!({
        "constant": complex_to_pair(j.constant),
        "spread": j.spread,
        "exact": j.exact.as_ref().map(ToString::to_string),
    }));
    Ok(report)
}
