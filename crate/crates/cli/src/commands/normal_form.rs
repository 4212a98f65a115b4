use cyclic_quiver::invariants::{
    default_panel_len, eval_charpoly_invariant, eval_trace_word, trace_word_panel,
    CharPolyInvariant,
};
use cyclic_quiver::normal_form::{
    canonicalize_double, to_canonical_l, z1_normal_form, DoubleCanonical,
};
use cyclic_quiver::quiver::{is_generic, DoubleRepPoint, RepPoint};
use serde_json::{json, Value};

use super::{near_degenerate, InputError, TOL};
use crate::config::RunConfig;
use crate::formats::{
    complex_to_pair, parse_point, CanonicalLJson, CanonicalLLJson, InvariantJson, Point, Z1Json,
};
use crate::report::{Check, Report};

/// Canonical form of the point stored in `input`, with its invariant panel.
pub fn normal_form(text: &str, cfg: &RunConfig) -> Result<Report, InputError> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(InputError("tol must be a positive finite number".into()));
    }
    let point = parse_point(text)?;
    let mut report = Report::new("normal-form", json!({ "tol": cfg.tol }));
    match point {
        Point::Single(p) => single(&p, cfg, &mut report)?,
        Point::Double(p) => double(&p, cfg, &mut report)?,
    }
    Ok(report)
}

fn require_generic(p: &RepPoint, report: &mut Report) -> Result<(), InputError> {
    let g = is_generic(p, TOL.generic)?;
    if !g.generic {
        return Err(InputError(format!(
            "point is not generic (eigenvalue margin {:.3e}, gap margin {:.3e})",
            g.abs_margin, g.gap_margin
        )));
    }
    if near_degenerate(&g) {
        report.warn(format!(
            "genericity margin {:.3e} is within 10x of tolerance",
            g.min_margin()
        ));
    }
    Ok(())
}

fn charpoly_panel(p: &RepPoint) -> Result<Vec<Value>, InputError> {
    (1..=p.shape().n())
        .map(|k| {
            let inv = CharPolyInvariant::new(k, p.shape().n())?;
            let value = eval_charpoly_invariant(k, p)?;
            Ok(json!({ "invariant": InvariantJson::from(&inv), "value": complex_to_pair(value) }))
        })
        .collect()
}

fn trace_panel(p: &DoubleRepPoint) -> Result<Vec<Value>, InputError> {
    trace_word_panel(p.shape().m(), default_panel_len(p.shape().m()))
        .iter()
        .map(|w| {
            let value = eval_trace_word(w, p)?;
            Ok(json!({ "invariant": InvariantJson::from(w), "value": complex_to_pair(value) }))
        })
        .collect()
}

fn single(p: &RepPoint, cfg: &RunConfig, report: &mut Report) -> Result<(), InputError> {
    require_generic(p, report)?;
    let cf = to_canonical_l(p, &TOL)?;
    report.push(Check::bound(
        "witness_soundness",
        cf.witness_residual(p)?,
        cfg.threshold(1e-7),
    ));
    let mut result = serde_json::to_value(CanonicalLJson::from(&cf)).expect("serializes");
    result["invariants"] = Value::Array(charpoly_panel(p)?);
    report.result = Some(result);
    Ok(())
}

fn double(p: &DoubleRepPoint, cfg: &RunConfig, report: &mut Report) -> Result<(), InputError> {
    let mut result = if p.shape().n() == 1 {
        serde_json::to_value(Z1Json::from(&z1_normal_form(p, &TOL)?)).expect("serializes")
    } else {
        require_generic(&p.x_part(), report)?;
        match canonicalize_double(p, &TOL)? {
            DoubleCanonical::Diagonal(cf) => {
                let x = to_canonical_l(&p.x_part(), &TOL)?;
                report.push(Check::bound(
                    "witness_soundness",
                    x.witness_residual(&p.x_part())?,
                    cfg.threshold(1e-7),
                ));
                serde_json::to_value(CanonicalLLJson::from(&cf)).expect("serializes")
            }
            DoubleCanonical::NonDiagonalResidue { residue, x } => {
                report.warn(format!(
                    "transported y is not diagonal (residue {residue:.3e}); the point is off the saturation of L x L"
                ));
                let mut v = serde_json::to_value(CanonicalLJson::from(&x)).expect("serializes");
                v["outcome"] = json!("non_diagonal_residue");
                v["residue"] = json!(residue);
                v
            }
        }
    };
    result["invariants"] = Value::Array(trace_panel(p)?);
    report.result = Some(result);
    Ok(())
}
