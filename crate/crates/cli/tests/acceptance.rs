//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use cyclic_quiver::exact::{
    generation_check, jacobian_check, jacobian_numeric, molien_closed_form_l, reynolds, MultiPoly,
};
use cyclic_quiver::invariants::{
    char_fingerprint, diagram_check, phi_identity_check, rho_identity_check, trace_word_panel,
    TraceWord,
};
use cyclic_quiver::linalg::Complex;
use cyclic_quiver::normal_form::{
    canonical_diagonal_pair, canonical_distance, canonicalize_double, near_branch_cut,
    to_canonical_l, DoubleCanonical,
};
use cyclic_quiver::quiver::{
    act_gauge, embed_l, is_generic, random_gauge, random_l_point, random_ll_point, random_rep,
    random_z_point, LPoint, QuiverShape, RepPoint,
};
use cyclic_quiver::rng::{trial_rng, ChaCha8Rng};
use cyclic_quiver::wreath::{enumerate, molien, Representation};
use cyclic_quiver::{Error, Tolerances};

const TOL: Tolerances = Tolerances::DEFAULT;

struct Outcome {
    passed: bool,
    summary: String,
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn outcome(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        summary: summary.into(),
    }
}

fn shape(m: usize, n: usize) -> QuiverShape {
    QuiverShape::new(m, n).unwrap()
}

/// Draws random points until `count` are generic and away from the branch cut.
fn usable_points(s: QuiverShape, count: usize, seed: u64) -> (Vec<(RepPoint, ChaCha8Rng)>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut drawn = 0u64;
    while out.len() < count {
        let mut rng = trial_rng(seed, drawn);
        drawn += 1;
        let p = random_rep(s, &mut rng);
        let ok = is_generic(&p, TOL.generic)
            .map(|g| g.generic && g.eigenvalues.iter().all(|&w| !near_branch_cut(w, 1e-6)))
            .unwrap_or(false);
        if ok {
            out.push((p, rng));
        }
    }
    (out, drawn as usize - count)
}

fn rho_identity() -> Outcome {
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for m in 1..=4 {
            for i in 0..100 {
                let l = random_l_point(n, &mut trial_rng(1000 + (10 * n + m) as u64, i));
                for k in 1..=n {
                    worst = worst.max(rho_identity_check(&l, m, k).unwrap().relative());
                }
            }
        }
    }
    outcome(
        worst <= 1e-9,
        format!("worst relative residual {worst:.2e} <= 1e-9"),
    )
}

fn claim_normal_form() -> Outcome {
    let (mut witness, mut orbit) = (0.0f64, 0.0f64);
    let mut skipped = 0;
    for n in 1..=3 {
        for m in 1..=4 {
            let s = shape(m, n);
            let (points, dropped) = usable_points(s, 100, 2000 + (10 * n + m) as u64);
            skipped += dropped;
            for (p, mut rng) in points {
                let cf = to_canonical_l(&p, &TOL).unwrap();
                witness = witness.max(cf.witness_residual(&p).unwrap());
                for _ in 0..10 {
                    let g = random_gauge(s, &mut rng, &TOL).unwrap();
                    let other = to_canonical_l(&act_gauge(&g, &p).unwrap(), &TOL).unwrap();
                    orbit = orbit.max(canonical_distance(&cf.z, &other.z));
                }
            }
        }
    }
    outcome(
        witness <= 1e-7 && orbit <= 1e-6,
        format!("witness {witness:.2e} <= 1e-7, orbit invariance {orbit:.2e} <= 1e-6, {skipped} draws skipped"),
    )
}

fn separation() -> Outcome {
    let (points, _) = usable_points(shape(3, 3), 200, 3000);
    let data: Vec<_> = points
        .iter()
        .map(|(p, _)| (to_canonical_l(p, &TOL).unwrap().z, char_fingerprint(p)))
        .collect();
    let (mut pairs, mut violations) = (0, 0);
    for (a, (za, fa)) in data.iter().enumerate() {
        for (zb, fb) in &data[a + 1..] {
            if canonical_distance(za, zb) <= 1e-4 {
                continue;
            }
            pairs += 1;
            let scale = fa.iter().chain(fb).map(|v| v.norm()).fold(1.0, f64::max);
            if fa
                .iter()
                .zip(fb)
                .all(|(u, v)| (u - v).norm() <= 1e-6 * scale)
            {
                violations += 1;
            }
        }
    }
    outcome(
        violations == 0,
        format!("{pairs} distinct pairs, {violations} violations"),
    )
}

fn hilbert_series() -> Outcome {
    let mut mismatches = Vec::new();
    for (n, m) in [(2, 2), (2, 3), (3, 2)] {
        let series = molien(&enumerate(n, m).unwrap(), Representation::L, 12).unwrap();
        if series != molien_closed_form_l(n, m, 12) {
            mismatches.push((n, m));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("exact equality through degree 12, mismatches {mismatches:?}"),
    )
}

fn phi_identity() -> Outcome {
    let mut worst = 0.0f64;
    let mut words = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            let panel = trace_word_panel(m, 6);
            words += panel.len();
            for i in 0..100 {
                let l = random_ll_point(n, &mut trial_rng(5000 + (10 * n + m) as u64, i));
                for w in &panel {
                    worst = worst.max(phi_identity_check(&l, m, w.r(), w.s()).unwrap().relative());
                }
            }
        }
    }
    outcome(
        worst <= 1e-9,
        format!("{words} words, worst relative residual {worst:.2e} <= 1e-9"),
    )
}

fn moment_and_saturation() -> Outcome {
    let mut moment = 0.0f64;
    let (mut generic, mut recovered) = (0usize, 0usize);
    for n in 1..=3 {
        for m in 1..=3 {
            for i in 0..100 {
                let mut rng = trial_rng(6000 + (10 * n + m) as u64, i);
                let (p, planted) = random_z_point(shape(m, n), &mut rng, &TOL).unwrap();
                moment = moment.max(p.relative_moment_residual());
                let usable = is_generic(&p.x_part(), TOL.generic)
                    .map(|g| g.generic && g.eigenvalues.iter().all(|&w| !near_branch_cut(w, 1e-6)))
                    .unwrap_or(false);
                if !usable {
                    continue;
                }
                generic += 1;
                let expected = canonical_diagonal_pair(&planted, m);
                if let Ok(DoubleCanonical::Diagonal(cf)) = canonicalize_double(&p, &TOL) {
                    let d = canonical_distance(&cf.z, &expected.z)
                        .max(canonical_distance(&cf.zp, &expected.zp));
                    recovered += usize::from(d <= 1e-6);
                }
            }
        }
    }
    let rate = recovered as f64 / generic as f64;
    outcome(
        moment < 1e-10 && rate >= 0.99,
        format!(
            "moment residual {moment:.2e} < 1e-10, recovered {recovered}/{generic} generic samples"
        ),
    )
}

fn diagram_identity() -> Outcome {
    let words: Vec<TraceWord> = [(2, 2), (4, 2), (3, 1)]
        .iter()
        .filter_map(|&(r, s)| TraceWord::new(r, s, 2).ok())
        .collect();
    let mut worst = 0.0f64;
    for i in 0..100 {
        let mut rng = trial_rng(7000, i);
        let points: Vec<_> = (0..3)
            .map(|_| random_z_point(shape(2, 1), &mut rng, &TOL).unwrap().0)
            .collect();
        for w in &words {
            worst = worst.max(diagram_check(&points, w, &TOL).unwrap().relative());
        }
    }
    outcome(
        worst <= 1e-10,
        format!(
            "{} words, worst relative residual {worst:.2e} <= 1e-10",
            words.len()
        ),
    )
}

fn weyl_generation() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (n, m) in [(1, 2), (1, 3), (2, 2)] {
        for d in 0..=6 {
            checks += 1;
            if !generation_check(n, m, d, d, Representation::LL)
                .unwrap()
                .verdict
            {
                failures.push(("LL", n, m, d));
            }
        }
    }
    for n in 1..=3 {
        for m in 1..=3 {
            for d in 0..=12 {
                checks += 1;
                if !generation_check(n, m, d, d, Representation::L)
                    .unwrap()
                    .verdict
                {
                    failures.push(("L", n, m, d));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checks} exact degree checks, failures {failures:?}"),
    )
}

fn jacobian() -> Outcome {
    let mut spread = 0.0f64;
    for n in 1..=4 {
        for m in 1..=4 {
            spread = spread.max(
                jacobian_numeric(n, m, 50, 9000 + (10 * n + m) as u64)
                    .unwrap()
                    .1,
            );
        }
    }
    let mut wrong = Vec::new();
    for n in 1..=3 {
        for m in 1..=4 {
            if jacobian_check(n, m, 2, 0)
                .unwrap()
                .exact_matches_chain_rule()
                != Some(true)
            {
                wrong.push((n, m));
            }
        }
    }
    outcome(
        spread < 1e-6 && wrong.is_empty(),
        format!("numeric spread {spread:.2e} < 1e-6, exact |c| = m^n except {wrong:?}"),
    )
}

fn sharpness() -> Outcome {
    let p10 = MultiPoly::power_sum_pair(2, 1, 1, 0);
    let detected = reynolds(&p10, 1, 2, Representation::LL).unwrap() != p10
        && matches!(TraceWord::new(1, 0, 2), Err(Error::PathClosureError { .. }));
    let collide = embed_l(
        &LPoint::new(vec![Complex::new(1.0, 0.0), Complex::new(-1.0, 0.0)]),
        2,
    )
    .unwrap();
    let non_generic = !is_generic(&collide, TOL.generic).unwrap().generic;
    let status = Command::new(env!("CARGO_BIN_EXE_cyclic-quiver"))
        .args([
            "verify-chevalley",
            "--n",
            "2",
            "--m",
            "2",
            "--trials",
            "5",
            "--tol",
            "1e-30",
            "--no-timing",
        ])
        .output()
        .expect("binary runs")
        .status
        .code();
    outcome(
        detected && non_generic && status == Some(1),
        format!("p_(1,0) rejected {detected}, collision non-generic {non_generic}, tol inversion exit {status:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("rho identity", 5, rho_identity),
        ("claim and normal form", 30, claim_normal_form),
        ("separation", 30, separation),
        ("Hilbert series", 10, hilbert_series),
        ("phi identity", 10, phi_identity),
        ("moment map and saturation", 30, moment_and_saturation),
        ("diagram identity", 5, diagram_identity),
        ("Weyl generation", 120, weyl_generation),
        ("Jacobian", 60, jacobian),
        ("sharpness negatives", 1, sharpness),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let passed = out.passed && in_time;
        failed += usize::from(!passed);
        println!(
            "criterion {:>2} {}: {} ({}; {:.2}s of {}s)",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            out.summary,
            elapsed.as_secs_f64(),
            limit
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
