use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::rng::{rng_from_seed, trial_rng};

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn scalar(v: Complex) -> SquareMatrix {
    SquareMatrix::from_diagonal(&[v])
}

fn shape(m: usize, n: usize) -> QuiverShape {
    QuiverShape::new(m, n).unwrap()
}

fn random_double(shape: QuiverShape, seed: u64) -> DoubleRepPoint {
    let mut rng = rng_from_seed(seed);
    let x = random_rep(shape, &mut rng).x;
    let y = random_rep(shape, &mut rng).x;
    DoubleRepPoint::new(shape, x, y).unwrap()
}

#[test]
fn shape_rejects_zero() {
    assert!(QuiverShape::new(0, 2).is_err());
    assert!(QuiverShape::new(2, 0).is_err());
    assert!(RepPoint::new(shape(2, 2), vec![SquareMatrix::identity(2)]).is_err());
}

#[test]
fn identity_gauge_fixes_points() {
    let s = shape(3, 2);
    let p = random_rep(s, &mut rng_from_seed(1));
    assert_eq!(act_gauge(&GaugeElement::identity(s), &p).unwrap(), p);
    let q = random_double(s, 2);
    assert_eq!(act_gauge_double(&GaugeElement::identity(s), &q).unwrap(), q);
}

#[test]
fn scalar_action_formula() {
    // n = 1, m = 2: (a, b) -> (v^-1 a u, u^-1 b v)
    let s = shape(2, 1);
    let (a, b, u, v) = (c(2.0), c(3.0), c(5.0), c(7.0));
    let p = RepPoint::new(s, vec![scalar(a), scalar(b)]).unwrap();
    let g = GaugeElement::new(s, vec![scalar(u), scalar(v)]).unwrap();
    let q = act_gauge(&g, &p).unwrap();
    assert!((q.x()[0][(0, 0)] - a * u / v).norm() < 1e-15);
    assert!((q.x()[1][(0, 0)] - b * v / u).norm() < 1e-15);
}

#[test]
fn scalar_double_twists_telescope() {
    let s = shape(4, 1);
    let mut rng = rng_from_seed(3);
    let g = random_gauge(s, &mut rng, &Tolerances::DEFAULT).unwrap();
    let p = random_double(s, 4);
    let q = act_gauge_double(&g, &p).unwrap();
    let mut x_twist = c(1.0);
    let mut y_twist = c(1.0);
    for i in 0..4 {
        let tx = q.x()[i][(0, 0)] / p.x()[i][(0, 0)];
        let ty = q.y()[i][(0, 0)] / p.y()[i][(0, 0)];
        let gi = g.components()[i][(0, 0)];
        let gn = g.components()[(i + 1) % 4][(0, 0)];
        assert!((tx - gi / gn).norm() < 1e-12);
        assert!((ty - gn / gi).norm() < 1e-12);
        x_twist *= tx;
        y_twist *= ty;
    }
    assert!((x_twist - c(1.0)).norm() < 1e-12 && (y_twist - c(1.0)).norm() < 1e-12);
}

#[test]
fn action_law_holds() {
    let tol = Tolerances::DEFAULT;
    for trial in 0..100u64 {
        let mut rng = trial_rng(10, trial);
        let s = shape(1 + (trial % 4) as usize, 1 + (trial % 3) as usize);
        let g = random_gauge(s, &mut rng, &tol).unwrap();
        let h = random_gauge(s, &mut rng, &tol).unwrap();
        let p = random_rep(s, &mut rng);
        let two_step = act_gauge(&g, &act_gauge(&h, &p).unwrap()).unwrap();
        let one_step = act_gauge(&h.compose(&g).unwrap(), &p).unwrap();
        assert!(
            two_step.distance(&one_step) <= 1e-10 * one_step.scale().max(1.0),
            "trial {trial}"
        );

        let q = random_double(s, 1000 + trial);
        let two_step = act_gauge_double(&g, &act_gauge_double(&h, &q).unwrap()).unwrap();
        let one_step = act_gauge_double(&h.compose(&g).unwrap(), &q).unwrap();
        let scale = one_step
            .x()
            .iter()
            .chain(one_step.y())
            .map(SquareMatrix::frobenius_norm)
            .fold(1.0, f64::max);
        assert!(
            two_step.distance(&one_step) <= 1e-10 * scale,
            "trial {trial}"
        );
    }
}

#[test]
fn cycle_product_examples() {
    let s = shape(3, 2);
    let ones = RepPoint::new(s, vec![SquareMatrix::identity(2); 3]).unwrap();
    assert_eq!(ones.cycle_product(), SquareMatrix::identity(2));
    let p = RepPoint::new(
        shape(3, 1),
        vec![scalar(c(2.0)), scalar(c(3.0)), scalar(c(5.0))],
    )
    .unwrap();
    assert_eq!(p.cycle_product()[(0, 0)], c(30.0));
}

#[test]
fn cycle_product_order_is_last_to_first() {
    let s = shape(2, 2);
    let mut rng = rng_from_seed(5);
    let p = random_rep(s, &mut rng);
    assert_eq!(p.cycle_product(), &p.x()[1] * &p.x()[0]);
}

#[test]
fn cycle_product_is_conjugated_by_first_component() {
    let s = shape(3, 3);
    let mut rng = rng_from_seed(6);
    let p = random_rep(s, &mut rng);
    let g = random_gauge(s, &mut rng, &Tolerances::DEFAULT).unwrap();
    let lhs = act_gauge(&g, &p).unwrap().cycle_product();
    let g1 = &g.components()[0];
    let rhs = &(&g1.inverse().unwrap() * &p.cycle_product()) * g1;
    assert!(lhs.distance(&rhs) <= 1e-9 * rhs.frobenius_norm());
}

#[test]
fn moment_residual_vanishes_on_diagonal_pairs() {
    let mut rng = rng_from_seed(7);
    let l = random_ll_point(3, &mut rng);
    let p = embed_ll(&l, 4).unwrap();
    assert!(p
        .moment_residual()
        .iter()
        .all(|r| r.frobenius_norm() == 0.0));
}

#[test]
fn scalar_moment_residual() {
    // all x_i y_i equal to 6
    let s = shape(3, 1);
    let x = vec![scalar(c(2.0)), scalar(c(3.0)), scalar(c(6.0))];
    let y = vec![scalar(c(3.0)), scalar(c(2.0)), scalar(c(1.0))];
    let p = DoubleRepPoint::new(s, x, y).unwrap();
    assert!(p
        .moment_residual()
        .iter()
        .all(|r| r.frobenius_norm() == 0.0));
    // r_1 = y_1 x_1 - x_m y_m on a point that breaks the equations
    let q = DoubleRepPoint::new(
        s,
        vec![scalar(c(1.0)); 3],
        vec![scalar(c(1.0)), scalar(c(2.0)), scalar(c(4.0))],
    )
    .unwrap();
    let r = q.moment_residual();
    assert_eq!(r[0][(0, 0)], c(1.0 - 4.0));
    assert_eq!(r[1][(0, 0)], c(2.0 - 1.0));
    assert_eq!(r[2][(0, 0)], c(4.0 - 2.0));
}

#[test]
fn gl_case_moment_is_commutator() {
    let s = shape(1, 3);
    let p = random_double(s, 8);
    let r = &p.moment_residual()[0];
    let comm = (&p.y()[0] * &p.x()[0])
        .sub(&(&p.x()[0] * &p.y()[0]))
        .unwrap();
    assert_eq!(*r, comm);
}

#[test]
fn moment_residual_is_equivariant() {
    let s = shape(3, 2);
    let mut rng = rng_from_seed(9);
    let g = random_gauge(s, &mut rng, &Tolerances::DEFAULT).unwrap();
    let p = random_double(s, 10);
    let gauged = act_gauge_double(&g, &p).unwrap().moment_residual();
    for (i, r) in p.moment_residual().iter().enumerate() {
        let gi = &g.components()[i];
        let expected = &(&gi.inverse().unwrap() * r) * gi;
        assert!(gauged[i].distance(&expected) <= 1e-9 * expected.frobenius_norm().max(1.0));
    }
}

#[test]
fn saturation_points_lie_in_zero_set() {
    let tol = Tolerances::DEFAULT;
    for trial in 0..50 {
        let mut rng = trial_rng(11, trial);
        let s = shape(1 + (trial % 3) as usize, 1 + (trial % 4) as usize);
        let (p, _) = random_z_point(s, &mut rng, &tol).unwrap();
        assert!(p.relative_moment_residual() < 1e-10, "trial {trial}");
        assert!(p.in_zero_set(&tol));
    }
}

#[test]
fn random_points_are_usually_outside_zero_set() {
    let p = random_double(shape(2, 2), 12);
    assert!(!p.in_zero_set(&Tolerances::DEFAULT));
}

#[test]
fn embeddings() {
    let zero = embed_l(&LPoint::new(vec![c(0.0); 2]), 3).unwrap();
    assert!(zero.x().iter().all(|a| a.frobenius_norm() == 0.0));
    let p = embed_l(&LPoint::new(vec![c(3.0)]), 2).unwrap();
    assert_eq!(p.x(), &[scalar(c(3.0)), scalar(c(3.0))]);
    let l = LLPoint::new(vec![c(1.0), c(2.0)], vec![c(5.0), c(6.0)]).unwrap();
    let q = embed_ll(&l, 2).unwrap();
    assert!(q.y().iter().all(|a| a.diagonal() == vec![c(5.0), c(6.0)]));
    assert!(LLPoint::new(vec![c(1.0)], vec![]).is_err());
}

#[test]
fn genericity_examples() {
    for m in 1..=4 {
        let p = embed_l(&LPoint::new(vec![c(1.0), c(2.0)]), m).unwrap();
        assert!(is_generic(&p, 1e-6).unwrap().generic, "m = {m}");
    }
    let s = shape(3, 2);
    let mut rng = rng_from_seed(13);
    let mut p = random_rep(s, &mut rng);
    p.x[1] = SquareMatrix::zeros(2);
    assert!(!is_generic(&p, 1e-6).unwrap().generic);
}

#[test]
fn colliding_powers_are_not_generic() {
    for m in 2..=4usize {
        let omega = Complex::from_polar(1.0, 2.0 * core::f64::consts::PI / m as f64);
        let p = embed_l(&LPoint::new(vec![c(1.0), omega]), m).unwrap();
        let report = is_generic(&p, 1e-6).unwrap();
        assert!(!report.generic, "m = {m}, gap margin {}", report.gap_margin);
    }
}

#[test]
fn sampling_is_deterministic() {
    let s = shape(3, 2);
    let a = random_rep(s, &mut rng_from_seed(99));
    let b = random_rep(s, &mut rng_from_seed(99));
    assert_eq!(a, b);
    let bits = |p: &RepPoint| -> Vec<u64> {
        p.x()
            .iter()
            .flat_map(|x| {
                x.entries()
                    .iter()
                    .flat_map(|z| [z.re.to_bits(), z.im.to_bits()])
            })
            .collect()
    };
    assert_eq!(bits(&a), bits(&b));
    let tol = Tolerances::DEFAULT;
    assert_eq!(
        random_z_point(s, &mut rng_from_seed(5), &tol).unwrap(),
        random_z_point(s, &mut rng_from_seed(5), &tol).unwrap()
    );
}

#[test]
fn random_points_are_generic() {
    for m in 1..=4 {
        for n in 1..=4 {
            let s = shape(m, n);
            let generic = (0..100u64)
                .filter(|&t| {
                    is_generic(&random_rep(s, &mut trial_rng(14, t)), 1e-6)
                        .unwrap()
                        .generic
                })
                .count();
            assert!(generic >= 99, "(n, m) = ({n}, {m}): {generic}/100");
        }
    }
}

#[test]
fn genericity_is_gauge_invariant() {
    let tol = Tolerances::DEFAULT;
    for trial in 0..100u64 {
        let mut rng = trial_rng(15, trial);
        let s = shape(1 + (trial % 4) as usize, 1 + (trial % 3) as usize);
        let p = random_rep(s, &mut rng);
        let g = random_gauge(s, &mut rng, &tol).unwrap();
        let q = act_gauge(&g, &p).unwrap();
        let (Ok(a), Ok(b)) = (is_generic(&p, 1e-7), is_generic(&q, 1e-5)) else {
            continue;
        };
        assert_eq!(a.generic, b.generic, "trial {trial}");
    }
}

#[test]
fn unreachable_condition_cap_fails_sampling() {
    let tol = Tolerances {
        gauge_condition: 0.5,
        ..Tolerances::DEFAULT
    };
    let err = random_gauge(shape(2, 2), &mut rng_from_seed(1), &tol).unwrap_err();
    assert_eq!(err, Error::SamplingFailure { attempts: 100 });
}
