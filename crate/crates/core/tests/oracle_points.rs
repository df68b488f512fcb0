use charvar::oracle::*;
use charvar::ring::{Polynomial, Var, VarTable};
use charvar::tangle::{knot_classify, Fraction, MontesinosKnot};
use charvar::variety_builder::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn knot(ps: &[i64]) -> MontesinosKnot {
    let fr: Vec<Fraction> = ps.iter().map(|&p| Fraction::new(p, 1).unwrap()).collect();
    knot_classify(&fr).unwrap()
}

fn rc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn satisfies_inequations(sys: &VarietySystem, p: &Assignment) -> bool {
    sys.inequations.iter().all(|r| eval_at(&r.poly, p).unwrap().norm() > 1e-3)
}

/// Newton from random starts with the variables outside `free` frozen.
fn find_points(sys: &VarietySystem, fixed: &Assignment, free: &[Var], starts: usize, seed: u64) -> Vec<NewtonResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..starts {
        let mut start = fixed.clone();
        for &v in free {
            let x = match v {
                Var::Lambda | Var::Kappa => Complex64::from_polar(rng.gen_range(0.6..1.6), rng.gen_range(0.0..std::f64::consts::TAU)),
                _ => rc(&mut rng, 3.0),
            };
            start.insert(v, x);
        }
        if let Ok(res) = newton_refine(sys, &start, free, &NewtonOptions::default()) {
            if satisfies_inequations(sys, &res.point) {
                out.push(res);
            }
        }
    }
    out
}

#[test]
fn mu_ratio_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let (t, lambda) = (rc(&mut rng, 3.0), Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU)));
        let (zdot, zgrave) = (rc(&mut rng, 5.0), rc(&mut rng, 5.0));
        let tau = lambda + lambda.inv();
        let shift = tau + 2.0 - t * t;
        let closed = ((1.0 + lambda.inv()) * zdot + (1.0 + lambda) * zgrave + 2.0 * shift) / ((1.0 - lambda) * shift);
        let got = mu_ratio(t, lambda, zdot, zgrave);
        assert!((got - closed).norm() <= 1e-9 * closed.norm().max(1.0));
    }
}

#[test]
fn x2_points_of_three_twists_reconstruct() {
    let k = knot(&[3, 3, 3]);
    let sys = build_x2(&k).unwrap();
    let free = [Var::Lambda, Var::Ri(1), Var::Ri(2), Var::Ri(3)];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let h = &sys.equations[3].poly;
    let h_flipped = h.invert_var(Var::Lambda);
    for round in 0..3 {
        let t = Complex64::new(rng.gen_range(1.0..3.0), rng.gen_range(-1.0..1.0));
        let fixed: Assignment = [(Var::T, t)].into();
        let points = find_points(&sys, &fixed, &free, 20, 100 + round);
        assert!(!points.is_empty(), "no X2 point at t = {t}");
        for p in &points {
            assert!(p.residual < 1e-10);
            let rep = verify_rep_montesinos(&k, &Component::X2, &p.point, 1e-8).unwrap();
            assert!(rep.passed, "{rep:?}");
            // the closing relation also holds with λ replaced by 1/λ
            let scale = p.point.values().map(|x| x.norm()).fold(1.0, f64::max).powi(12);
            assert!(eval_at(&h_flipped, &p.point).unwrap().norm() <= 1e-8 * scale);
        }
        let mut bad = points[0].point.clone();
        *bad.get_mut(&Var::Ri(2)).unwrap() += 0.01;
        let rep = verify_rep_montesinos(&k, &Component::X2, &bad, 1e-8).unwrap();
        assert!(rep.max_residual > 1e-3, "{}", rep.max_residual);
    }
}

#[test]
fn x2_points_at_minus_one_use_the_parabolic_form() {
    let k = knot(&[3, 5, 7]);
    let sys = build_x2(&k).unwrap();
    let fixed: Assignment = [(Var::Lambda, Complex64::new(-1.0, 0.0))].into();
    let free = [Var::T, Var::Ri(1), Var::Ri(2), Var::Ri(3)];
    let points = find_points(&sys, &fixed, &free, 40, 9);
    let points: Vec<_> = points.into_iter().filter(|p| p.point[&Var::T].norm() > 0.1).collect();
    assert!(!points.is_empty());
    for p in &points {
        let rep = verify_rep_montesinos(&k, &Component::X2, &p.point, 1e-8).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(rep.checks.iter().any(|c| c.name.contains("alpha")));
    }
}

#[test]
fn xprime_points_reconstruct() {
    let k = knot(&[3, 3, 3]);
    let mut total = 0;
    for eps in ["+,-,0", "0,+,-", "-,+,0"] {
        let sys = build_xprime(&k, &eps.parse().unwrap()).unwrap();
        let free: Vec<Var> = sys.variables.iter().collect();
        let points = find_points(&sys, &Assignment::new(), &free, 30, 3);
        for p in &points {
            // these vectors force ϑ^ne(κ^±1) = 0, i.e. κ² = 2 or 1/2
            let k2 = p.point[&Var::Kappa].powi(2);
            assert!((k2 - 2.0).norm() < 1e-8 || (k2 - 0.5).norm() < 1e-8);
            let rep = verify_rep_montesinos(&k, &sys.component, &p.point, 1e-8).unwrap();
            assert!(rep.passed, "{eps}: {rep:?}");
            let mut bad = p.point.clone();
            *bad.get_mut(&Var::Kappa).unwrap() *= 1.01;
            let rep = verify_rep_montesinos(&k, &sys.component, &bad, 1e-8).unwrap();
            assert!(rep.max_residual > 1e-3);
        }
        total += points.len();
    }
    assert!(total > 0);
}

#[test]
fn x1_points_are_not_reconstructed() {
    let k = knot(&[3, 3, 3]);
    let err = verify_rep_montesinos(&k, &Component::X1, &Assignment::new(), 1e-8).unwrap_err();
    assert!(matches!(err, OracleError::Unsupported(_)));
}

#[test]
fn reconstruction_rejects_degenerate_points() {
    let k = knot(&[3, 3, 3]);
    let eps: SignVector = "+,-,0".parse().unwrap();
    let point: Assignment = [
        (Var::Kappa, Complex64::new(2f64.sqrt(), 0.0)),
        (Var::Xi(2), Complex64::new(0.0, 0.0)),
        (Var::Ri(1), Complex64::new(1.0, 0.0)),
    ]
    .into();
    let err = verify_rep_montesinos(&k, &Component::XPrime { epsilon: eps }, &point, 1e-8).unwrap_err();
    assert!(matches!(err, OracleError::ReconstructionFailure(_)));
}

fn toy(eqs: Vec<Polynomial>) -> VarietySystem {
    VarietySystem {
        knot: "toy".into(),
        component: Component::X2,
        variables: VarTable::new([Var::Aux(0)]).unwrap(),
        equations: eqs
            .into_iter()
            .map(|poly| charvar::variety_builder::Relation { poly, note: String::new() })
            .collect(),
        inequations: vec![],
        irreducibility: None,
        notes: vec![],
    }
}

#[test]
fn newton_on_toy_systems() {
    let x = Polynomial::var(Var::Aux(0));
    let sys = toy(vec![&(&x * &x) - &Polynomial::constant(2)]);
    let start: Assignment = [(Var::Aux(0), Complex64::new(1.5, 0.0))].into();
    let res = newton_refine(&sys, &start, &[Var::Aux(0)], &NewtonOptions::default()).unwrap();
    assert!((res.point[&Var::Aux(0)] - Complex64::new(2f64.sqrt(), 0.0)).norm() < 1e-9);

    let bad = toy(vec![&x - &Polynomial::constant(1), &x - &Polynomial::constant(2)]);
    let err = newton_refine(&bad, &start, &[Var::Aux(0)], &NewtonOptions::default()).unwrap_err();
    assert!(matches!(err, OracleError::NoConvergence { .. }));
}

#[test]
fn seeded_sampling_is_reproducible() {
    let k = knot(&[3, 3, 3]);
    let sys = build_x2(&k).unwrap();
    let a = sample_point(&sys, 5, 20, &NewtonOptions::default()).unwrap();
    let b = sample_point(&sys, 5, 20, &NewtonOptions::default()).unwrap();
    assert_eq!(a, b);
    assert!(verify_rep_montesinos(&k, &Component::X2, &a.point, 1e-8).unwrap().passed);
}
