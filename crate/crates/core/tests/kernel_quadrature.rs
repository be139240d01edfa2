use std::f64::consts::{E, PI};

use jacob_ladder::kernel::{
    kernel, kernel_split_check, poisson_integral_closed, poisson_integral_numeric, tau_a,
    KernelParams, Regime,
};
use jacob_ladder::quadrature::{integrate, QuadratureConfig};
use jacob_ladder::Error;
use proptest::prelude::*;

// arccos(1/4) from a 30-digit evaluation
const TAU_HALF: f64 = 1.318_116_071_652_818;

#[test]
fn kernel_examples() {
    assert!((kernel(0.5, 0.0).unwrap() + 2.0 * 2f64.ln()).abs() < 1e-15);
    assert!(kernel(0.5, TAU_HALF).unwrap().abs() < 1e-15);
    assert!((kernel(2.0, PI).unwrap() - 9f64.ln()).abs() < 1e-15);
}

#[test]
fn kernel_domain() {
    assert!(matches!(kernel(0.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(kernel(-1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(kernel(1.0, 1.0), Err(Error::Domain(_))));
    let near = kernel(1.0 + 1e-7, 1.0).unwrap_err();
    assert!(near.to_string().contains("within"));
    assert!(kernel(0.5, 3.5).is_err());
}

#[test]
fn tau_a_examples() {
    assert!((tau_a(1.0).unwrap() - PI / 3.0).abs() < 1e-15);
    assert!((tau_a(1e-12).unwrap() - PI / 2.0).abs() < 1e-12);
    assert!((tau_a(0.5).unwrap() - TAU_HALF).abs() < 1e-15);
    assert_eq!(tau_a(2.0).unwrap(), 0.0);
    assert!(tau_a(2.5).is_err() && tau_a(0.0).is_err());
    let mut prev = f64::INFINITY;
    for k in 1..=200 {
        let v = tau_a(k as f64 / 100.0).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn params_regimes() {
    assert_eq!(KernelParams::new(0.5).unwrap().regime, Regime::Sub);
    assert_eq!(KernelParams::new(1.5).unwrap().regime, Regime::Super);
    let p = KernelParams::new(4.0).unwrap();
    assert_eq!(
        (p.regime, p.tau_a, p.reciprocal()),
        (Regime::Large, None, 0.25)
    );
    for a in [0.2, 0.5, 1.5, 2.0] {
        let p = KernelParams::new(a).unwrap();
        assert!(p.eval(p.tau_a.unwrap()).abs() < 1e-15);
    }
}

#[test]
fn closed_form_branches() {
    assert_eq!(poisson_integral_closed(0.5).unwrap(), 0.0);
    assert!((poisson_integral_closed(2.0).unwrap() - 4.355_172_180_607_204).abs() < 1e-14);
    assert!((poisson_integral_closed(E).unwrap() - 2.0 * PI).abs() < 1e-14);
    assert!(poisson_integral_closed(1.0).is_err() && poisson_integral_closed(0.0).is_err());
}

#[test]
fn quadrature_matches_closed_form() {
    let cfg = QuadratureConfig::default();
    for a in [0.1, 0.5, 0.9, 1.5, 2.0, 5.0] {
        let n = poisson_integral_numeric(a, &cfg).unwrap();
        assert!(
            (n.value - poisson_integral_closed(a).unwrap()).abs() < 1e-8,
            "a = {a}"
        );
        assert!(n.error_estimate >= 0.0);
    }
}

#[test]
fn split_parts() {
    let cfg = QuadratureConfig::default();
    let (pos, neg) = kernel_split_check(0.5, &cfg).unwrap();
    assert!((pos + neg).abs() < 1e-9);
    for a in [0.9, 0.1] {
        let (pos, neg) = kernel_split_check(a, &cfg).unwrap();
        assert!(pos > 0.0 && neg < 0.0);
    }
    assert!(kernel_split_check(1.5, &cfg).is_err());
}

#[test]
fn integrate_examples() {
    let cfg = QuadratureConfig::default().with_abs_tol(1e-13);
    assert!((integrate(|_| 1.0, 0.0, PI, &cfg).unwrap().value - PI).abs() < 1e-12);
    assert!(integrate(f64::cos, 0.0, PI, &cfg).unwrap().value.abs() < 1e-12);
    let k = integrate(
        |x| kernel(0.5, x).unwrap(),
        0.0,
        PI,
        &QuadratureConfig::default(),
    )
    .unwrap();
    assert!(k.value.abs() < 1e-9);
    assert_eq!(integrate(f64::exp, 2.0, 2.0, &cfg).unwrap().value, 0.0);
}

#[test]
fn window_shift_identity() {
    let cfg = QuadratureConfig::default().with_abs_tol(1e-13);
    for (t, a) in [(1.0e3, 0.5), (1.0e5, 0.3), (1.0e4, 2.0)] {
        let (shifted, base) = jacob_ladder::verification::window_identity(t, a, &cfg).unwrap();
        assert!((shifted - base).abs() < 1e-10, "T = {t}, a = {a}");
    }
}

fn test_functions() -> Vec<Box<dyn Fn(f64) -> f64>> {
    vec![
        Box::new(|x: f64| x.sin()),
        Box::new(|x: f64| (x * x).exp().recip()),
        Box::new(|x: f64| kernel(0.3, x.rem_euclid(PI)).unwrap()),
        Box::new(|x: f64| x.powi(5) - x),
    ]
}

proptest! {
    #[test]
    fn evenness(a in 0.01f64..10.0, tau in -PI..=PI) {
        prop_assume!((a - 1.0).abs() > 1e-3);
        prop_assert_eq!(kernel(a, tau).unwrap(), kernel(a, -tau).unwrap());
    }

    #[test]
    fn sign_structure(a in 0.01f64..0.99, s in 0.001f64..0.999) {
        let ta = tau_a(a).unwrap();
        prop_assert!(kernel(a, s * ta).unwrap() < 0.0);
        prop_assert!(kernel(a, ta + s * (PI - ta)).unwrap() > 0.0);
    }

    #[test]
    fn scaling_identity(b in 1.001f64..10.0, tau in -PI..=PI) {
        let lhs = kernel(b, tau).unwrap();
        let rhs = 2.0 * b.ln() + kernel(1.0 / b, tau).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
    }

    #[test]
    fn large_a_nonnegative(a in 2.0f64..50.0, tau in -PI..=PI) {
        prop_assert!(kernel(a, tau).unwrap() >= 0.0);
    }

    #[test]
    fn linearity(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, i in 0usize..4, j in 0usize..4) {
        let fs = test_functions();
        let cfg = QuadratureConfig::default().with_abs_tol(1e-12);
        let (f, g) = (&fs[i], &fs[j]);
        let combo = integrate(|x| alpha * f(x) + beta * g(x), 0.1, 3.0, &cfg).unwrap();
        let fi = integrate(f, 0.1, 3.0, &cfg).unwrap();
        let gi = integrate(g, 0.1, 3.0, &cfg).unwrap();
        let tol = (1.0 + alpha.abs() + beta.abs()) * 1e-11;
        prop_assert!((combo.value - alpha * fi.value - beta * gi.value).abs() < tol);
    }

    #[test]
    fn additivity(split in 0.2f64..2.9, i in 0usize..4) {
        let fs = test_functions();
        let f = &fs[i];
        let cfg = QuadratureConfig::default().with_abs_tol(1e-12);
        let whole = integrate(f, 0.1, 3.0, &cfg).unwrap();
        let left = integrate(f, 0.1, split, &cfg).unwrap();
        let right = integrate(f, split, 3.0, &cfg).unwrap();
        prop_assert!((whole.value - left.value - right.value).abs() < 1e-11);
    }
}
