use harmprog::kernels::{kernel_cached, KernelKind, KernelPoly};
use harmprog::quadrature::{
    integrate, integrate_with, singular_points, ContourForm, CotFactor, IntegrandSpec, Numerator, Prepared, Projection, QuadConfig, Route,
};
use harmprog::{Cdd, Dd, Error, EvalConfig, Evaluator, ProgressionParams};
use std::sync::Arc;

fn c(x: f64) -> Cdd {
    Cdd::from_f64(x, 0.0)
}

fn pts(cot: CotFactor) -> Vec<f64> {
    singular_points(&cot, 1e-3).unwrap().iter().map(|d| d.to_f64()).collect()
}

#[test]
fn singular_point_sets() {
    assert_eq!(pts(CotFactor::cot_pi(c(2.0), c(1.0))), vec![0.0, 0.5, 1.0]);
    assert_eq!(pts(CotFactor::cot_pi(c(1.0), c(3.0))), vec![0.0]);
    assert_eq!(pts(CotFactor::coth_half(c(2.0))), vec![0.0]);
    assert_eq!(pts(CotFactor::cot_pi(c(3.0), c(1.0))).len(), 4);
}

#[test]
fn pole_near_segment_is_rejected() {
    // cot(pi u / m) with m = 0.5 + 1e-4 i has a pole at u = m
    let r = singular_points(&CotFactor::cot_pi(c(1.0), Cdd::from_f64(0.5, 1e-4)), 1e-3);
    assert!(matches!(r, Err(Error::NearPole { .. })));
    // coth(m u / 2) with m = 2 pi i has a pole at u = 1
    let r = singular_points(&CotFactor::coth_half(Cdd::new(Dd::ZERO, Dd::TAU)), 1e-3);
    assert!(matches!(r, Err(Error::NearPole { .. })));
}

fn spec(numerator: Numerator, cot: CotFactor, kernel: KernelPoly) -> IntegrandSpec {
    IntegrandSpec { numerator, cot, kernel: Arc::new(kernel), prefactor: Cdd::ONE, contour: None }
}

#[test]
fn zero_numerator() {
    let s = spec(Numerator::Zero, CotFactor::cot_pi(c(1.0), c(1.0)), KernelPoly::power(2));
    let r = integrate(&s, 1e-12).unwrap();
    assert_eq!(r.value, Cdd::ZERO);
    assert_eq!(r.abs_error_estimate, 0.0);
}

#[test]
fn dirichlet_integral() {
    // int_0^1 sin(2 pi n u) cot(pi u) du = 1 for every integer n >= 1
    for n in [1.0, 2.0, 7.0, 40.0] {
        let s = spec(Numerator::SinDiff { f1: c(n), f0: c(0.0) }, CotFactor::cot_pi(c(1.0), c(1.0)), KernelPoly::power(0));
        let r = integrate(&s, 1e-14).unwrap();
        assert!((r.value - Cdd::ONE).abs_f64() < 1e-14, "n={n}: {}", r.value);
        assert!(r.abs_error_estimate >= 0.0);
    }
}

#[test]
fn both_routes_agree() {
    // int_0^1 (e^{2 pi i n u} - 1) cot(pi u) du = i
    let n = 50i128;
    let mut s =
        spec(Numerator::ExpDiff { f1: Cdd::new(Dd::ZERO, Dd::from_i64(n as i64)), f0: Cdd::ZERO }, CotFactor::cot_pi(c(1.0), c(1.0)), KernelPoly::power(0));
    let real = integrate(&s, 1e-14).unwrap();
    assert_eq!(real.route, Route::RealSegment);
    s.contour = Some(ContourForm { a: 1, c1: n, c0: 0, projection: Projection::Complex });
    let path = integrate(&s, 1e-14).unwrap();
    assert_eq!(path.route, Route::Contour);
    for r in [&real, &path] {
        assert!((r.value - Cdd::new(Dd::ZERO, Dd::ONE)).abs_f64() < 1e-14, "{}", r.value);
    }
}

fn order_one_spec() -> IntegrandSpec {
    // sin(pi (a n + 2 b) u) sin(pi a n u) cot(pi a u) at a = b = n = 1
    spec(Numerator::SinSin { f1: c(1.5), f0: c(0.5) }, CotFactor::cot_pi(c(1.0), c(1.0)), KernelPoly::power(0))
}

#[test]
fn order_one_pipeline() {
    let ev = Evaluator::new(EvalConfig::default()).unwrap();
    let v = ev.hp_order1(&ProgressionParams::new(1, 1, 1, 1).unwrap()).unwrap().value;
    assert!((v.to_f64() - 0.5).abs() < 1e-15);
}

#[test]
fn doubling_the_budget() {
    let s = order_one_spec();
    let cfg = QuadConfig::default();
    let a = integrate_with(&s, 1e-12, &cfg).unwrap();
    let b = integrate_with(&s, 1e-12, &QuadConfig { panel_budget: 2 * cfg.panel_budget, ..cfg }).unwrap();
    assert!((a.value - b.value).abs_f64() <= a.abs_error_estimate.max(1e-30));
}

#[test]
fn tiny_budget_reports_best_estimate() {
    let s = spec(Numerator::SinDiff { f1: c(400.0), f0: c(0.0) }, CotFactor::cot_pi(c(1.0), c(1.0)), KernelPoly::power(6));
    let cfg = QuadConfig { panel_budget: 1, ..QuadConfig::default() };
    match integrate_with(&s, 1e-14, &cfg) {
        Err(Error::ToleranceNotMet { best, err }) => assert!(best.is_finite() && err > 0.0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn tolerance_stability() {
    let tol = 1e-10;
    for (a, b, n) in [(1i64, 1i64, 5u64), (2, 1, 10), (3, -1, 7), (5, 7, 3)] {
        for k in 1..=5 {
            let s = spec(
                Numerator::SinDiff { f1: c((a * n as i64 + b) as f64), f0: c(b as f64) },
                CotFactor::cot_pi(c(a as f64), c(1.0)),
                (*kernel_cached(KernelKind::SineOdd, k).unwrap()).clone(),
            );
            let x = integrate(&s, tol).unwrap().value;
            let y = integrate(&s, tol / 10.0).unwrap().value;
            let scale = x.abs_f64().max(1.0);
            assert!((x - y).abs_f64() <= 10.0 * tol * scale, "{a} {b} {n} {k}");
        }
    }
}

#[test]
fn guard_near_singular_points() {
    let cfg = QuadConfig::default();
    for (a, b, n) in [(1i64, 1i64, 3i64), (2, 1, 4), (3, -1, 5)] {
        let s = spec(Numerator::SinDiff { f1: c((a * n + b) as f64), f0: c(b as f64) }, CotFactor::cot_pi(c(a as f64), c(1.0)), KernelPoly::power(0));
        let p = Prepared::new(&s, &cfg).unwrap();
        let h = Dd::from_f64(cfg.eps_switch / 2.0);
        for (i, &sp) in p.singular_points().iter().enumerate() {
            let lim = p.guarded_limit(i).abs_f64();
            for u in [sp - h, sp + h] {
                if u.to_f64() < 0.0 || u.to_f64() > 1.0 {
                    continue;
                }
                let v = p.eval(u);
                assert!(v.is_finite());
                assert!(lim > 0.0 && v.abs_f64() <= 2.0 * lim, "a={a} s={} {} vs {lim}", sp.to_f64(), v.abs_f64());
            }
        }
    }
}

#[test]
fn deterministic() {
    let s = order_one_spec();
    let a = integrate(&s, 1e-13).unwrap();
    let b = integrate(&s, 1e-13).unwrap();
    assert_eq!(a.value, b.value);
    assert_eq!(a.abs_error_estimate.to_bits(), b.abs_error_estimate.to_bits());
    assert_eq!(a.panels, b.panels);
}
