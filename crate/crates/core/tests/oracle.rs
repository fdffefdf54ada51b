use harmprog::closed_forms::{FourierKind, TrigKind};
use harmprog::oracle::{self, Order};
use harmprog::{Cdd, Dd, FourierParams, LerchParams, ProgressionParams};

fn pp(a: i64, b: i64, k: u32, n: u64) -> ProgressionParams {
    ProgressionParams::new(a, b, k, n).unwrap()
}

#[test]
fn progression_examples() {
    let v = oracle::sum_hp(&pp(2, 1, 1, 2)).re_dd();
    assert!((v - Dd::from_i64(8) / Dd::from_i64(15)).abs().to_f64() < 1e-31);
    let v = oracle::sum_hp(&pp(1, 0, 2, 3)).re_dd();
    assert!((v - Dd::from_i64(49) / Dd::from_i64(36)).abs().to_f64() < 1e-31);
    let direct: f64 = (1..=20).map(|j| 1.0 / (3.0 * j as f64 - 1.0).powi(5)).sum();
    assert!((oracle::sum_hp(&pp(3, -1, 5, 20)).re_dd().to_f64() - direct).abs() < 1e-16);
}

#[test]
fn fourier_examples() {
    for n in [1, 7, 30] {
        let f = FourierParams::new(pp(1, 0, 2, n), Cdd::ONE).unwrap();
        let x = oracle::sum_fourier(&f, FourierKind::Cos);
        assert!(x.rel_diff(&oracle::sum_hp(&f.base)) < 1e-40);
        let f = FourierParams::new(pp(1, 0, 3, n), Cdd::from_f64(2.0, 0.0)).unwrap();
        assert!(oracle::sum_fourier(&f, FourierKind::Sin).to_cdd().abs_f64() < 1e-50);
    }
    let f = FourierParams::new(pp(2, 1, 2, 9), Cdd::from_f64(3.5, 0.0)).unwrap();
    let direct: f64 = (1..=9)
        .map(|j| {
            let x = 2.0 * j as f64 + 1.0;
            (std::f64::consts::TAU * x / 3.5).cos() / (x * x)
        })
        .sum();
    assert!((oracle::sum_fourier(&f, FourierKind::Cos).re_dd().to_f64() - direct).abs() < 1e-15);
}

#[test]
fn lerch_examples() {
    let l = LerchParams::new(Cdd::ONE, 1, Cdd::from_f64(-1.0, 0.0), 1).unwrap();
    assert!((oracle::sum_lerch(&l).re_dd().to_f64() - (-2.0f64).exp() / 2.0).abs() < 1e-17);
    let l = LerchParams::new(Cdd::from_f64(3.0, 0.0), 4, Cdd::ZERO, 11).unwrap();
    assert!(oracle::sum_lerch(&l).rel_diff(&oracle::sum_hp(&pp(1, 3, 4, 11))) < 1e-40);
    let l = LerchParams::new(Cdd::from_f64(0.5, 0.0), 2, Cdd::from_f64(0.0, std::f64::consts::FRAC_PI_4), 6).unwrap();
    let (mut re, mut im) = (0.0, 0.0);
    for j in 1..=6 {
        let x = j as f64 + 0.5;
        let t = std::f64::consts::FRAC_PI_4 * x;
        re += t.cos() / (x * x);
        im += t.sin() / (x * x);
    }
    let v = oracle::sum_lerch(&l).to_cdd();
    assert!((v.re.to_f64() - re).abs() < 1e-15 && (v.im.to_f64() - im).abs() < 1e-15);
}

#[test]
fn lagrange_examples() {
    let (a, b, n) = (Dd::from_f64(0.3), Dd::from_f64(-1.2), Dd::from_f64(2.5));
    let one = oracle::sum_lagrange(TrigKind::Sin, a, b, n, 1).re_dd().to_f64();
    assert!((one - (std::f64::consts::TAU * 2.5 * (0.3 - 1.2)).sin()).abs() < 1e-15);
    assert_eq!(oracle::sum_lagrange(TrigKind::Sin, a, b, Dd::ZERO, 6).re_dd(), Dd::ZERO);
    let direct: f64 = (1..=6).map(|j| (std::f64::consts::TAU * 2.5 * (0.3 * j as f64 - 1.2) / 6.0).cos()).sum();
    assert!((oracle::sum_lagrange(TrigKind::Cos, a, b, n, 6).re_dd().to_f64() - direct).abs() < 1e-14);
}

#[test]
fn summation_order_does_not_matter() {
    for p in [pp(1, 0, 1, 100_000), pp(3, -1, 5, 2000), pp(7, 2, 2, 50_000)] {
        let f = oracle::sum_hp_ordered(&p, Order::Forward);
        let r = oracle::sum_hp_ordered(&p, Order::Reverse);
        assert!(f.rel_diff(&r) <= 1e-25, "{p:?}");
    }
    let f = FourierParams::new(pp(2, 1, 3, 5000), Cdd::from_f64(3.0, 0.5)).unwrap();
    for kind in [FourierKind::Cos, FourierKind::Sin] {
        let x = oracle::sum_fourier_ordered(&f, kind, Order::Forward);
        let y = oracle::sum_fourier_ordered(&f, kind, Order::Reverse);
        assert!(x.rel_diff(&y) <= 1e-25, "{kind:?} {} {x} {y}", x.rel_diff(&y));
    }
    let l = LerchParams::new(Cdd::from_f64(0.5, 0.0), 3, Cdd::from_f64(-0.01, 0.3), 5000).unwrap();
    let x = oracle::sum_lerch_ordered(&l, Order::Forward);
    let y = oracle::sum_lerch_ordered(&l, Order::Reverse);
    assert!(x.rel_diff(&y) <= 1e-25);
}

#[test]
fn carries_more_digits_than_double_double() {
    let v = oracle::sum_hp(&pp(1, 0, 1, 3));
    let s = v.to_string();
    assert!(s.contains("1.8333333333333333333333333333333"), "{s}");
}
