use harmprog::exact::{bernoulli_table, int, ratio, Rational};
use harmprog::kernels::{kernel, kernel_cached, taylor_oracle, taylor_oracle_poly, KernelKind, KernelPoly, TruncatedSeries};
use harmprog::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

const KINDS: [KernelKind; 3] = [KernelKind::SineEven, KernelKind::SineOdd, KernelKind::Exp];

#[test]
fn sine_odd_order_zero() {
    let p = kernel(KernelKind::SineOdd, 0, &bernoulli_table(4)).unwrap();
    assert_eq!(p.dense(), &[Rational::zero(), Rational::one()]);
    assert_eq!(p.eval_rational(&Rational::zero()), Rational::one());
    assert_eq!(p.eval_rational(&Rational::one()), Rational::zero());
    assert_eq!(taylor_oracle(KernelKind::SineOdd, 0, &ratio(1, 3)), ratio(2, 3));
}

#[test]
fn exp_order_one() {
    let p = kernel(KernelKind::Exp, 1, &bernoulli_table(4)).unwrap();
    assert_eq!(p.dense(), &[ratio(-1, 2), Rational::one()]);
    assert_eq!(p.eval_rational(&Rational::zero()), ratio(1, 2));
    for u in [ratio(0, 1), ratio(1, 5), ratio(7, 9)] {
        assert_eq!(taylor_oracle(KernelKind::Exp, 0, &u), Rational::one());
    }
}

#[test]
fn sine_even_order_one() {
    let p = kernel(KernelKind::SineEven, 1, &bernoulli_table(4)).unwrap();
    assert_eq!(p.dense(), &[ratio(-1, 6), Rational::zero(), ratio(1, 2)]);
    let q = kernel(KernelKind::SineEven, 2, &bernoulli_table(4)).unwrap();
    assert_eq!(q.eval_rational(&ratio(1, 2)), taylor_oracle(KernelKind::SineEven, 2, &ratio(1, 2)));
}

#[test]
fn short_table_is_an_error() {
    let r = kernel(KernelKind::SineEven, 3, &bernoulli_table(4));
    assert!(matches!(r, Err(Error::TableTooShort { needed: 6, available: 4 })));
    assert!(kernel(KernelKind::Exp, 4, &bernoulli_table(4)).is_ok());
}

#[test]
fn coefficients_match_generating_functions() {
    let t = bernoulli_table(40);
    for kind in KINDS {
        for k in 0..=10 {
            let p = kernel(kind, k, &t).unwrap();
            let mut want = taylor_oracle_poly(kind, k);
            want.resize(p.dense().len(), Rational::zero());
            assert_eq!(p.dense(), want.as_slice(), "{kind} k={k}");
        }
    }
}

#[test]
fn values_match_generating_functions() {
    let t = bernoulli_table(20);
    let us = [ratio(0, 1), ratio(1, 7), ratio(1, 3), ratio(1, 2), ratio(1, 1)];
    for kind in KINDS {
        for k in 0..=8 {
            let p = kernel(kind, k, &t).unwrap();
            for u in &us {
                assert_eq!(p.eval_rational(u), taylor_oracle(kind, k, u), "{kind} k={k} u={u}");
            }
        }
    }
}

#[test]
fn u_basis_agrees_with_v_basis() {
    let p = kernel(KernelKind::Exp, 5, &bernoulli_table(8)).unwrap();
    let cu = p.coeffs_in_u();
    let u = ratio(2, 7);
    let mut x = Rational::one();
    let mut s = Rational::zero();
    for c in &cu {
        s += c * &x;
        x *= &u;
    }
    assert_eq!(s, p.eval_rational(&u));
}

#[test]
fn power_kernel_and_cache() {
    let p = KernelPoly::power(3);
    assert_eq!(p.eval_rational(&ratio(1, 2)), ratio(1, 8));
    let a = kernel_cached(KernelKind::SineOdd, 4).unwrap();
    let b = kernel_cached(KernelKind::SineOdd, 4).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
}

#[test]
fn truncated_series_geometric() {
    let one_minus_x = TruncatedSeries::new(vec![int(1), int(-1)], 6);
    let inv = one_minus_x.inverse().unwrap();
    assert!(inv.coeffs().iter().all(|c| c.is_one()));
    assert_eq!(inv.mul(&one_minus_x).coeffs()[1..], vec![Rational::zero(); 6][..]);
    assert!(TruncatedSeries::new(vec![int(0), int(1)], 3).inverse().is_none());
}

proptest! {
    #[test]
    fn kernel_matches_oracle_at_random_u(kind in 0usize..3, k in 0u32..=6, p in -50i64..=50, q in 1i64..=40) {
        let kind = KINDS[kind];
        let u = ratio(p, q);
        let poly = kernel(kind, k, &bernoulli_table(12)).unwrap();
        prop_assert_eq!(poly.eval_rational(&u), taylor_oracle(kind, k, &u));
    }

    #[test]
    fn real_evaluation_tracks_exact(kind in 0usize..3, k in 0u32..=8, p in 0i64..=100) {
        let kind = KINDS[kind];
        let u = ratio(p, 100);
        let poly = kernel(kind, k, &bernoulli_table(16)).unwrap();
        let exact_v = harmprog::exact::rational_to_dd(&poly.eval_rational(&u)).to_f64();
        let got = poly.eval_real(harmprog::exact::rational_to_dd(&u)).to_f64();
        prop_assert!((got - exact_v).abs() <= 1e-28 + 1e-28 * exact_v.abs());
    }
}
