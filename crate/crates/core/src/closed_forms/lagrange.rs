//! Finite sums `sum_{j=1}^{K} sin or cos(2 pi n (a j + b) / K)` in closed
//! form, and the power series for the right-hand side pieces.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigKind {
    Sin,
    Cos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Series for `sin(2 pi n (a + b/K))`.
    Series1,
    /// Series for `sin(pi n (a + 2b/K)) sin(pi a n) cot(pi a n / K)`.
    Series2,
}

/// `-1/2 f(2 pi b n/K) + 1/2 f(2 pi n (a + b/K)) + f(pi n (a + 2b/K)) sin(pi a n) cot(pi a n/K)`.
pub fn lagrange_closed_form(kind: TrigKind, a: Dd, b: Dd, n: Dd, big_k: u32) -> Result<Dd> {
    if big_k == 0 {
        return Err(Error::Validation("K must be positive".into()));
    }
    if !(a.is_finite() && b.is_finite() && n.is_finite()) {
        return Err(Error::Validation("a, b, n must be finite".into()));
    }
    let kd = Dd::from_i64(big_k as i64);
    let t = a * n / kd;
    let (s, c) = t.ldexp(-1).sin_cos_turns();
    if t.is_integer() || s.is_zero() {
        return Err(Error::CotPole);
    }
    let f = |x: Dd| match kind {
        TrigKind::Sin => x.sin_turns(),
        TrigKind::Cos => x.cos_turns(),
    };
    let first = f(b * n / kd);
    let second = f(n * (a + b / kd));
    let third = f((n * (a + (b + b) / kd)).ldexp(-1)) * (a * n).ldexp(-1).sin_turns() * c / s;
    Ok((second - first).ldexp(-1) + third)
}

/// Truncated series (`i = 0..=trunc`) and the closed right-hand side, both
/// in working precision. Inner coefficient sums are exact.
pub fn lagrange_series_check(which: SeriesKind, a: &Rational, b: &Rational, n: &Rational, big_k: u32, trunc: u32) -> (Dd, Dd) {
    let kr = exact::int(big_k as i64);
    let top = 2 * trunc as usize + 2;
    let powers = |x: &Rational| {
        let mut v = vec![Rational::one()];
        for i in 1..=top {
            let next = &v[i - 1] * x;
            v.push(next);
        }
        v
    };
    let pb = powers(b);
    let inv_fact: Vec<Rational> = (0..=top as u32).map(|i| exact::factorial(i).recip()).collect();

    let inners: Vec<Rational> = match which {
        SeriesKind::Series1 => {
            let pak = powers(&(a * &kr));
            (0..=trunc as usize)
                .map(|i| {
                    let mut s = Rational::zero();
                    for l in 0..=2 * i + 1 {
                        s += &pb[2 * i + 1 - l] * &pak[l] * &inv_fact[l] * &inv_fact[2 * i + 1 - l];
                    }
                    s
                })
                .collect()
        }
        SeriesKind::Series2 => {
            let pa = powers(a);
            let pk = powers(&kr);
            let bern = exact::bernoulli_numbers(top);
            let c = |j: usize, shift: usize| {
                let mut s = Rational::zero();
                for p in 0..=j {
                    let e = 2 * j + shift - 2 * p;
                    s += &bern[2 * p] * &pk[e] * &inv_fact[e] * &inv_fact[2 * p];
                }
                s
            };
            let c1: Vec<Rational> = (0..=trunc as usize).map(|j| c(j, 1)).collect();
            let c2: Vec<Rational> = (0..=trunc as usize).map(|j| c(j, 2)).collect();
            (0..=trunc as usize)
                .map(|i| {
                    let mut s = Rational::zero();
                    for j in 0..=i {
                        s += &pb[2 * i + 1 - 2 * j] * &pa[2 * j] * &inv_fact[2 * i + 1 - 2 * j] * &c1[j];
                        s += &pb[2 * i - 2 * j] * &pa[2 * j + 1] * &inv_fact[2 * i - 2 * j] * &c2[j];
                    }
                    s
                })
                .collect()
        }
    };

    let x = exact::rational_to_dd(&(n / &kr)) * Dd::TAU;
    let x2 = x.sqr();
    let mut xp = x;
    let mut lhs = Dd::ZERO;
    for (i, inner) in inners.iter().enumerate() {
        let term = xp * exact::rational_to_dd(inner);
        lhs += if i % 2 == 0 { term } else { -term };
        xp *= x2;
    }

    let ad = exact::rational_to_dd(a);
    let bd = exact::rational_to_dd(b);
    let nd = exact::rational_to_dd(n);
    let kd = Dd::from_i64(big_k as i64);
    let rhs = match which {
        SeriesKind::Series1 => (nd * (ad + bd / kd)).sin_turns(),
        SeriesKind::Series2 => {
            let lead = (nd * (ad + (bd + bd) / kd)).ldexp(-1).sin_turns();
            let t = a * n / &kr;
            if let Some(q) = exact::as_integer(&t) {
                // sin(pi K t) cot(pi t) -> K (-1)^{K q} at integer t
                let odd = (q * num_bigint::BigInt::from(big_k)) % 2u32 != num_bigint::BigInt::zero();
                let v = lead * kd;
                if odd {
                    -v
                } else {
                    v
                }
            } else {
                let (s, c) = exact::rational_to_dd(&t).ldexp(-1).sin_cos_turns();
                lead * (ad * nd).ldexp(-1).sin_turns() * c / s
            }
        }
    };
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(kind: TrigKind, a: f64, b: f64, n: f64, k: u32) -> f64 {
        (1..=k)
            .map(|j| {
                let x = std::f64::consts::TAU * n * (a * j as f64 + b) / k as f64;
                match kind {
                    TrigKind::Sin => x.sin(),
                    TrigKind::Cos => x.cos(),
                }
            })
            .sum()
    }

    #[test]
    fn full_period_vanishes() {
        for kind in [TrigKind::Sin, TrigKind::Cos] {
            let v = lagrange_closed_form(kind, Dd::ONE, Dd::ZERO, Dd::ONE, 5).unwrap();
            assert!(v.to_f64().abs() < 1e-30, "{kind:?} {v:?}");
        }
    }

    #[test]
    fn matches_direct_sum() {
        let (a, b, n) = (0.7, 0.3, 1.9);
        for kind in [TrigKind::Sin, TrigKind::Cos] {
            let v = lagrange_closed_form(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), 6).unwrap();
            assert!((v.to_f64() - direct(kind, a, b, n, 6)).abs() < 1e-12);
        }
    }

    #[test]
    fn integer_ratio_is_a_pole() {
        let r = lagrange_closed_form(TrigKind::Sin, Dd::from_f64(2.0), Dd::ZERO, Dd::from_f64(3.0), 6);
        assert!(matches!(r, Err(Error::CotPole)));
    }

    #[test]
    fn series_at_zero_n() {
        for which in [SeriesKind::Series1, SeriesKind::Series2] {
            let (l, r) = lagrange_series_check(which, &exact::ratio(3, 2), &exact::ratio(1, 3), &Rational::zero(), 4, 10);
            assert!(l.is_zero() && r.to_f64().abs() < 1e-30, "{which:?}");
        }
    }

    #[test]
    fn series1_with_zero_a() {
        let (l, r) = lagrange_series_check(SeriesKind::Series1, &Rational::zero(), &exact::int(1), &exact::ratio(1, 4), 2, 30);
        assert!((l.to_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((l - r).abs().to_f64() < 1e-28);
    }

    #[test]
    fn series2_generic() {
        let (l, r) = lagrange_series_check(SeriesKind::Series2, &exact::ratio(13, 10), &exact::ratio(1, 5), &exact::ratio(7, 10), 3, 40);
        assert!((l - r).abs().to_f64() < 1e-25, "{l:?} {r:?}");
    }
}
