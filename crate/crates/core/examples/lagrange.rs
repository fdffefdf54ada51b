//! Finite trigonometric sums `sum_{j=1}^{K} sin or cos(2 pi n (a j + b)/K)`
//! in closed form, and the power-series forms of the closed right-hand side.

use harmprog::closed_forms::{lagrange_closed_form, lagrange_series_check, SeriesKind, TrigKind};
use harmprog::exact::ratio;
use harmprog::{oracle, Dd};

fn main() -> harmprog::Result<()> {
    let (a, b, n, big_k) = (0.7, 0.3, 1.9, 6);
    for kind in [TrigKind::Sin, TrigKind::Cos] {
        let v = lagrange_closed_form(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k)?;
        let o = oracle::sum_lagrange(kind, Dd::from_f64(a), Dd::from_f64(b), Dd::from_f64(n), big_k).re_dd();
        println!("{kind:?}: closed {v:?}  direct {o:?}");
    }

    let (a, b, n) = (ratio(13, 10), ratio(1, 5), ratio(7, 10));
    for which in [SeriesKind::Series1, SeriesKind::Series2] {
        for trunc in [5, 10, 20, 40] {
            let (lhs, rhs) = lagrange_series_check(which, &a, &b, &n, 3, trunc);
            println!("{which:?} with {trunc:>2} terms: {:?}  (off by {:.1e})", lhs, (lhs - rhs).abs().to_f64());
        }
    }
    Ok(())
}
