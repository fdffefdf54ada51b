//! Partial Fourier sums `sum cos or sin(2 pi (a j + b)/m) / (a j + b)^k`,
//! including a complex `m`, against direct summation.

use harmprog::closed_forms::FourierKind;
use harmprog::{oracle, Cdd, EvalConfig, Evaluator, FourierParams, ProgressionParams};

fn main() -> harmprog::Result<()> {
    let ev = Evaluator::new(EvalConfig::default())?;
    let base = ProgressionParams::new(2, 1, 3, 25)?;
    for m in [Cdd::from_f64(3.0, 0.0), Cdd::from_f64(std::f64::consts::E, 0.0), Cdd::from_f64(3.0, 0.5)] {
        let f = FourierParams::new(base, m)?;
        for kind in [FourierKind::Cos, FourierKind::Sin] {
            let v = ev.fourier(&f, kind)?.value;
            let o = oracle::sum_fourier(&f, kind).to_cdd();
            println!("m = {m:<28} {kind:?}  {v}   |diff| {:.1e}", (v - o).abs_f64());
        }
    }

    // real-segment integrals: the panel count grows with n / m
    for n in [100, 1_000, 10_000] {
        let f = FourierParams::new(ProgressionParams::new(1, 0, 4, n)?, Cdd::from_f64(7.0, 0.0))?;
        let e = ev.fourier_c_even(&f)?;
        println!("m = 7, n = {n:>6}: C = {}  ({} panels)", e.value.re, e.panels);
    }
    Ok(())
}
