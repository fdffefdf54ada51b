//! Partial Lerch sums `sum e^{m (j + b)} / (j + b)^k` and the polylogarithm
//! partial sums `sum e^{m j} / j^k`.

use harmprog::{oracle, Cdd, Dd, EvalConfig, Evaluator, LerchParams};

fn main() -> harmprog::Result<()> {
    let ev = Evaluator::new(EvalConfig::default())?;
    let cases = [
        (Cdd::from_f64(0.5, 0.0), 2, Cdd::new(Dd::ZERO, Dd::PI.ldexp(-2)), 6),
        (Cdd::from_f64(2.0, 0.0), 4, Cdd::from_f64(-0.5, 0.0), 25),
        (Cdd::from_f64(0.25, -0.5), 3, Cdd::from_f64(0.5, 1.0 / 3.0), 40),
    ];
    for (b, k, m, n) in cases {
        let l = LerchParams::new(b, k, m, n)?;
        let v = ev.lerch_partial(&l)?.value;
        let o = oracle::sum_lerch(&l).to_cdd();
        println!("b={b} k={k} m={m} n={n}: {v}  |diff| {:.1e}", (v - o).abs_f64());
    }

    // sum_{j<=n} 2^-j / j tends to ln 2
    let m = Cdd::real(Dd::HALF.ln());
    for n in [4, 40, 400_000_000] {
        println!("Li_1 partial sum at 1/2, n={n}: {}", ev.polylog_partial(1, m, n)?.value.re);
    }
    println!("ln 2                              : {}", Dd::from_f64(2.0).ln());

    match ev.polylog_partial(2, Cdd::new(Dd::ZERO, Dd::TAU), 3) {
        Ok(v) => println!("m = 2 pi i: {}", v.value),
        Err(e) => println!("m = 2 pi i rejected: {e}"),
    }
    Ok(())
}
