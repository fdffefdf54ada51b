//! Cost of the closed forms as `n` grows, next to direct summation where
//! that is still affordable.

use harmprog::report::{self, HpMethod, Instance};
use harmprog::{EvalConfig, Evaluator};

fn main() -> harmprog::Result<()> {
    let ev = Evaluator::new(EvalConfig::default())?;
    let ns = [100, 10_000, 1_000_000, 1_000_000_000, 1_000_000_000_000];
    for (a, b, k) in [(1, 1, 2), (3, -1, 5), (5, 7, 8)] {
        println!("a={a} b={b} k={k}");
        let inst = Instance::Hp { method: HpMethod::Exp, a, b, k, n: 1 };
        print!("{}", report::bench_csv(&report::bench(&ev, &inst, &ns, 5)?));
    }
    Ok(())
}
