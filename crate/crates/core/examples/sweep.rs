//! Run a verification sweep over a small grid and print the records as CSV.
//! `hprog verify` does the same from the command line.

use harmprog::closed_forms::FourierKind;
use harmprog::report::{self, Bounds, FourierGrid, GridSpec, HpGrid, HpMethod};
use harmprog::{EvalConfig, Evaluator};

fn main() -> harmprog::Result<()> {
    let ev = Evaluator::new(EvalConfig::default())?;
    let grid = GridSpec {
        hp: Some(HpGrid { methods: HpMethod::ALL.to_vec(), a: vec![1, 3], b: vec![-1, 2], k: vec![1, 4, 7], n: vec![5, 50] }),
        fourier: Some(FourierGrid {
            m: vec![[3.5, 0.0], [3.0, 0.5]],
            kinds: vec![FourierKind::Cos, FourierKind::Sin],
            a: vec![2],
            b: vec![1],
            k: vec![2, 3],
            n: vec![25],
        }),
        lerch: None,
    };
    let rep = report::verify(&ev, &grid, &Bounds::default());
    print!("{}", rep.to_csv());
    eprintln!("{} records, {} failures, max relative error {:.2e}", rep.summary.records, rep.summary.failures, rep.summary.max_rel_error);
    Ok(())
}
