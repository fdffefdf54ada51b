//! Exact kernel polynomials in `v = 1 - u`, checked against the Taylor
//! coefficients of their generating functions.

use harmprog::exact::{bernoulli_table, int};
use harmprog::kernels::{kernel, taylor_oracle_poly, KernelKind};

fn main() -> harmprog::Result<()> {
    let t = bernoulli_table(16);
    for kind in [KernelKind::SineEven, KernelKind::SineOdd, KernelKind::Exp] {
        for k in 0..=4 {
            let p = kernel(kind, k, &t)?;
            let terms: Vec<String> = p.dense().iter().enumerate().filter(|(_, c)| **c != int(0)).map(|(i, c)| format!("{c} v^{i}")).collect();
            let mut want = taylor_oracle_poly(kind, k);
            want.resize(p.dense().len(), int(0));
            let ok = if want == p.dense() { "ok" } else { "MISMATCH" };
            println!("{kind:<9} k={k}  [{ok}]  {}", terms.join(" + "));
        }
    }
    Ok(())
}
