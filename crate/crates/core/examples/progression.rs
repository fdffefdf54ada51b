//! `sum_{j=1}^{n} 1/(a j + b)^k` by every available route.
//!
//! cargo run --release --example progression -- 3 -1 5 1000000000

use harmprog::closed_forms::SineVariant;
use harmprog::{EvalConfig, Evaluator, ProgressionParams};

fn main() -> harmprog::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, d: i64| args.get(i).map_or(d, |s| s.parse().expect("integer argument"));
    let (a, b, k, n) = (num(0, 3), num(1, -1), num(2, 5) as u32, num(3, 1_000_000_000) as u64);
    let p = ProgressionParams::new(a, b, k, n)?;
    let ev = Evaluator::new(EvalConfig::default())?;

    let exp = ev.hp_exp(&p)?;
    println!("HP_{k}({n}) for a={a}, b={b}");
    println!("  exponential kernel  {:?}  ({} panels, {:?})", exp.value, exp.panels, exp.route);
    // the product form and the recursion integrate on the real segment, so
    // their cost grows with n and large n runs out of panels
    let show = |name: &str, r: harmprog::Result<harmprog::Evaluation<harmprog::Dd>>| match r {
        Ok(e) => println!("  {name:<19} {:?}  ({} panels, {:?})", e.value, e.panels, e.route),
        Err(e) => println!("  {name:<19} {e}"),
    };
    show("sine, sum form", ev.hp_sine(&p, SineVariant::Sum));
    show("sine, product form", ev.hp_sine(&p, SineVariant::Product));
    show("recursion", ev.hp_recursive(&p));
    if n <= 100_000 {
        println!("  direct (oracle)     {}", harmprog::oracle::sum_hp(&p).re);
    }
    Ok(())
}
