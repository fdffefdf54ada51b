//! Bernoulli numbers and exact power sums `1^p + ... + n^p`.

use harmprog::exact::{bernoulli_table, faulhaber_even, faulhaber_odd, int, power_sum_oracle};

fn main() {
    let t = bernoulli_table(20);
    for (j, b) in t.values().iter().enumerate().filter(|(j, _)| *j < 2 || j % 2 == 0) {
        println!("B_{j:<2} = {b}");
    }
    let n = 1_000_000_007i64;
    for p in [1u32, 2, 5, 10] {
        let s = if p % 2 == 0 { faulhaber_even(p / 2, &int(n)) } else { faulhaber_odd(p / 2, &int(n)) };
        println!("sum_(j<={n}) j^{p} = {s}");
    }
    assert_eq!(faulhaber_odd(3, &int(50)), power_sum_oracle(7, 50));
}
