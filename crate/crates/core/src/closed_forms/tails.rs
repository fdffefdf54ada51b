//! Taylor remainders divided by a power, evaluated without cancellation for
//! small arguments:
//!
//! * cos: `(cos(wz) - sum_{j<=K} (-1)^j (wz)^{2j}/(2j)!) / z^k`
//! * sin: `(sin(wz) - sum_{j<=K} (-1)^j (wz)^{2j+1}/(2j+1)!) / z^k`
//! * exp: `(e^{wz} - sum_{j<=K} (wz)^j/j!) / z^k`
//!
//! `K = -1` subtracts nothing. Every subtracted power `p` satisfies `p <= k`,
//! so the split form only divides by `z`.

use super::inv_factorial;
use crate::dd::{Cdd, Dd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    Cos,
    Sin,
    Exp,
}

impl TailKind {
    fn power(self, j: i64) -> u32 {
        match self {
            TailKind::Cos => 2 * j as u32,
            TailKind::Sin => 2 * j as u32 + 1,
            TailKind::Exp => j as u32,
        }
    }

    fn sign(self, j: i64) -> f64 {
        match self {
            TailKind::Exp => 1.0,
            _ => {
                if j % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// The remainder over `z^k`. For the trigonometric kinds `w = 2 pi / m` and
/// the full function is evaluated in turns of `z / m`, so an integer
/// `z / m` gives an exact zero sine.
pub fn tail_over_pow(kind: TailKind, z: Cdd, m: Cdd, big_k: i64, k: u32) -> Cdd {
    let w = match kind {
        TailKind::Exp => m,
        _ => Cdd::real(Dd::TAU) / m,
    };
    let x = w * z;
    if x.abs_f64() < 1.0 {
        let mut acc = Cdd::ZERO;
        let mut j = big_k + 1;
        loop {
            let p = kind.power(j);
            let term = (w.powi(p as i32) * z.powi(p as i32 - k as i32)).scale(inv_factorial(p)).scale_f64(kind.sign(j));
            acc += term;
            if term.abs_f64() <= 1e-34 * acc.abs_f64() || j > big_k + 80 {
                break;
            }
            j += 1;
        }
        return acc;
    }
    let full = match kind {
        TailKind::Cos => (z / m).cos_turns(),
        TailKind::Sin => (z / m).sin_turns(),
        TailKind::Exp => x.exp(),
    };
    let mut acc = full * z.powi(-(k as i32));
    for j in 0..=big_k {
        let p = kind.power(j);
        let term = (w.powi(p as i32) * z.powi(p as i32 - k as i32)).scale(inv_factorial(p)).scale_f64(kind.sign(j));
        acc -= term;
    }
    acc
}
