use super::fourier::{FourierKind, HpSource, IntegerHp, Shifted};
use super::tails::{tail_over_pow, TailKind};
use super::{inv_factorial, Acc, Evaluation, Evaluator, LerchParams, ProgressionParams};
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::exact;
use crate::kernels::KernelPoly;
use crate::quadrature::{CotFactor, IntegrandSpec, Numerator, Route};
use std::sync::Arc;

/// Distance to the nearest integer below which the binomial shift series
/// replaces the bootstrap from the `m = 1` Fourier formulas.
const SHIFT_RADIUS: f64 = 0.05;

/// Largest `Re(m (n + b))` whose exponential is still a finite double.
const MAX_GROWTH: f64 = 700.0;

/// `HP_j(n; 1, b)` for a possibly non-integer, complex `b`.
enum GeneralHp {
    Integer(IntegerHp),
    /// `HP_k(b0 + d) = sum_r (-1)^r C(k+r-1, r) d^r HP_{k+r}(b0)`
    Shift {
        d: Cdd,
        base: IntegerHp,
    },
    /// `HP_k = (X + iY) / (e^{2 pi i b} - 1)` where `X` is the `m = 1` cosine
    /// formula without its `HP_k` term and `Y` the sine formula.
    Bootstrap {
        s: Shifted,
        done: Vec<(f64, Evaluation<Cdd>)>,
    },
}

impl GeneralHp {
    fn new(b: Cdd, n: u64) -> GeneralHp {
        let b0 = b.re.round();
        let d = b - Cdd::real(b0);
        let b0i = b0.to_f64() as i64;
        let base = |b0i: i64| IntegerHp::new(ProgressionParams { a: 1, b: b0i, k: 1, n });
        // j + b0 = 0 for some j in 1..=n rules out expanding around b0
        let b0_ok = b0i >= 0 || (-b0i) as u64 > n;
        if d.is_zero() {
            GeneralHp::Integer(base(b0i))
        } else if d.abs_f64() <= SHIFT_RADIUS && b0_ok {
            GeneralHp::Shift { d, base: base(b0i) }
        } else {
            GeneralHp::Bootstrap { s: Shifted { a: 1, b, n }, done: Vec::new() }
        }
    }
}

impl HpSource for GeneralHp {
    fn hp(&mut self, ev: &Evaluator, j: u32, tol: f64) -> Result<Evaluation<Cdd>> {
        match self {
            GeneralHp::Integer(h) => h.hp(ev, j, tol),
            GeneralHp::Shift { d, base } => {
                let mut acc = Acc::new();
                let mut dr = Cdd::ONE;
                for r in 0..80u32 {
                    let c = exact::bigint_to_dd(&exact::binomial(j + r - 1, r));
                    let coef = dr.scale(c).scale_f64(if r % 2 == 0 { 1.0 } else { -1.0 });
                    let h = base.hp(ev, j + r, tol)?;
                    let before = acc.value.abs_f64();
                    acc.add_scaled(coef, &h);
                    if r > 0 && (coef * h.value).abs_f64() <= 1e-33 * before.max(acc.value.abs_f64()) {
                        break;
                    }
                    dr *= *d;
                }
                Ok(acc.finish())
            }
            GeneralHp::Bootstrap { s, done } => {
                if done.iter().any(|(t, _)| *t > tol) {
                    done.clear();
                }
                while done.len() < j as usize {
                    let k = done.len() as u32 + 1;
                    let s_copy = *s;
                    let mut lower = Prefilled { vals: done.clone() };
                    let x = ev.fourier_pass(&s_copy, k, Cdd::ONE, FourierKind::Cos, true, &mut lower, tol)?;
                    let y = ev.fourier_pass(&s_copy, k, Cdd::ONE, FourierKind::Sin, false, &mut lower, tol)?;
                    let denom = s_copy.b.mul_i().scale(Dd::TAU).exp() - Cdd::ONE;
                    let num = x.value + y.value.mul_i();
                    let err = (x.clone().finish().abs_error_estimate + y.clone().finish().abs_error_estimate) / denom.abs_f64();
                    let mut acc = Acc::new();
                    acc.value = num / denom;
                    acc.err = err;
                    acc.absorb(x.panels + y.panels, x.integrals + y.integrals, Route::RealSegment);
                    done.push((tol, acc.finish()));
                }
                Ok(done[j as usize - 1].1)
            }
        }
    }
}

/// Already computed lower orders.
struct Prefilled {
    vals: Vec<(f64, Evaluation<Cdd>)>,
}

impl HpSource for Prefilled {
    fn hp(&mut self, _ev: &Evaluator, j: u32, _tol: f64) -> Result<Evaluation<Cdd>> {
        Ok(self.vals[j as usize - 1].1)
    }
}

/// The `b` boundary pair `-e^{mb}/(2 b^k) + (1/(2 b^k)) sum_{j<=k} (mb)^j/j!`,
/// which the `b = 0` form drops; it tends to zero with `b`.
pub fn lerch_dropped_pair(b: Cdd, k: u32, m: Cdd) -> Cdd {
    -tail_over_pow(TailKind::Exp, b, m, k as i64, k).ldexp(-1)
}

impl Evaluator {
    /// `sum_{j=1}^{n} e^{m (j + b)} / (j + b)^k`.
    pub fn lerch_partial(&self, l: &LerchParams) -> Result<Evaluation<Cdd>> {
        l.validate()?;
        let mut hp = GeneralHp::new(l.b, l.n);
        if l.m.abs_f64() < self.cfg.eps_m {
            let tol = self.cfg.tol;
            return self.refine(|t| {
                let mut acc = Acc::new();
                acc.add_scaled(Cdd::ONE, &hp.hp(self, l.k, t.min(tol))?);
                Ok(acc)
            });
        }
        let k = l.k;
        let m = l.m;
        let z1 = Cdd::real(Dd::from_i128(l.n as i128)) + l.b;
        let z0 = l.b;
        let growth = (m * z1).re.to_f64().max((m * z0).re.to_f64());
        if growth > MAX_GROWTH {
            return Err(Error::Validation(format!("e^(m (n + b)) = e^{growth:.0} is outside the double range")));
        }
        let inv_tau = Dd::FRAC_1_TAU;
        let spec = IntegrandSpec {
            numerator: Numerator::ExpDiff { f1: (m * z1).scale(inv_tau), f0: (m * z0).scale(inv_tau) },
            cot: CotFactor::coth_half(m),
            kernel: Arc::new(KernelPoly::power(k - 1)),
            prefactor: m.powi(k as i32).scale(inv_factorial(k - 1)).ldexp(-1),
            contour: None,
        };
        self.refine(|t| {
            let mut acc = Acc::new();
            let mut bnd = tail_over_pow(TailKind::Exp, z1, m, k as i64, k);
            if !z0.is_zero() {
                bnd -= tail_over_pow(TailKind::Exp, z0, m, k as i64, k);
            }
            acc.add(bnd.ldexp(-1));
            for j in 1..=k {
                let c = m.powi((k - j) as i32).scale(inv_factorial(k - j));
                let h = hp.hp(self, j, t)?;
                acc.add_scaled(c, &h);
            }
            acc.add_integral(&self.quad(&spec, t)?);
            Ok(acc)
        })
    }

    /// `sum_{j=1}^{n} e^{m j} / j^k`, the `b = 0` case.
    pub fn polylog_partial(&self, k: u32, m: Cdd, n: u64) -> Result<Evaluation<Cdd>> {
        self.lerch_partial(&LerchParams::new(Cdd::ZERO, k, m, n)?)
    }
}
