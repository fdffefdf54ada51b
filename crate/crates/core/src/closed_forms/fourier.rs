use super::tails::{tail_over_pow, TailKind};
use super::{inv_factorial, sign, Acc, Evaluation, Evaluator, FourierParams, ProgressionParams};
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::kernels::KernelPoly;
use crate::quadrature::{CotFactor, IntegrandSpec, Numerator};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourierKind {
    Cos,
    Sin,
}

/// Progression with a possibly complex shift, used internally.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Shifted {
    pub a: i64,
    pub b: Cdd,
    pub n: u64,
}

impl Shifted {
    fn last(&self) -> Cdd {
        Cdd::real(Dd::from_i128(self.a as i128 * self.n as i128)) + self.b
    }
}

/// Source of `HP_j(n)` values at a given inner tolerance.
pub(crate) trait HpSource {
    fn hp(&mut self, ev: &Evaluator, j: u32, tol: f64) -> Result<Evaluation<Cdd>>;
}

/// Integer shift: the exponential-kernel form, memoized by order.
pub(crate) struct IntegerHp {
    pub p: ProgressionParams,
    memo: Vec<Option<(f64, Evaluation<Cdd>)>>,
}

impl IntegerHp {
    pub fn new(p: ProgressionParams) -> IntegerHp {
        IntegerHp { p, memo: Vec::new() }
    }
}

impl HpSource for IntegerHp {
    fn hp(&mut self, ev: &Evaluator, j: u32, tol: f64) -> Result<Evaluation<Cdd>> {
        let idx = j as usize;
        if self.memo.len() <= idx {
            self.memo.resize(idx + 1, None);
        }
        if let Some((t, e)) = self.memo[idx] {
            if t <= tol {
                return Ok(e);
            }
        }
        let e = ev.with_tol(tol).hp_exp_complex(&self.p.with_k(j))?;
        self.memo[idx] = Some((tol, e));
        Ok(e)
    }
}

impl Evaluator {
    /// One pass of the partial Fourier sum formula for either kind and parity.
    /// With `skip_top`, the `HP_k` term of the cosine formulas is left out.
    pub(crate) fn fourier_pass(&self, s: &Shifted, k: u32, m: Cdd, kind: FourierKind, skip_top: bool, hp: &mut dyn HpSource, t: f64) -> Result<Acc> {
        let big_k = k / 2;
        let even = k.is_multiple_of(2);
        let w = Cdd::real(Dd::TAU) / m;
        let z1 = s.last();
        let z0 = s.b;
        let (tail_kind, tail_k) = match (kind, even) {
            (FourierKind::Cos, _) => (TailKind::Cos, big_k as i64),
            (FourierKind::Sin, false) => (TailKind::Sin, big_k as i64),
            (FourierKind::Sin, true) => (TailKind::Sin, big_k as i64 - 1),
        };
        let mut acc = Acc::new();
        let mut bnd = tail_over_pow(tail_kind, z1, m, tail_k, k);
        if !z0.is_zero() {
            bnd -= tail_over_pow(tail_kind, z0, m, tail_k, k);
        }
        acc.add(bnd.ldexp(-1));

        // (power of w, HP order, sign) for each ingredient
        let mut terms: Vec<(u32, u32, f64)> = Vec::new();
        match (kind, even) {
            (FourierKind::Cos, true) => {
                for j in 1..=big_k {
                    terms.push((2 * big_k - 2 * j, 2 * j, sign(big_k - j)));
                }
            }
            (FourierKind::Sin, false) => {
                for j in 1..=big_k {
                    terms.push((2 * big_k + 1 - 2 * j, 2 * j, sign(big_k - j)));
                }
            }
            (FourierKind::Cos, false) => {
                for j in 0..=big_k {
                    terms.push((2 * big_k - 2 * j, 2 * j + 1, sign(big_k - j)));
                }
            }
            (FourierKind::Sin, true) => {
                for j in 0..big_k {
                    terms.push((2 * big_k - 1 - 2 * j, 2 * j + 1, -sign(big_k - j)));
                }
            }
        }
        for (pw, order, sg) in terms {
            if skip_top && order == k {
                continue;
            }
            let c = w.powi(pw as i32).scale(inv_factorial(pw)).scale_f64(sg);
            let h = hp.hp(self, order, t)?;
            acc.add_scaled(c, &h);
        }

        // integral: (1-u)^p (trig(w z1 u) - trig(w z0 u)) cot(pi a u / m)
        let (p, sg) = match (kind, even) {
            (FourierKind::Cos, true) => (2 * big_k - 1, sign(big_k)),
            (FourierKind::Sin, false) => (2 * big_k, sign(big_k)),
            (FourierKind::Cos, false) => (2 * big_k, sign(big_k)),
            (FourierKind::Sin, true) => (2 * big_k - 1, -sign(big_k)),
        };
        let f1 = z1 / m;
        let f0 = z0 / m;
        let numerator = if (kind == FourierKind::Cos) == even { Numerator::SinDiff { f1, f0 } } else { Numerator::CosDiff { f1, f0 } };
        let prefactor = w.powi(k as i32).scale(inv_factorial(p)).scale_f64(sg * 0.5);
        let spec = IntegrandSpec {
            numerator,
            cot: CotFactor::cot_pi(Cdd::real(Dd::from_i64(s.a)), m),
            kernel: Arc::new(KernelPoly::power(p)),
            prefactor,
            contour: None,
        };
        acc.add_integral(&self.quad(&spec, t)?);
        Ok(acc)
    }

    /// `sum_{j=1}^{n} cos or sin(2 pi (aj+b)/m) / (aj+b)^k`.
    pub fn fourier(&self, f: &FourierParams, kind: FourierKind) -> Result<Evaluation<Cdd>> {
        f.base.validate()?;
        if f.m.is_zero() || !f.m.is_finite() {
            return Err(Error::Validation("m must be finite and nonzero".into()));
        }
        let p = f.base;
        let s = Shifted { a: p.a, b: Cdd::real(Dd::from_i64(p.b)), n: p.n };
        let mut hp = IntegerHp::new(p);
        self.refine(|t| self.fourier_pass(&s, p.k, f.m, kind, false, &mut hp, t))
    }

    fn fourier_checked(&self, f: &FourierParams, kind: FourierKind, even: bool, name: &str) -> Result<Evaluation<Cdd>> {
        if f.base.k.is_multiple_of(2) != even {
            return Err(Error::Validation(format!("{name} needs {} order, got {}", if even { "an even" } else { "an odd" }, f.base.k)));
        }
        self.fourier(f, kind)
    }

    pub fn fourier_c_even(&self, f: &FourierParams) -> Result<Evaluation<Cdd>> {
        self.fourier_checked(f, FourierKind::Cos, true, "fourier_c_even")
    }

    pub fn fourier_s_odd(&self, f: &FourierParams) -> Result<Evaluation<Cdd>> {
        self.fourier_checked(f, FourierKind::Sin, false, "fourier_s_odd")
    }

    pub fn fourier_c_odd(&self, f: &FourierParams) -> Result<Evaluation<Cdd>> {
        self.fourier_checked(f, FourierKind::Cos, false, "fourier_c_odd")
    }

    pub fn fourier_s_even(&self, f: &FourierParams) -> Result<Evaluation<Cdd>> {
        self.fourier_checked(f, FourierKind::Sin, true, "fourier_s_even")
    }
}
