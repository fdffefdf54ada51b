use super::{i_pow, inv_factorial, sign, Acc, Evaluation, Evaluator, ProgressionParams};
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use crate::kernels::{kernel_cached, KernelKind, KernelPoly};
use crate::quadrature::{ContourForm, CotFactor, IntegrandSpec, Numerator, Projection};
use std::sync::Arc;

/// Which integrand of the sine approach to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SineVariant {
    /// `sin(pi(an+2b)u) sin(pi a n u)` (odd) or `cos(...) sin(...)` (even).
    Product,
    /// The same rewritten as a difference of sines (even) or cosines (odd).
    Sum,
}

fn ddi(x: i128) -> Dd {
    Dd::from_i128(x)
}

/// `1 / x^k`.
fn inv_pow(x: i128, k: u32) -> Dd {
    ddi(x).recip().powi(k as i32)
}

/// `-1/(2 b^k) + 1/(2 (an+b)^k)`, the `b` term dropped when `b = 0`.
fn simple_boundary(p: &ProgressionParams, k: u32) -> Dd {
    let mut v = inv_pow(p.last(), k).ldexp(-1);
    if p.b != 0 {
        v -= inv_pow(p.b as i128, k).ldexp(-1);
    }
    v
}

fn cot_pi_a(a: i64) -> CotFactor {
    CotFactor::cot_pi(Cdd::real(Dd::from_i64(a)), Cdd::ONE)
}

fn turns(x: i128) -> Cdd {
    Cdd::real(ddi(x))
}

fn half_turns(x: i128) -> Cdd {
    Cdd::real(ddi(x).ldexp(-1))
}

impl Evaluator {
    fn exp_spec(&self, p: &ProgressionParams) -> Result<IntegrandSpec> {
        let k = p.k;
        Ok(IntegrandSpec {
            numerator: Numerator::ExpDiff { f1: turns(p.last()).mul_i(), f0: turns(p.b as i128).mul_i() },
            cot: cot_pi_a(p.a),
            kernel: kernel_cached(KernelKind::Exp, k)?,
            // i (2 pi i)^k / 2
            prefactor: i_pow(k + 1).scale(Dd::TAU.powi(k as i32)).ldexp(-1),
            contour: Some(ContourForm { a: p.a, c1: p.last(), c0: p.b as i128, projection: Projection::Complex }),
        })
    }

    /// Integrand of the sine approach for order `k`.
    fn sine_spec(&self, p: &ProgressionParams, variant: SineVariant) -> Result<IntegrandSpec> {
        let k = p.k;
        let big_k = k / 2;
        let even = k.is_multiple_of(2);
        let kernel = kernel_cached(if even { KernelKind::SineEven } else { KernelKind::SineOdd }, big_k)?;
        let tau_k = Dd::TAU.powi(k as i32);
        let s = sign(big_k);
        let x = p.last();
        let spec = match (variant, even) {
            (SineVariant::Sum, true) => IntegrandSpec {
                numerator: Numerator::SinDiff { f1: turns(x), f0: turns(p.b as i128) },
                cot: cot_pi_a(p.a),
                kernel,
                prefactor: Cdd::real(tau_k.mul_f64(-s).ldexp(-1)),
                contour: Some(ContourForm { a: p.a, c1: x, c0: p.b as i128, projection: Projection::Imag }),
            },
            (SineVariant::Sum, false) => IntegrandSpec {
                numerator: Numerator::CosDiff { f1: turns(x), f0: turns(p.b as i128) },
                cot: cot_pi_a(p.a),
                kernel,
                prefactor: Cdd::real(tau_k.mul_f64(-s).ldexp(-1)),
                contour: Some(ContourForm { a: p.a, c1: x, c0: p.b as i128, projection: Projection::Real }),
            },
            (SineVariant::Product, true) => IntegrandSpec {
                numerator: Numerator::CosSin { f1: half_turns(x + p.b as i128), f0: half_turns(x - p.b as i128) },
                cot: cot_pi_a(p.a),
                kernel,
                prefactor: Cdd::real(tau_k.mul_f64(-s)),
                contour: None,
            },
            (SineVariant::Product, false) => IntegrandSpec {
                numerator: Numerator::SinSin { f1: half_turns(x + p.b as i128), f0: half_turns(x - p.b as i128) },
                cot: cot_pi_a(p.a),
                kernel,
                prefactor: Cdd::real(tau_k.mul_f64(s)),
                contour: None,
            },
        };
        Ok(spec)
    }

    fn single_integral(&self, p: &ProgressionParams, spec: &IntegrandSpec) -> Result<Evaluation<Cdd>> {
        let boundary = Cdd::real(simple_boundary(p, p.k));
        self.refine(|t| {
            let mut acc = Acc::new();
            acc.add(boundary);
            acc.add_integral(&self.quad(spec, t)?);
            Ok(acc)
        })
    }

    /// Complex accumulator of the exponential-kernel form before the real
    /// part is taken.
    pub fn hp_exp_complex(&self, p: &ProgressionParams) -> Result<Evaluation<Cdd>> {
        p.validate()?;
        let spec = self.exp_spec(p)?;
        self.single_integral(p, &spec)
    }

    /// Exponential-kernel form, valid for every order. The default route.
    pub fn hp_exp(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        let e = self.hp_exp_complex(p)?;
        let residual = e.value.im.to_f64().abs();
        let bound = self.cfg.imag_residual_bound;
        if residual > bound {
            return Err(Error::ImaginaryResidual { residual, bound });
        }
        Ok(e.real())
    }

    /// Default evaluation path.
    pub fn hp(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        self.hp_exp(p)
    }

    /// Sine approach for either parity.
    pub fn hp_sine(&self, p: &ProgressionParams, variant: SineVariant) -> Result<Evaluation<Dd>> {
        p.validate()?;
        let spec = self.sine_spec(p, variant)?;
        Ok(self.single_integral(p, &spec)?.real())
    }

    /// Order one through the product integrand `(1-u) sin sin cot`.
    pub fn hp_order1(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        if p.k != 1 {
            return Err(Error::Validation(format!("hp_order1 needs k = 1, got {}", p.k)));
        }
        self.hp_sine(p, SineVariant::Product)
    }

    /// Even order, sum-of-sines integrand.
    pub fn hp_even(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        self.hp_even_variant(p, SineVariant::Sum)
    }

    pub fn hp_even_variant(&self, p: &ProgressionParams, variant: SineVariant) -> Result<Evaluation<Dd>> {
        if !p.k.is_multiple_of(2) {
            return Err(Error::Validation(format!("hp_even needs an even order, got {}", p.k)));
        }
        self.hp_sine(p, variant)
    }

    /// Odd order, sum-of-cosines integrand.
    pub fn hp_odd(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        self.hp_odd_variant(p, SineVariant::Sum)
    }

    pub fn hp_odd_variant(&self, p: &ProgressionParams, variant: SineVariant) -> Result<Evaluation<Dd>> {
        if p.k % 2 != 1 {
            return Err(Error::Validation(format!("hp_odd needs an odd order, got {}", p.k)));
        }
        self.hp_sine(p, variant)
    }

    /// Recursion over orders of the same parity, one integral per level,
    /// starting from `HP_0 = 0`.
    pub fn hp_recursive(&self, p: &ProgressionParams) -> Result<Evaluation<Dd>> {
        p.validate()?;
        let par = p.k % 2;
        let top = p.k / 2;
        let first = if par == 1 { 0 } else { 1 };
        let x = p.last();
        let mut specs = Vec::new();
        for level in first..=top {
            let kk = 2 * level + par;
            let numerator = if par == 0 {
                Numerator::CosSin { f1: half_turns(x + p.b as i128), f0: half_turns(x - p.b as i128) }
            } else {
                Numerator::SinSin { f1: half_turns(x + p.b as i128), f0: half_turns(x - p.b as i128) }
            };
            // -(-1)^L (2pi)^2L / (2L)! (even) or +(-1)^L (2pi)^(2L+1) / (2L+1)! (odd)
            let c = Dd::TAU.powi(kk as i32) * inv_factorial(kk) * sign(level);
            let c = if par == 0 { -c } else { c };
            specs.push(IntegrandSpec { numerator, cot: cot_pi_a(p.a), kernel: Arc::new(KernelPoly::power(kk)), prefactor: Cdd::real(c), contour: None });
        }
        let e = self.refine(|t| {
            let mut vals: Vec<Evaluation<Cdd>> = Vec::new();
            let mut last = None;
            for (i, level) in (first..=top).enumerate() {
                let kk = 2 * level + par;
                let mut acc = Acc::new();
                acc.add(Cdd::real(recursion_boundary(p, level, kk)));
                // lower orders of the same parity: HP_{2j} for j = 1..L-1, HP_{2j+1} for j = 0..L-1
                for (vi, j) in (first..level).enumerate() {
                    let c = Dd::TAU.powi((2 * level - 2 * j) as i32) * inv_factorial(2 * level + 1 - 2 * j) * sign(level - j);
                    acc.add_scaled(Cdd::real(-c), &vals[vi]);
                }
                acc.add_integral(&self.quad(&specs[i], t)?);
                let ev = acc.finish();
                vals.push(ev);
                last = Some(ev);
            }
            let ev = last.expect("at least one level");
            let mut acc = Acc::new();
            acc.value = ev.value;
            acc.err = ev.abs_error_estimate;
            acc.panels = vals.iter().map(|v| v.panels).sum::<usize>();
            acc.integrals = vals.len();
            Ok(acc)
        })?;
        Ok(e.real())
    }
}

/// `-(1/(2 b^kk)) S(b) + (1/(2 (an+b)^kk)) S(an+b)` with
/// `S(x) = sum_{j=0}^{L} (-1)^j (2 pi x)^{2j} / (2j+1)!`, written with
/// non-positive powers of `x`; the `b` part is dropped for `b = 0`.
fn recursion_boundary(p: &ProgressionParams, level: u32, kk: u32) -> Dd {
    let part = |x: i128| -> Dd {
        let xd = ddi(x);
        let mut s = Dd::ZERO;
        for j in 0..=level {
            let c = Dd::TAU.powi(2 * j as i32) * inv_factorial(2 * j + 1) * sign(j);
            s += c * xd.powi(2 * j as i32 - kk as i32);
        }
        s.ldexp(-1)
    };
    let mut v = part(p.last());
    if p.b != 0 {
        v -= part(p.b as i128);
    }
    v
}
